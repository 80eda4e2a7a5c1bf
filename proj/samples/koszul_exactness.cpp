// Degreewise exactness of the Koszul complex on n variables.

#include <cstdlib>
#include <iostream>

#include "eqcoh/builders.hpp"
#include "eqcoh/degreewise.hpp"

int main(int argc, char** argv) {
    using namespace eqcoh;
    const int max_n = argc > 1 ? std::atoi(argv[1]) : 5;
    bool ok = true;
    for (int n = 1; n <= max_n; ++n) {
        auto c = koszul_complex(n, 2, Integers{});
        auto rep = degreewise_cohomology(c, 12);
        // Only the top term carries cohomology: Z in degree 0.
        bool exact = true;
        for (const auto& e : rep.entries) {
            bool want = e.position + 1 == c.length() && e.degree == 0;
            if (e.rank != (want ? 1 : 0) || !e.torsion.empty()) exact = false;
        }
        std::cout << "n = " << n << ": " << (exact ? "exact" : "NOT exact") << "\n";
        ok = ok && exact;
    }
    return ok ? 0 : 1;
}
