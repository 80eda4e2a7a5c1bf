#pragma once

// Cohomology of a cochain complex as graded modules, over a field: Hilbert
// series from Groebner bases of the images, and minimal presentations
// ker / im at the positions where the cohomology is nonzero.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "eqcoh/graded.hpp"
#include "eqcoh/presentation.hpp"

namespace eqcoh {

template <FieldDomain D>
class SymbolicCohomology {
public:
    explicit SymbolicCohomology(const CochainComplex<D>& c) : c_(c), coker_(c.differentials().size()) {}

    const CochainComplex<D>& complex() const noexcept { return c_; }

    /// HS(H_p) = HS(F_p) - q^{-1} HS(im d_p) - HS(im d_{p-1}).
    HilbertSeries hilbert_series(std::size_t p) {
        const auto& ring = *c_.ring();
        HilbertSeries hs = c_.term(p).hilbert_series();
        if (auto* out = c_.differential(p); out != nullptr && !out->is_zero()) {
            auto im = image_series(p);
            hs -= HilbertSeries(im.numerator().shifted(-1), ring.num_vars(), ring.var_weight());
        }
        if (p > 0 && !c_.differential(p - 1)->is_zero()) hs -= image_series(p - 1);
        return hs;
    }

    HilbertSeries total_hilbert_series() {
        auto hs = HilbertSeries::zero(c_.ring()->num_vars(), c_.ring()->var_weight());
        for (std::size_t p = 0; p < c_.length(); ++p) hs += hilbert_series(p);
        return hs;
    }

    /// Minimal presentation of H_p = ker d_p / im d_{p-1}, generated by the
    /// minimal kernel generators.
    ModulePresentation<D> presentation(std::size_t p) {
        if (auto it = presentations_.find(p); it != presentations_.end()) return it->second;
        auto result = compute_presentation(p);
        presentations_.emplace(p, result);
        return result;
    }

    /// Kernel generators of d_p as a map into F_p (identity when d_p = 0).
    GradedMap<D> kernel(std::size_t p) const {
        const auto* out = c_.differential(p);
        if (out == nullptr || out->is_zero()) {
            GradedMap<D> id(c_.term(p), c_.term(p), 0);
            for (std::size_t i = 0; i < c_.term(p).rank(); ++i) id.set(i, i, Polynomial<D>::constant(c_.ring(), 1));
            return id;
        }
        return kernel_generators(*out);
    }

    /// Direct sum of the cohomology presentations over all positions.
    ModulePresentation<D> total_presentation() {
        std::vector<ModulePresentation<D>> parts;
        for (std::size_t p = 0; p < c_.length(); ++p) {
            if (hilbert_series(p).numerator().is_zero()) continue;
            parts.push_back(presentation(p));
        }
        return direct_sum(parts, c_.ring());
    }

private:
    HilbertSeries image_series(std::size_t p) {
        if (!coker_[p]) coker_[p] = quotient_hilbert_series(image_basis(*c_.differential(p)));
        return c_.term(p + 1).hilbert_series() - *coker_[p];
    }

    ModulePresentation<D> compute_presentation(std::size_t p) {
        if (hilbert_series(p).numerator().is_zero()) return zero_module(c_.ring());
        const auto* in = p > 0 ? c_.differential(p - 1) : nullptr;
        const auto* out = c_.differential(p);
        const bool out_zero = out == nullptr || out->is_zero();
        const bool in_zero = in == nullptr || in->is_zero();
        if (out_zero) {
            if (in_zero) return ModulePresentation<D>(c_.term(p));
            return minimal_presentation(ModulePresentation<D>(c_.term(p), *in));
        }
        auto k = kernel_generators(*out);
        std::vector<GradedMap<D>> rel_parts;
        std::vector<long> shifts;
        GradedMap<D> syz = kernel_generators(k);
        std::optional<GradedMap<D>> lifted;
        if (!in_zero) lifted = lift(k, *in);
        if (lifted) shifts = lifted->source().shifts();
        for (long s : syz.source().shifts()) shifts.push_back(s);
        GradedMap<D> rel(GradedFreeModule<D>(c_.ring(), shifts), k.source(), 0);
        std::size_t col = 0;
        if (lifted)
            for (; col < lifted->cols(); ++col)
                for (std::size_t i = 0; i < lifted->rows(); ++i)
                    if (!lifted->entry(i, col).is_zero()) rel.set(i, col, lifted->entry(i, col));
        for (std::size_t j = 0; j < syz.cols(); ++j)
            for (std::size_t i = 0; i < syz.rows(); ++i)
                if (!syz.entry(i, j).is_zero()) rel.set(i, col + j, syz.entry(i, j));
        return minimal_presentation(ModulePresentation<D>(k.source(), validate_graded_map(std::move(rel))));
    }

    CochainComplex<D> c_;
    std::vector<std::optional<HilbertSeries>> coker_;
    std::map<std::size_t, ModulePresentation<D>> presentations_;
};

}  // namespace eqcoh
