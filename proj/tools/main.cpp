// eqcoh: build the models, run both cohomology engines, print verdicts.
//
//   eqcoh verify --model mutant-torus --r 2 --coeff Z
//   eqcoh verify --all --format json --out report.json
//   eqcoh report --poincare Z --r 2 --variant torus
//   eqcoh report --intersection-form --r 4
//   eqcoh report --obstruction example-3-3
//   eqcoh doubling --presentation samples/data/max_ideal_3.json

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "eqcoh/pipeline.hpp"

namespace {

using namespace eqcoh;

struct Output {
    std::string format = "text";
    std::string path;
};

int emit(const Output& out, const std::string& text, bool pass) {
    if (out.path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out.path);
        if (!f) throw Error("cannot write " + out.path);
        f << text;
        if (!f) throw Error("write failed: " + out.path);
        std::cout << (pass ? "pass" : "fail") << ": report written to " << out.path << "\n";
    }
    return pass ? 0 : 1;
}

int emit(const Output& out, const VerificationReport& rep) {
    return emit(out, out.format == "json" ? to_json(rep).dump(2) + "\n" : to_text(rep), rep.overall());
}

int emit(const Output& out, const std::vector<VerificationReport>& reps) {
    bool pass = !reps.empty();
    for (const auto& r : reps) pass = pass && r.overall();
    if (out.format == "json") return emit(out, to_json(reps).dump(2) + "\n", pass);
    std::string text;
    for (const auto& r : reps) text += to_text(r) + "\n";
    text += std::string("suite: ") + (pass ? "pass" : "fail") + "\n";
    return emit(out, text, pass);
}

MutantVariant parse_variant(const std::string& s) {
    if (s == "torus") return MutantVariant::Torus;
    if (s == "two_torus" || s == "2torus") return MutantVariant::TwoTorus;
    throw ParseError("unknown variant '" + s + "'");
}

SpaceKind parse_space(const std::string& s) {
    if (s == "X") return SpaceKind::X;
    if (s == "Y") return SpaceKind::Y;
    if (s == "Z") return SpaceKind::Z;
    throw ParseError("unknown space '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant cohomology models: construction and verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    Output out;
    std::string coeff, engine = "both", presentation;
    long max_degree = -1, doubling_n = -1;
    bool all = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--coeff", coeff, "Coefficients: Q, Z, F2 or Fp:<p>");
        sub->add_option("--max-degree", max_degree, "Degree bound D");
        sub->add_option("--engine", engine, "symbolic, degreewise or both")
            ->check(CLI::IsMember({"symbolic", "degreewise", "both"}));
        sub->add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", out.path, "Write the report to a file");
        sub->add_option("--jobs", cfg.jobs, "Worker threads (default EQCOH_JOBS or all cores)");
    };

    auto* verify = app.add_subcommand("verify", "Build a model and verify its cohomology");
    verify->add_option("--model", cfg.model, "Model")->check(CLI::IsMember(model_names()));
    verify->add_option("--r", cfg.r, "Rank parameter r");
    verify->add_option("--n", cfg.n, "Number of variables (koszul)");
    verify->add_option("--presentation", presentation, "Presentation file (doubling)");
    verify->add_option("--doubling-n", doubling_n, "Doubling shift n");
    verify->add_flag("--allow-overlap", cfg.allow_overlap, "Allow dual shifts below primal ones");
    verify->add_flag("--all", all, "Run the default suite");
    add_common(verify);

    std::string poincare, variant = "torus", obstruction;
    bool intersection = false;
    auto* report = app.add_subcommand("report", "Poincare polynomials, intersection forms, obstruction, cohomology tables");
    report->add_option("--poincare", poincare, "Space X, Y or Z")->check(CLI::IsMember({"X", "Y", "Z"}));
    report->add_option("--variant", variant, "torus or two_torus");
    report->add_flag("--intersection-form", intersection, "Intersection form on the middle quotient");
    report->add_option("--obstruction", obstruction, "Model for the degree-one obstruction");
    report->add_option("--model", cfg.model, "Model for cohomology tables")->check(CLI::IsMember(model_names()));
    report->add_option("--r", cfg.r, "Rank parameter r");
    report->add_option("--n", cfg.n, "Number of variables (koszul)");
    report->add_option("--presentation", presentation, "Presentation file (doubling)");
    add_common(report);

    auto* doubling = app.add_subcommand("doubling", "Doubling complex of a presentation");
    doubling->add_option("--presentation", presentation, "Presentation file")->required();
    doubling->add_option("--n", doubling_n, "Doubling shift n (default twice the largest shift plus w)");
    doubling->add_flag("--allow-overlap", cfg.allow_overlap, "Allow dual shifts below primal ones");
    add_common(doubling);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!coeff.empty()) cfg.coeff = CoefficientRing::parse(coeff);
        if (max_degree >= 0) cfg.max_degree = max_degree;
        if (doubling_n >= 0) cfg.doubling_n = doubling_n;
        cfg.engine = parse_engine(engine);
        if (!presentation.empty()) cfg.presentation = load_presentation(presentation);
        if (cfg.jobs == 0) cfg.jobs = default_jobs();

        if (*verify) {
            if (all) return emit(out, run_all(cfg.jobs));
            if (cfg.model == "doubling" && !cfg.presentation) throw InvalidSpec("--model doubling needs --presentation");
            return emit(out, run_verify(cfg));
        }
        if (*doubling) {
            cfg.model = "doubling";
            return emit(out, verify_doubling(cfg));
        }
        if (!poincare.empty()) return emit(out, poincare_report(parse_space(poincare), cfg.r, parse_variant(variant)));
        if (intersection) return emit(out, intersection_form_report(cfg.r));
        if (!obstruction.empty()) {
            cfg.model = obstruction;
            return emit(out, obstruction_report(cfg));
        }
        if (report->count("--model") == 0) throw InvalidSpec("report needs --poincare, --intersection-form, --obstruction or --model");
        return emit(out, cohomology_report(cfg));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
