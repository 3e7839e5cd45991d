// hypconst: hyperbolicity constants for quasi-geodesic spaces and the
// curtain model.
//
// Subcommands:
//   constants    closed-form / fixed-point hyperbolicity constants
//   kappa-table  the kappa_n estimate family as CSV
//   verify       guessing-geodesics hypotheses on a finite metric instance
//   curtain      curtain-model distance bounds and empirical hyperbolicity
//
// Exit codes: 0 all certified checks passed, 1 violation found,
// 2 input error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "hypconst/constants.hpp"
#include "hypconst/curtain.hpp"
#include "hypconst/io.hpp"
#include "hypconst/parallel.hpp"
#include "hypconst/verifier.hpp"

namespace {

using namespace hypconst;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

void emit(const json& j, const std::string& output_path, bool json_stdout) {
    if (!output_path.empty()) {
        std::ofstream out(output_path);
        if (!out)
            throw std::invalid_argument("cannot write to '" + output_path +
                                        "'");
        out << j.dump(2) << "\n";
    }
    if (json_stdout) std::cout << j.dump(2) << "\n";
}

// ---- constants ----------------------------------------------------------

int run_constants(double q1, double q2, double D, const std::string& mode,
                  double tolerance, const std::string& output_path,
                  bool json_stdout) {
    const QuasiParams params{q1, q2, D};
    HyperbolicityBounds bounds;
    if (mode == "fixed-point") {
        bounds = fixed_point_bounds(params, tolerance);
    } else if (mode == "theorem-b") {
        if (q1 != 1.0)
            throw std::domain_error(
                "constants: mode theorem-b requires q1 = 1");
        bounds = theorem_b_bounds(q2, D);
    } else if (mode.rfind("n:", 0) == 0) {
        const int n = std::stoi(mode.substr(2));
        bounds.params = params;
        bounds.certificate = kappa_n(params, n);
        bounds.delta_prime = delta_prime(params, bounds.certificate.kappa);
        bounds.delta =
            params.is_rough()
                ? delta_from_delta_prime(q2, bounds.delta_prime)
                : std::numeric_limits<double>::quiet_NaN();
        bounds.route = "kappa-n";
    } else {
        throw std::invalid_argument(
            "constants: mode must be fixed-point, theorem-b or n:<int>");
    }

    const auto& cert = bounds.certificate;
    const char* method = cert.method == KappaMethod::fixed_point
                             ? "fixed point"
                             : "kappa_n";
    if (!json_stdout) {
        std::cout << "kappa       = " << format_sci(cert.kappa) << "  ("
                  << method;
        if (cert.method == KappaMethod::kappa_n)
            std::cout << ", n = " << cert.n;
        std::cout << ")\n";
        std::cout << "delta'      = " << format_sci(bounds.delta_prime)
                  << "\n";
        if (std::isfinite(bounds.delta))
            std::cout << "delta       = " << format_sci(bounds.delta) << "\n";
        else
            std::cout << "delta       = n/a (requires q1 = 1)\n";
    }
    json j = bounds_to_json(bounds);
    j["mode"] = mode;
    emit(j, output_path, json_stdout);
    return kExitOk;
}

// ---- kappa-table ---------------------------------------------------------

int run_kappa_table(double q, double D, int n_max,
                    const std::string& output_path) {
    const auto rows = kappa_table(q, D, n_max);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!output_path.empty()) {
        file.open(output_path);
        if (!file)
            throw std::invalid_argument("cannot write to '" + output_path +
                                        "'");
        out = &file;
    }
    *out << "n,K_n,eps_n,kappa_n,running_min,running_argmin\n";
    char line[160];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%d\n",
                      r.n, r.K_n, r.eps_n, r.kappa_n, r.running_min,
                      r.running_argmin);
        *out << line;
    }
    return kExitOk;
}

// ---- verify --------------------------------------------------------------

int run_verify(const std::string& space_path, const std::string& paths_path,
               double q, const std::string& output_path, bool json_stdout) {
    const auto space = space_from_json(load_json_file(space_path));
    const auto system = paths_from_json(load_json_file(paths_path), space);
    const auto report = certify(system, space, q);

    if (!json_stdout) {
        std::cout << "coarse_c          = " << report.coarse_c << "\n"
                  << "D_g1              = " << report.D_g1 << "\n"
                  << "D_g2              = " << report.D_g2 << "\n"
                  << "D_g3              = " << report.D_g3 << "\n"
                  << "D_combined        = " << report.D_combined << "\n"
                  << "delta_four_exact  = " << report.delta_four_exact << "\n"
                  << "thin_triangle     = " << report.thin_triangle << "\n"
                  << "thin_quad         = " << report.thin_quad << "\n"
                  << "certified delta'  = " << format_sci(report.certified.delta_prime)
                  << "\n"
                  << "certified delta   = " << format_sci(report.certified.delta)
                  << "\n"
                  << (report.four_point_within_certified
                          ? "four-point delta within certified bound\n"
                          : "VIOLATION: four-point delta exceeds certified bound\n");
    }
    emit(report_to_json(report), output_path, json_stdout);
    return report.four_point_within_certified ? kExitOk : kExitViolation;
}

// ---- curtain ---------------------------------------------------------------

struct CurtainOptions {
    std::string backend_path;
    std::string pairs_path;
    int L_max = 20;
    double grid_step = 0.25;
    std::uint64_t seed = 0;
    int n_samples = 200;
    double region = 10.0;
    int random_candidates = 0;
    bool exact_metric = false;
    bool dump_candidates = false;
    std::string output_path;
    bool json_stdout = false;
};

// Ceilings from the two routes at the curtain-model parameters
// (q1, q2, D) = (1, 7, 125).
json ceilings_json(const HyperbolicityBounds& fp,
                   const HyperbolicityBounds& tb) {
    return {{"fixed_point",
             {{"delta_prime", fp.delta_prime}, {"delta", fp.delta}}},
            {"theorem_b",
             {{"delta_prime", tb.delta_prime}, {"delta", tb.delta}}}};
}

template <class B>
json pair_entry(const B& backend, const typename B::Point& x,
                const typename B::Point& y, const CurtainModelConfig& config,
                std::span<const Curtain<B>> candidates,
                const std::function<Interval(const typename B::Point&,
                                             const typename B::Point&)>& metric,
                const std::vector<typename B::Point>& reparam_samples) {
    json entry;
    entry["distance"] = backend.distance(x, y);
    const auto bounds =
        curtain_distance_bounds(backend, x, y, config, candidates);
    entry["bounds"] = distance_bounds_to_json(bounds);

    try {
        const auto rep = reparametrize_to_rough_geodesic(
            static_cast<int>(reparam_samples.size()),
            [&](int i, int j) {
                return metric(reparam_samples[i], reparam_samples[j]);
            },
            curtain_model_params(config.Lambda).q2);
        entry["reparametrization"] = {{"selected", rep.indices.size()},
                                      {"defect", rep.defect}};
    } catch (const DensityError& e) {
        entry["reparametrization"] = {{"density_failure_at", e.t}};
    }
    return entry;
}

int run_curtain(const CurtainOptions& opt) {
    const auto backend_spec = backend_from_json(load_json_file(opt.backend_path));
    const auto pairs_json = load_json_file(opt.pairs_path);
    if (!pairs_json.contains("pairs"))
        throw std::invalid_argument("pairs file requires a 'pairs' array");
    const auto config = CurtainModelConfig::standard(opt.L_max);

    const auto fp_ceiling = fixed_point_bounds(curtain_model_params(1.0));
    const auto tb_ceiling = theorem_b_bounds(7.0, 125.0);

    json out;
    out["config"] = {{"L_max", opt.L_max},
                     {"grid_step", opt.grid_step},
                     {"seed", opt.seed},
                     {"n_samples", opt.n_samples},
                     {"region", opt.region},
                     {"exact_metric", opt.exact_metric}};
    out["ceilings"] = ceilings_json(fp_ceiling, tb_ceiling);
    out["pairs"] = json::array();

    double empirical = 0.0;

    if (backend_spec.kind == BackendSpec::Kind::euclidean) {
        const EuclideanBackend backend{backend_spec.dim};
        const auto metric = [&](const Vec& a, const Vec& b) {
            if (a == b) return Interval(0.0);
            if (opt.exact_metric) return Interval(backend.distance(a, b));
            auto candidates = grid_candidates(backend, a, b, opt.grid_step);
            if (opt.random_candidates > 0) {
                const auto extra = random_transverse_candidates(
                    backend, a, b, opt.random_candidates, opt.seed);
                candidates.insert(candidates.end(), extra.begin(),
                                  extra.end());
            }
            const auto b2 =
                curtain_distance_bounds(backend, a, b, config, candidates);
            return Interval(b2.lower, b2.upper);
        };

        for (const auto& pj : pairs_json.at("pairs")) {
            const Vec x = pj.at(0).get<Vec>();
            const Vec y = pj.at(1).get<Vec>();
            auto candidates = grid_candidates(backend, x, y, opt.grid_step);
            if (opt.random_candidates > 0) {
                const auto extra = random_transverse_candidates(
                    backend, x, y, opt.random_candidates, opt.seed);
                candidates.insert(candidates.end(), extra.begin(),
                                  extra.end());
            }
            // samples along [x, y] at spacing 1/2 for the reparametrisation
            std::vector<Vec> samples;
            const auto seg = backend.geodesic(x, y);
            for (double s = 0.0; s <= seg.len + 1e-12; s += 0.5)
                samples.push_back(seg.at(std::min(s, seg.len)));
            json entry = pair_entry<EuclideanBackend>(
                backend, x, y, config, candidates, metric, samples);
            entry["x"] = x;
            entry["y"] = y;
            if (opt.dump_candidates)
                entry["candidates"] = curtains_to_json(candidates);
            out["pairs"].push_back(std::move(entry));
        }

        const SamplerConfig sampler{opt.n_samples, opt.seed, opt.region};
        empirical = empirical_four_point_delta(backend, metric, sampler);
    } else {
        const WeightedTree& tree = backend_spec.tree;
        const auto metric = [&](const int& a, const int& b) {
            if (a == b) return Interval(0.0);
            if (opt.exact_metric) return Interval(tree.distance(a, b));
            const auto candidates =
                grid_candidates(tree, a, b, opt.grid_step);
            const auto b2 =
                curtain_distance_bounds(tree, a, b, config, candidates);
            return Interval(b2.lower, b2.upper);
        };

        for (const auto& pj : pairs_json.at("pairs")) {
            const int x = tree.index_of(pj.at(0).get<std::string>());
            const int y = tree.index_of(pj.at(1).get<std::string>());
            const auto candidates = grid_candidates(tree, x, y, opt.grid_step);
            // reparametrisation samples: the vertices of the geodesic
            const auto seg = tree.geodesic(x, y);
            json entry = pair_entry<WeightedTree>(
                tree, x, y, config, candidates, metric, seg.vertices);
            entry["x"] = pj.at(0);
            entry["y"] = pj.at(1);
            if (opt.dump_candidates)
                entry["candidates"] = curtains_to_json(tree, candidates);
            out["pairs"].push_back(std::move(entry));
        }

        const SamplerConfig sampler{opt.n_samples, opt.seed, opt.region};
        empirical = empirical_four_point_delta(tree, metric, sampler);
    }

    // One-sided check: the ceilings are upper bounds, not sharp values,
    // so only defect <= ceiling is meaningful.
    const double ceiling = fp_ceiling.delta;
    out["empirical"] = {{"four_point_defect_lower_bound", empirical},
                        {"ceiling_fixed_point_delta", ceiling},
                        {"margin", ceiling - empirical},
                        {"within_ceiling", empirical <= ceiling}};

    if (!opt.json_stdout) {
        for (const auto& entry : out["pairs"]) {
            std::cout << "pair d=" << entry.at("distance").get<double>()
                      << "  D in [" << entry.at("bounds").at("lower").get<double>()
                      << ", " << entry.at("bounds").at("upper").get<double>()
                      << "]";
            if (entry.at("reparametrization").contains("defect"))
                std::cout << "  reparam defect = "
                          << entry.at("reparametrization").at("defect").get<double>();
            else
                std::cout << "  reparam: density failure at t = "
                          << entry.at("reparametrization")
                                 .at("density_failure_at")
                                 .get<double>();
            std::cout << "\n";
        }
        std::cout << "empirical four-point defect (certified lower bound) = "
                  << format_sci(empirical) << "\n"
                  << "theoretical ceilings: delta <= "
                  << format_sci(fp_ceiling.delta)
                  << " (fixed-point route), delta <= "
                  << format_sci(tb_ceiling.delta) << " (closed-form route)\n"
                  << "margin to the tightest ceiling = "
                  << format_sci(ceiling - empirical)
                  << " (one-sided check: ceilings are upper bounds, not "
                     "sharp values)\n";
    }
    emit(out, opt.output_path, opt.json_stdout);
    return empirical <= ceiling ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hyperbolicity constants, guessing-geodesics verification and the "
        "curtain model"};
    app.require_subcommand(1);

    // constants
    double q1 = 1.0, q2 = 0.0, D = 1.0, tolerance = 1e-9;
    std::string mode = "fixed-point", output;
    bool json_stdout = false;
    auto* constants =
        app.add_subcommand("constants", "evaluate hyperbolicity constants");
    constants->add_option("--q1", q1, "multiplicative quasi-geodesic constant")
        ->default_val(1.0);
    constants->add_option("--q2", q2, "additive quasi-geodesic constant")
        ->default_val(0.0);
    constants->add_option("--D", D, "guessing-geodesics constant")
        ->required();
    constants
        ->add_option("--mode", mode,
                     "fixed-point | theorem-b | n:<int> (default fixed-point)")
        ->default_val("fixed-point");
    constants
        ->add_option("--tolerance", tolerance,
                     "relative tolerance of the fixed-point solve")
        ->default_val(1e-9);
    constants->add_option("--output", output, "write the JSON report here");
    constants->add_flag("--json", json_stdout, "print JSON instead of text");

    // kappa-table
    double kt_q = 1.0, kt_D = 1.0;
    int n_max = 8;
    std::string kt_output;
    auto* table =
        app.add_subcommand("kappa-table", "kappa_n estimates as CSV");
    table->add_option("--q", kt_q, "q = max{q1, q2} (>= 1)")->required();
    table->add_option("--D", kt_D, "guessing-geodesics constant (>= 1)")
        ->required();
    table->add_option("--n-max", n_max, "largest n")->required();
    table->add_option("--output", kt_output, "write CSV here (default stdout)");

    // verify
    std::string space_path, paths_path, v_output;
    double v_q = 1.0;
    bool v_json = false;
    auto* verify = app.add_subcommand(
        "verify", "check (G1)-(G3) on a finite metric instance");
    verify->add_option("--space", space_path, "space JSON file")->required();
    verify->add_option("--paths", paths_path, "path-system JSON file")
        ->required();
    verify->add_option("--q", v_q, "rough-geodesic constant (>= 1)")
        ->default_val(1.0);
    verify->add_option("--output", v_output, "write the JSON report here");
    verify->add_flag("--json", v_json, "print JSON instead of text");

    // curtain
    CurtainOptions copt;
    auto* curtain = app.add_subcommand(
        "curtain", "curtain-model distance bounds and empirical delta");
    curtain->add_option("--backend", copt.backend_path, "backend JSON file")
        ->required();
    curtain->add_option("--pairs", copt.pairs_path, "pairs JSON file")
        ->required();
    curtain->add_option("--L-max", copt.L_max, "truncation level")
        ->default_val(20);
    curtain->add_option("--grid-step", copt.grid_step, "candidate pole spacing")
        ->default_val(0.25);
    curtain->add_option("--seed", copt.seed, "sampler seed")->default_val(0);
    curtain
        ->add_option("--n-samples", copt.n_samples,
                     "sample count for the empirical four-point scan")
        ->default_val(200);
    curtain
        ->add_option("--region", copt.region,
                     "Euclidean sampling box edge length")
        ->default_val(10.0);
    curtain
        ->add_option("--random-candidates", copt.random_candidates,
                     "extra seeded transverse curtains per pair (Euclidean)")
        ->default_val(0);
    curtain->add_flag("--exact-metric", copt.exact_metric,
                      "use the backend metric instead of curtain bounds");
    curtain->add_flag("--dump-candidates", copt.dump_candidates,
                      "include each pair's candidate family in the report");
    curtain->add_option("--output", copt.output_path,
                        "write the JSON report here");
    curtain->add_flag("--json", copt.json_stdout,
                      "print JSON instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (constants->parsed())
            return run_constants(q1, q2, D, mode, tolerance, output,
                                 json_stdout);
        if (table->parsed()) return run_kappa_table(kt_q, kt_D, n_max,
                                                    kt_output);
        if (verify->parsed())
            return run_verify(space_path, paths_path, v_q, v_output, v_json);
        if (curtain->parsed()) return run_curtain(copt);
    } catch (const MetricAxiomError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
