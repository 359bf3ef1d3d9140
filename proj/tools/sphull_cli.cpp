// sphull command line: predict, simulate, tails, verify, compare, run.
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "sphull/error.hpp"
#include "sphull/harness.hpp"

using namespace sphull;
namespace h = sphull::harness;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out_dir;
    double tol_rel = 0;  // 0: keep the default quadrature tolerance
    std::string format = "csv";
    bool timing = false;
};

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Quadrature:
        case ErrorKind::Diagnostic: return 1;
        default: return 2;
    }
}

h::StageOptions stage_options(const Globals& g) {
    h::StageOptions o;
    o.master_seed = g.seed;
    o.workers = g.workers;
    o.timing = g.timing;
    if (g.tol_rel > 0) o.quadrature.rel_tol = g.tol_rel;
    o.quadrature.validate();
    return o;
}

void emit(const h::Table& t, const Globals& g, const std::string& name) {
    const std::string body = g.format == "json" ? t.to_json() : t.to_csv();
    if (g.out_dir.empty()) {
        std::cout << body;
        return;
    }
    std::filesystem::create_directories(g.out_dir);
    const auto path = std::filesystem::path(g.out_dir) / (name + (g.format == "json" ? ".json" : ".csv"));
    h::write_file(path.string(), body);
    std::cerr << "wrote " << path.string() << "\n";
}

int report_failures(const std::vector<h::CellFailure>& f, std::size_t rows) {
    for (const auto& x : f) std::cerr << x.stage << " " << x.cell << ": " << x.kind << ": " << x.message << "\n";
    if (f.empty()) return 0;
    return rows == 0 ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random convex hulls of spherically symmetric samples: predictions, simulation and checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "master seed (default 0)");
    app.add_option("--workers", g.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--out-dir", g.out_dir, "write result files here instead of stdout");
    app.add_option("--tol-rel", g.tol_rel, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--timing", g.timing, "record elapsed_ms (breaks byte-identical reruns)");

    std::string law;
    int d = 2;
    std::vector<double> ns;
    std::vector<std::string> formulas, quantities;
    double epsilon = 0.1;
    std::string norming = "f";
    std::size_t reps = 100;
    std::string derived = "F";
    std::string sim_path, pred_path, config_path;
    bool gate = false;
    double gate_tol = 0.15;

    auto* predict = app.add_subcommand("predict", "asymptotic predictions and bounds");
    predict->add_option("--law", law, "law spec, e.g. pareto:alpha=2")->required();
    predict->add_option("--d", d, "dimension")->check(CLI::Range(2, 6));
    predict->add_option("--n", ns, "sample sizes")->required();
    predict->add_option("--formula", formulas, "formula ids (default: all)");
    predict->add_option("--epsilon", epsilon, "epsilon for VnBoundsD");
    predict->add_option("--norming", norming, "f: F quantiles, q: Q_d by quadrature")
        ->check(CLI::IsMember({"f", "q"}));

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo hull functionals");
    simulate->add_option("--law", law)->required();
    simulate->add_option("--d", d)->check(CLI::Range(2, 6));
    simulate->add_option("--n", ns)->required();
    simulate->add_option("--quantity", quantities, "v_n f_n A_n V_n l_n var_v_n (default v_n)");
    simulate->add_option("--reps", reps, "replications")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));

    auto* tails = app.add_subcommand("tails", "tail diagnostics");
    tails->add_option("--law", law)->required();
    tails->add_option("--d", d)->check(CLI::Range(2, 6));
    tails->add_option("--derived", derived, "F, Q, H, K or Kstar")->check(CLI::IsMember({"F", "Q", "H", "K", "Kstar"}));

    auto* verify = app.add_subcommand("verify", "quadrature of the exact bounds and integrals");
    verify->add_option("--law", law)->required();
    verify->add_option("--d", d)->check(CLI::Range(2, 6));
    verify->add_option("--n", ns)->required();

    auto* compare = app.add_subcommand("compare", "join simulation and prediction tables");
    compare->add_option("--sim", sim_path)->required()->check(CLI::ExistingFile);
    compare->add_option("--pred", pred_path)->required()->check(CLI::ExistingFile);
    compare->add_flag("--gate", gate, "exit 4 when a ratio or trend check fails");
    compare->add_option("--gate-tol", gate_tol, "allowed |ratio-1| at the largest n");

    auto* run = app.add_subcommand("run", "config driven experiment");
    run->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const h::StageOptions o = stage_options(g);
        if (*predict) {
            const RadialLaw L = parse_law(law);
            std::vector<FormulaId> ids;
            for (const auto& f : formulas) ids.push_back(formula_from_string(f));
            const bool explicit_ids = !ids.empty();
            if (!explicit_ids) ids = all_formulas();
            h::StageOptions po = o;
            po.epsilon = epsilon;
            po.norming = norming == "q" ? NormingSource::QQuadrature : NormingSource::FBased;
            h::Table t = h::predict_header();
            std::vector<h::CellFailure> fails;
            for (double n : ns) h::predict_rows(t, L, d, n, ids, po, &fails);
            emit(t, g, "predict");
            if (!explicit_ids) {
                // formulas outside the law's class are skipped silently
                return t.rows.empty() ? report_failures(fails, 0) : 0;
            }
            return report_failures(fails, t.rows.size());
        }
        if (*simulate) {
            const RadialLaw L = parse_law(law);
            std::vector<Quantity> qs;
            for (const auto& q : quantities) qs.push_back(quantity_from_string(q));
            if (qs.empty()) qs = {Quantity::Vn};
            h::Table t = h::simulate_header();
            for (double n : ns) {
                if (!(n >= 1) || n != static_cast<double>(static_cast<std::size_t>(n)))
                    fail(ErrorKind::Validation, "simulate: n must be a positive integer");
                h::simulate_rows(t, L, d, static_cast<std::size_t>(n), qs, reps, o);
            }
            emit(t, g, "simulate");
            return 0;
        }
        if (*tails) {
            const RadialLaw L = parse_law(law);
            h::Table t = h::tails_header();
            std::vector<h::CellFailure> fails;
            h::tails_rows(t, L, d, derived == "F" ? "" : derived, o, &fails);
            emit(t, g, "tails");
            return report_failures(fails, t.rows.size());
        }
        if (*verify) {
            const RadialLaw L = parse_law(law);
            h::Table t = h::verify_header();
            std::vector<h::CellFailure> fails;
            for (double n : ns) h::verify_rows(t, L, d, n, o, &fails);
            emit(t, g, "verify");
            return report_failures(fails, t.rows.size());
        }
        if (*compare) {
            const auto res = h::compare_report(h::read_csv(sim_path), h::read_csv(pred_path), {gate_tol});
            emit(res.report, g, "compare");
            for (const auto& n : res.gate_notes) std::cerr << "gate: " << n << "\n";
            return gate && !res.gate_passed ? 4 : 0;
        }
        if (*run) {
            h::ExperimentConfig cfg = h::load_config(config_path);
            if (app.count("--seed")) cfg.master_seed = g.seed;
            if (app.count("--workers")) cfg.workers = g.workers;
            if (app.count("--out-dir")) cfg.out_dir = g.out_dir;
            if (app.count("--format")) cfg.format = g.format;
            if (app.count("--tol-rel")) cfg.quadrature.rel_tol = g.tol_rel;
            const h::RunRecord rec = h::run_experiment(cfg);
            std::cerr << "run " << rec.run_id << ": " << rec.files.size() << " files, manifest " << rec.manifest_path
                      << "\n";
            for (const auto& f : rec.failures)
                std::cerr << f.stage << " " << f.cell << ": " << f.kind << ": " << f.message << "\n";
            return rec.failures.empty() ? 0 : 3;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
