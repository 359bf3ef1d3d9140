#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>

#include <json.hpp>

#include "sphull/error.hpp"
#include "sphull/evt_core.hpp"
#include "sphull/harness.hpp"
#include "sphull/mixture_tails.hpp"
#include "sphull/quadrature.hpp"

namespace sphull::harness {

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

template <class F>
void guarded(std::vector<CellFailure>* failures, const std::string& stage, const std::string& cell, F body) {
    if (!failures) {
        body();
        return;
    }
    try {
        body();
    } catch (const Error& e) {
        failures->push_back({stage, cell, to_string(e.kind()), e.what()});
    } catch (const std::exception& e) {
        failures->push_back({stage, cell, "internal", e.what()});
    }
}

std::string law_name(const RadialLaw& law) { return to_string(law.family()); }

std::string cell_name(const RadialLaw& law, int d, double n, const std::string& what) {
    return law.spec_string() + " d=" + std::to_string(d) + " n=" + fmt(n) + " " + what;
}

void diag(Table& t, const std::string& check, double u, double value, double ref, double dev) {
    t.add({check, fmt(u), fmt(value), fmt(ref), fmt(dev)});
}

TransferRegime regime_of(MdaClass c) {
    switch (c) {
        case MdaClass::Frechet: return TransferRegime::Frechet;
        case MdaClass::Weibull: return TransferRegime::Weibull;
        default: return TransferRegime::Gumbel;
    }
}

std::vector<FormulaId> default_formulas(int d) {
    if (d == 2) return {FormulaId::Vn2d, FormulaId::VnBoundsD, FormulaId::An2d, FormulaId::Ln2d};
    return {FormulaId::VnBoundsD, FormulaId::AnUpperD, FormulaId::FnUpperD, FormulaId::VolUpperD};
}

}  // namespace

Table simulate_header() {
    return {{"quantity", "law", "params", "d", "n", "replications", "mean", "variance", "ci95", "master_seed",
             "elapsed_ms"},
            {}};
}

Table predict_header() {
    return {{"formula_id", "law", "params", "d", "n", "value_or_lower", "upper", "caveat"}, {}};
}

Table verify_header() { return {{"formula_id", "n", "d", "value", "achieved_error"}, {}}; }

Table tails_header() { return {{"check_name", "u_or_n", "value", "reference", "deviation"}, {}}; }

void simulate_rows(Table& t, const RadialLaw& law, int d, std::size_t n, const std::vector<Quantity>& qs,
                   std::size_t replications, const StageOptions& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto recs = mc_estimate(law, d, n, qs, replications, o.master_seed, McOptions{o.workers});
    const double ms =
        o.timing ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() : 0.0;
    for (const auto& r : recs)
        t.add({to_string(r.quantity), law_name(law), law.params_string(), std::to_string(d), std::to_string(n),
               std::to_string(r.replications), fmt(r.mean), fmt(r.sample_variance), fmt(r.ci_halfwidth_95),
               fmt(r.seed), fmt(std::round(ms))});
}

void predict_rows(Table& t, const RadialLaw& law, int d, double n, const std::vector<FormulaId>& ids,
                  const StageOptions& o, std::vector<CellFailure>* failures) {
    PredictOptions po;
    po.epsilon = o.epsilon;
    po.norming = o.norming;
    po.spec = o.quadrature;
    for (FormulaId id : ids) {
        guarded(failures, "predict", cell_name(law, d, n, to_string(id)), [&] {
            const Prediction p = predict(law, d, n, id, po);
            t.add({to_string(id), law_name(law), law.params_string(), std::to_string(d), fmt(n), fmt(p.value),
                   p.upper ? fmt(*p.upper) : "", p.caveat});
        });
    }
}

void verify_rows(Table& t, const RadialLaw& law, int d, double n, const StageOptions& o,
                 std::vector<CellFailure>* failures) {
    const auto& q = o.quadrature;
    auto row = [&](const char* id, double v, double e) { t.add({id, fmt(n), std::to_string(d), fmt(v), fmt(e)}); };
    guarded(failures, "verify", cell_name(law, d, n, "vn_bounds"), [&] {
        const VnBounds b = vn_integral_bounds(law, d, n, q);
        row("vn_lower", b.lower, b.lower_error);
        row("vn_upper", b.upper, b.upper_error);
    });
    if (d == 2) {
        guarded(failures, "verify", cell_name(law, d, n, "carnal_vertices"), [&] {
            const Carnal2dValue v = carnal_2d_integrals(law, n, CarnalWhich::Vertices, q);
            row("carnal_vertices", v.expectation, 0.5 * v.achieved_error);
        });
        guarded(failures, "verify", cell_name(law, d, n, "carnal_area"), [&] {
            const Carnal2dValue v = carnal_2d_integrals(law, n, CarnalWhich::Area, q);
            row("carnal_area", v.expectation, 0.5 * v.achieved_error);
        });
    }
    const std::pair<DwyerWhich, const char*> dw[] = {
        {DwyerWhich::Facets, "dwyer_facets"}, {DwyerWhich::Area, "dwyer_area"}, {DwyerWhich::Volume, "dwyer_volume"}};
    for (const auto& [w, name] : dw) {
        guarded(failures, "verify", cell_name(law, d, n, name), [&] {
            const FormulaValue v = dwyer_d_integrals(law, d, n, w, q);
            row(name, v.value, v.achieved_error);
        });
    }
}

void tails_rows(Table& t, const RadialLaw& law, int d, const std::string& derived, const StageOptions& o,
                std::vector<CellFailure>* failures) {
    const auto& q = o.quadrature;
    std::optional<DerivedLaw> D;
    if (derived == "Q") D = marginal_law(law, d, q);
    else if (derived == "H") D = min_h_law(law, q);
    else if (derived == "K") D = area_k_law(law, q);
    else if (derived == "Kstar") D = kstar_law(law, q);
    else if (!derived.empty()) fail(ErrorKind::Validation, "tails: derived law must be Q, H, K or Kstar");
    const TailFunction tail = D ? tail_of(*D) : tail_of(law);
    const std::string tag = derived.empty() ? std::string("F") : derived;

    t.add({std::string("class=") + to_string(tail.mda), "0", fmt(tail.index), fmt(tail.index), "0"});

    std::vector<double> levels = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    std::vector<double> u_grid;
    for (double p : levels) u_grid.push_back(tail.survival_quantile(p));

    if (tail.mda == MdaClass::Gumbel) {
        guarded(failures, "tails", tag + " gumbel_limit", [&] {
            const auto rep = gumbel_limit_check(tail, u_grid, {0.5, 1.0, 2.0}, ScalingSource::Numeric, q);
            for (const auto& r : rep.rows) diag(t, r.check, r.u_or_n, r.value, r.reference, r.deviation);
        });
        for (double u : u_grid) {
            guarded(failures, "tails", tag + " loc u=" + fmt(u), [&] {
                const double dev = local_scaling_deviation(tail, u, {-1.0, -0.5, 0.5, 1.0}, ScalingSource::Numeric, q);
                diag(t, "loc", u, dev, 0.0, dev);
            });
        }
    } else if (tail.mda == MdaClass::Frechet || tail.mda == MdaClass::ORegVarying) {
        guarded(failures, "tails", tag + " rv_index", [&] {
            std::vector<double> g;
            for (double p = 1e-2; p >= 1e-12; p /= std::sqrt(10.0)) g.push_back(tail.survival_quantile(p));
            const RvReport rep = rv_index_detect(tail, g);
            diag(t, std::string("rv_index verdict=") + to_string(rep.verdict), g.back(), rep.index, tail.index,
                 rep.index - tail.index);
            diag(t, "rv_slope_spread", g.back(), rep.slope_spread, 0.0, rep.slope_spread);
            for (const auto& b : rep.ratio_bounds) {
                diag(t, "rv_ratio_lo x=" + fmt(b.x), g.back(), b.lo, std::pow(b.x, -tail.index),
                     b.lo - std::pow(b.x, -tail.index));
                diag(t, "rv_ratio_hi x=" + fmt(b.x), g.back(), b.hi, std::pow(b.x, -tail.index),
                     b.hi - std::pow(b.x, -tail.index));
            }
        });
    } else if (tail.mda == MdaClass::Weibull) {
        guarded(failures, "tails", tag + " weibull_index", [&] {
            const double dev = weibull_index_check(tail, tail.index, {1e2, 1e3, 1e4});
            diag(t, "weibull_index", 1e4, tail.index, tail.index, dev);
        });
    }

    if (!D && law.mda_class() != MdaClass::ORegVarying && law.mda_class() != MdaClass::Unknown) {
        const double u = law.survival_quantile(1e-8);
        guarded(failures, "tails", "transfer", [&] {
            const TransferReport rep = transfer_constants(law, d, regime_of(law.mda_class()), u, q);
            for (const auto& it : rep.items)
                diag(t, "transfer:" + it.name, u, it.quadrature, it.predicted, it.ratio - 1.0);
        });
        if (moment_exists(law, 1.0)) {
            guarded(failures, "tails", "abel_roundtrip", [&] {
                const DerivedLaw ks = kstar_law(law, q);
                for (double p : {0.5, 1e-1, 1e-2, 1e-4, 1e-6}) {
                    const double x = law.survival_quantile(p);
                    const double v = abel_invert(ks, x).value;
                    diag(t, "abel_roundtrip", x, v, law.survival(x), std::fabs(v - law.survival(x)));
                }
            });
        }
    }
}

RunRecord run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    RunRecord rec;
    rec.run_id = run_id(cfg);
    rec.started = utc_now();
    StageOptions o;
    o.master_seed = cfg.master_seed;
    o.workers = cfg.workers;
    o.quadrature = cfg.quadrature;
    o.epsilon = cfg.epsilon;
    o.norming = cfg.norming;

    Table sim = simulate_header(), pred = predict_header(), ver = verify_header();
    const std::vector<FormulaId> formulas = cfg.formulas.empty() ? default_formulas(cfg.d) : cfg.formulas;
    for (const auto& spec : cfg.laws) {
        const RadialLaw law = parse_law(spec);
        for (std::size_t n : cfg.n_list) {
            guarded(&rec.failures, "simulate", cell_name(law, cfg.d, static_cast<double>(n), "simulate"),
                    [&] { simulate_rows(sim, law, cfg.d, n, cfg.quantities, cfg.replications, o); });
            predict_rows(pred, law, cfg.d, static_cast<double>(n), formulas, o, &rec.failures);
            if (cfg.verify) verify_rows(ver, law, cfg.d, static_cast<double>(n), o, &rec.failures);
        }
    }

    std::filesystem::create_directories(cfg.out_dir);
    const std::string ext = cfg.format == "json" ? ".json" : ".csv";
    auto emit = [&](const Table& t, const std::string& name) {
        const std::string path = (std::filesystem::path(cfg.out_dir) / (name + ext)).string();
        write_file(path, cfg.format == "json" ? t.to_json() : t.to_csv());
        rec.files.push_back(name + ext);
    };
    emit(sim, "simulate");
    emit(pred, "predict");
    if (cfg.verify) emit(ver, "verify");
    rec.finished = utc_now();

    nlohmann::ordered_json m;
    m["run_id"] = rec.run_id;
    m["version"] = version_string();
    m["started"] = rec.started;
    m["finished"] = rec.finished;
    m["config"] = cfg.canonical();
    m["files"] = rec.files;
    m["status"] = rec.failures.empty() ? "ok" : "partial_failure";
    nlohmann::ordered_json fl = nlohmann::ordered_json::array();
    for (const auto& f : rec.failures)
        fl.push_back({{"stage", f.stage}, {"cell", f.cell}, {"kind", f.kind}, {"message", f.message}});
    m["failures"] = fl;
    rec.manifest_path = (std::filesystem::path(cfg.out_dir) / "manifest.json").string();
    write_file(rec.manifest_path, m.dump(2) + "\n");
    return rec;
}

}  // namespace sphull::harness
