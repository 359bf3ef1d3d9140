#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "sphull/error.hpp"
#include "sphull/evt_core.hpp"
#include "sphull/hull_engine.hpp"
#include "sphull/mixture_tails.hpp"

namespace sphull {

namespace {

// Runs body(i) for i in [0, count) on a bounded pool. Results must be stored
// by index; the caller aggregates in index order.
template <class Body>
void run_indexed(std::size_t count, unsigned workers, Body body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!err) err = std::current_exception();
                    next.store(count);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

struct Neumaier {
    double sum = 0, comp = 0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) comp += (sum - t) + x;
        else comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct Moments {
    double mean = 0, var = 0, m3 = 0, m4 = 0;  // var is the unbiased sample variance; m3, m4 central
};

Moments moments(const std::vector<double>& x) {
    Moments m;
    const double R = static_cast<double>(x.size());
    Neumaier s;
    for (double v : x) s.add(v);
    m.mean = s.value() / R;
    Neumaier s2, s3, s4;
    for (double v : x) {
        const double e = v - m.mean;
        s2.add(e * e);
        s3.add(e * e * e);
        s4.add(e * e * e * e);
    }
    m.var = x.size() > 1 ? s2.value() / (R - 1.0) : 0.0;
    m.m3 = s3.value() / R;
    m.m4 = s4.value() / R;
    return m;
}

void check_scale(int d, std::size_t n) {
    if (d < 2) fail(ErrorKind::Validation, "monte carlo: d must be >= 2");
    if (d >= 4 && n > 60) fail(ErrorKind::UnsupportedScale, "d >= 4 is brute force only and capped at n = 60");
    if (d > 6) fail(ErrorKind::UnsupportedScale, "d > 6 is not supported");
}

double value_of(const HullStats& h, Quantity q) {
    switch (q) {
        case Quantity::Vn:
        case Quantity::VarVn: return static_cast<double>(h.v_n);
        case Quantity::Fn: return static_cast<double>(h.f_n);
        case Quantity::An: return h.area;
        case Quantity::Vol: return h.volume;
        case Quantity::Ln: return h.perimeter.value_or(0.0);
    }
    return 0.0;
}

}  // namespace

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::Vn: return "v_n";
        case Quantity::Fn: return "f_n";
        case Quantity::An: return "A_n";
        case Quantity::Vol: return "V_n";
        case Quantity::Ln: return "l_n";
        case Quantity::VarVn: return "var_v_n";
    }
    return "?";
}

Quantity quantity_from_string(const std::string& s) {
    for (Quantity q : {Quantity::Vn, Quantity::Fn, Quantity::An, Quantity::Vol, Quantity::Ln, Quantity::VarVn})
        if (s == to_string(q)) return q;
    if (s == "vertices") return Quantity::Vn;
    if (s == "facets") return Quantity::Fn;
    if (s == "area") return Quantity::An;
    if (s == "volume") return Quantity::Vol;
    if (s == "perimeter") return Quantity::Ln;
    fail(ErrorKind::Validation, "unknown quantity '" + s + "' (v_n, f_n, A_n, V_n, l_n, var_v_n)");
}

std::vector<EstimateRecord> mc_estimate(const RadialLaw& F, int d, std::size_t n, const std::vector<Quantity>& qs,
                                        std::size_t replications, std::uint64_t master_seed,
                                        const McOptions& opts) {
    check_scale(d, n);
    if (replications < 2) fail(ErrorKind::Validation, "mc_estimate: replications must be >= 2");
    for (Quantity q : qs)
        if (q == Quantity::Ln && d != 2) fail(ErrorKind::Validation, "l_n is defined for d=2 only");
    std::vector<std::vector<double>> vals(qs.size(), std::vector<double>(replications));
    run_indexed(replications, opts.workers, [&](std::size_t r) {
        const PointCloud c = sample_cloud(F, d, n, master_seed, r);
        const HullStats h = hull_stats(c);
        for (std::size_t k = 0; k < qs.size(); ++k) vals[k][r] = value_of(h, qs[k]);
    });
    std::vector<EstimateRecord> out;
    const double R = static_cast<double>(replications);
    for (std::size_t k = 0; k < qs.size(); ++k) {
        EstimateRecord e;
        e.quantity = qs[k];
        e.n = n;
        e.d = d;
        e.replications = replications;
        e.seed = master_seed;
        const Moments m = moments(vals[k]);
        if (qs[k] == Quantity::VarVn) {
            // the estimate is the sample variance; its spread comes from the
            // fourth central moment
            e.mean = m.var;
            e.sample_variance = std::max(0.0, m.m4 - m.var * m.var);
        } else {
            e.mean = m.mean;
            e.sample_variance = m.var;
        }
        e.ci_halfwidth_95 = 1.96 * std::sqrt(e.sample_variance / R);
        out.push_back(e);
    }
    return out;
}

EstimateRecord mc_estimate(const RadialLaw& F, int d, std::size_t n, Quantity q, std::size_t replications,
                           std::uint64_t master_seed, const McOptions& opts) {
    return mc_estimate(F, d, n, std::vector<Quantity>{q}, replications, master_seed, opts).front();
}

EfronReport efron_check(const RadialLaw& F, int d, std::size_t n, std::size_t replications,
                        std::uint64_t master_seed, const McOptions& opts) {
    check_scale(d, n);
    if (replications < 2) fail(ErrorKind::Validation, "efron_check: replications must be >= 2");
    if (n < 2) fail(ErrorKind::Validation, "efron_check: n must be >= 2");
    std::vector<double> v(replications), hit(replications);
    run_indexed(replications, opts.workers, [&](std::size_t r) {
        const PointCloud c = sample_cloud(F, d, n, master_seed, r);
        v[r] = static_cast<double>(hull_stats(c).v_n);
        hit[r] = vertex_oracle(c, 0) ? 1.0 : 0.0;
    });
    const double R = static_cast<double>(replications);
    EfronReport rep;
    const Moments mv = moments(v);
    rep.vn = {Quantity::Vn, n, d, replications, mv.mean, mv.var, 1.96 * std::sqrt(mv.var / R), master_seed};
    const Moments mh = moments(hit);
    const double nn = static_cast<double>(n);
    rep.n_times_p = nn * mh.mean;
    rep.ci_halfwidth_95 = 1.96 * nn * std::sqrt(mh.var / R);
    rep.overlap = std::fabs(rep.vn.mean - rep.n_times_p) <= rep.vn.ci_halfwidth_95 + rep.ci_halfwidth_95;
    return rep;
}

CltReport clt_replicates(const RadialLaw& F, int d, std::size_t n, std::size_t replications,
                         std::uint64_t master_seed, const McOptions& opts) {
    check_scale(d, n);
    if (replications < 3) fail(ErrorKind::Validation, "clt_replicates: replications must be >= 3");
    CltReport rep;
    if (F.mda_class() != MdaClass::Gumbel) {
        rep.condition_ok = false;
        rep.warning = "law is not classified Gumbel; the CLT hypothesis does not apply";
    } else if (std::isinf(F.upper_endpoint())) {
        const double nn = static_cast<double>(n);
        const GumbelNorming g1 = norming(F, nn), g2 = norming(F, 100.0 * nn);
        if (g2.a_n * g2.b_n > 1.1 * g1.a_n * g1.b_n) {
            rep.condition_ok = false;
            rep.warning = "a_n b_n grows between n and 100n; the CLT hypothesis may fail";
        }
    }
    std::vector<double> v(replications);
    run_indexed(replications, opts.workers, [&](std::size_t r) {
        v[r] = static_cast<double>(hull_stats(sample_cloud(F, d, n, master_seed, r)).v_n);
    });
    const Moments m = moments(v);
    rep.mean = m.mean;
    rep.variance = m.var;
    const double sd = std::sqrt(m.var);
    rep.standardized.resize(replications);
    for (std::size_t r = 0; r < replications; ++r) rep.standardized[r] = sd > 0 ? (v[r] - m.mean) / sd : 0.0;
    const double m2 = m.m4 >= 0 ? (m.var * (replications - 1.0) / replications) : 0.0;
    if (m2 > 0) {
        rep.skewness = m.m3 / std::pow(m2, 1.5);
        rep.excess_kurtosis = m.m4 / (m2 * m2) - 3.0;
    }
    std::vector<double> z = rep.standardized;
    std::sort(z.begin(), z.end());
    const double R = static_cast<double>(replications);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double phi = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
        rep.ks_distance = std::max({rep.ks_distance, std::fabs(phi - i / R), std::fabs((i + 1) / R - phi)});
    }
    if (F.mda_class() == MdaClass::Gumbel) {
        const DerivedLaw Q = marginal_law(F, d);
        rep.xi = norming(tail_of(Q), static_cast<double>(n)).xi;
        const double s = std::pow(rep.xi, 0.5 * (d - 1.0));
        rep.lambda_hat = rep.mean / s;
        rep.lambda_star_hat = rep.variance / s;
    }
    return rep;
}

}  // namespace sphull
