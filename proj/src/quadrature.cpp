#include "sphull/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "sphull/error.hpp"
#include "sphull/measure.hpp"
#include "sphull/mixture_tails.hpp"
#include "sphull/numeric/special.hpp"

namespace sphull {

namespace {

constexpr double kPi = 3.14159265358979323846;

QuadratureSpec inner_spec(const QuadratureSpec& s) {
    QuadratureSpec t = s.tail();
    t.rel_tol = std::max(1e-13, s.rel_tol * 1e-2);
    return t;
}

std::vector<double> f_levels(const RadialLaw& F, double n) {
    return level_breaks([&F](double q) { return F.survival_quantile(q); }, n);
}

numeric::IntegralResult integrate_radius(const RadialLaw& F, const std::function<double(double)>& g,
                                         const QuadratureSpec& spec, const std::vector<double>& breaks) {
    const double xf = F.upper_endpoint();
    numeric::IntegrateOptions opts;
    opts.breaks = breaks;
    for (double b : F.breaks()) opts.breaks.push_back(b);
    if (std::isinf(xf)) {
        const double last = breaks.empty() ? 1.0 : breaks.back();
        opts.scale = F.tail_scale(last);
    } else {
        opts.end_map = numeric::EndMap::Right;
    }
    return numeric::integrate(g, 0.0, xf, spec.tail(), opts);
}

}  // namespace

DimensionalConstants dimensional_constants(int d) {
    if (d < 1) fail(ErrorKind::Validation, "dimension must be >= 1");
    const double dd = d;
    const double tau = std::sqrt(dd) * std::pow(1.0 + 1.0 / dd, 0.5 * (dd + 1.0)) / numeric::gamma_checked(dd + 1.0);
    const double kappa = 2.0 * std::pow(kPi, 0.5 * dd) / numeric::gamma_checked(0.5 * dd);
    return {d, tau, kappa};
}

FormulaValue tail_moment_integral(const RadialLaw& F, double r, double p, const QuadratureSpec& spec) {
    if (!(p >= 0)) fail(ErrorKind::Validation, "tail_moment_integral: p must be >= 0");
    if (!moment_exists(F, 2.0 * p + 1.0))
        fail(ErrorKind::Moment, "tail_moment_integral diverges for " + F.spec_string());
    if (!(r < F.upper_endpoint())) return {0.0, 0.0};
    auto res = radial_integral(law_measure(F), std::max(0.0, r), 2.0 * p, [](double x, double) { return x; },
                               spec.tail());
    return {res.value, res.abs_error};
}

VnBounds vn_integral_bounds(const RadialLaw& F, int d, double n, const QuadratureSpec& spec) {
    if (!(n >= 2)) fail(ErrorKind::Validation, "vn_integral_bounds: n must be >= 2");
    const DerivedLaw Q = marginal_law(F, d, inner_spec(spec));
    const Measure m = law_measure(F);
    const auto br = f_levels(F, n);
    const double c = std::pow(2.0, 1.0 - d);
    auto lo = measure_integral(
        m, [&](double s) { return std::exp((n - 1.0) * std::log1p(-Q.survival(s))); }, 0.0, spec.tail(), br);
    auto hi = measure_integral(
        m, [&](double s) { return std::exp((n - 1.0) * std::log1p(-c * Q.survival(s))); }, 0.0, spec.tail(), br);
    const double up = std::pow(2.0, d - 1.0);
    VnBounds b{n * lo.value, n * up * hi.value, n * lo.abs_error, n * up * hi.abs_error};
    return b;
}

Carnal2dValue carnal_2d_integrals(const RadialLaw& F, double n, CarnalWhich which, const QuadratureSpec& spec) {
    if (!(n >= 3)) fail(ErrorKind::Validation, "carnal_2d_integrals: n must be >= 3");
    const QuadratureSpec is = inner_spec(spec);
    const DerivedLaw Q = marginal_law(F, 2, is);
    const DerivedLaw D = which == CarnalWhich::Vertices ? min_h_law(F, is) : area_k_law(F, is);
    auto g = [&](double s) {
        const double dens = D.density(s);
        if (dens == 0.0) return 0.0;
        return std::exp((n - 2.0) * std::log1p(-Q.survival(s))) * dens;
    };
    auto res = integrate_radius(F, g, spec, f_levels(F, n));
    const double v = n * n * res.value;
    return {v, 0.5 * v, n * n * res.abs_error};
}

FormulaValue dwyer_d_integrals(const RadialLaw& F, int d, double n, DwyerWhich which, const QuadratureSpec& spec) {
    if (d < 2) fail(ErrorKind::Validation, "dwyer_d_integrals: d must be >= 2");
    const double p = which == DwyerWhich::Facets ? d - 2.0 : 0.5 * (3.0 * d - 5.0);
    if (!moment_exists(F, 2.0 * p + 1.0))
        fail(ErrorKind::Moment, "dwyer_d_integrals: delta bound diverges for " + F.spec_string());
    const QuadratureSpec is = inner_spec(spec);
    const DerivedLaw Q = marginal_law(F, d, is);
    const auto cd = dimensional_constants(d);
    const auto cm = dimensional_constants(d - 1);
    double pre = 0;
    switch (which) {
        case DwyerWhich::Facets: pre = cd.kappa_d * cm.tau_d * cm.kappa_d; break;
        case DwyerWhich::Area: pre = cd.tau_d * cm.tau_d * cm.kappa_d; break;
        case DwyerWhich::Volume: pre = d * cd.tau_d * cm.tau_d * cm.kappa_d; break;
    }
    auto g = [&](double r) {
        if (r <= 0) return 0.0;
        const double qb = Q.survival(r);
        const double ex = std::exp(-n * qb);
        if (ex == 0.0) return 0.0;
        const double q = Q.density(r);
        if (q == 0.0) return 0.0;
        const double T = tail_moment_integral(F, r, p, is).value;
        // n^d T q^{d-1} e^{-n Qbar} = n (n q)^{d-1} T e^{-n Qbar}
        double v = n * std::pow(n * q, d - 1.0) * T * ex;
        if (which == DwyerWhich::Volume) v *= r;
        return v;
    };
    auto res = integrate_radius(F, g, spec, f_levels(F, n));
    return {pre * res.value, pre * res.abs_error};
}

Lemma2Input lemma2_power_pair(const RadialLaw& g1, double k, double lambda, double z) {
    Lemma2Input in{g1, {}, {}, k, numeric::gamma_checked(k + 1.0), lambda, z};
    in.g2_survival = [g1, k](double s) { return std::pow(g1.survival(s), k); };
    in.g2_density = [g1, k](double s) { return k * std::pow(g1.survival(s), k - 1.0) * g1.density(s); };
    return in;
}

std::vector<Lemma2Row> lemma2_verify(const Lemma2Input& in, const std::vector<double>& n_grid,
                                     const QuadratureSpec& spec) {
    if (!(in.lambda >= 0 && in.lambda <= 1)) fail(ErrorKind::Validation, "lemma2: lambda must lie in [0,1]");
    if (!(in.rho >= 0 && in.l >= 0)) fail(ErrorKind::Validation, "lemma2: rho and l must be >= 0");
    if (!in.g1.has_density()) fail(ErrorKind::Validation, "lemma2: G1 must be continuous");
    const RadialLaw& G1 = in.g1;
    const double gr = numeric::gamma_checked(in.rho + 1.0);
    std::vector<Lemma2Row> rows;
    for (double n : n_grid) {
        const double lam = in.lambda;
        const double eff = lam < 1.0 ? (1.0 - lam) * n : n;
        auto ga = [&](double s) {
            const double base = std::log1p(-(1.0 - lam) * G1.survival(s));
            return std::exp((n - in.z) * base) * in.g2_density(s);
        };
        auto gc = [&](double s) {
            const double sb = G1.survival(s);
            return in.g2_survival(s) * std::exp(-(n - in.z) * sb) * G1.density(s);
        };
        auto Ia = integrate_radius(G1, ga, spec, f_levels(G1, eff));
        auto Ic = integrate_radius(G1, gc, spec, f_levels(G1, n));
        const double L = in.slowly_varying(1.0 / n);
        Lemma2Row r;
        r.n = n;
        r.a = Ia.value * std::pow(eff, in.rho) / L;
        const double u = G1.survival_quantile(1.0 / n);
        const double s1 = G1.survival(u);
        r.b = in.g2_survival(u) / (std::pow(s1, in.rho) * in.slowly_varying(s1)) * gr;
        r.c = Ic.value * std::pow(n, in.rho + 1.0) / L;
        r.max_mutual_deviation =
            std::max({std::fabs(r.a / r.b - 1.0), std::fabs(r.a / r.c - 1.0), std::fabs(r.b / r.c - 1.0)});
        rows.push_back(r);
    }
    return rows;
}

}  // namespace sphull
