#include "sphull/mixture_tails.hpp"

#include <cmath>
#include <sstream>

#include "sphull/error.hpp"
#include "sphull/numeric/roots.hpp"
#include "sphull/numeric/special.hpp"

namespace sphull {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_d(int d) {
    if (d < 2) fail(ErrorKind::Validation, "dimension d must be >= 2");
}

double bracket_hi(const DerivedLaw& L, double q) {
    const RadialLaw& F = L.base();
    const double xf = F.upper_endpoint();
    double hi;
    switch (L.kind()) {
        case DerivedKind::MarginalQ: hi = F.survival_quantile(std::min(1.0, 2.0 * q)); break;
        case DerivedKind::MinH: hi = F.survival_quantile(std::sqrt(q)); break;
        default: hi = F.survival_quantile(q); break;
    }
    if (!std::isfinite(hi)) hi = std::isfinite(xf) ? xf : 1.0;
    if (std::isfinite(xf)) return std::min(hi, xf);
    int guard = 0;
    while (L.survival(hi) > q) {
        hi = hi * 2.0 + 1.0;
        if (++guard > 200) fail(ErrorKind::Domain, "survival_quantile: no bracket");
    }
    return hi;
}

}  // namespace

double beta_survival(BetaParams p, double x) {
    if (!(p.alpha > 0 && p.beta > 0)) fail(ErrorKind::Validation, "beta parameters must be positive");
    return numeric::beta_survival(p.alpha, p.beta, x);
}

const char* to_string(DerivedKind k) {
    switch (k) {
        case DerivedKind::MarginalQ: return "Q";
        case DerivedKind::MinH: return "H";
        case DerivedKind::AreaK: return "K";
        case DerivedKind::KStar: return "Kstar";
    }
    return "?";
}

bool moment_exists(const RadialLaw& F, double p) {
    switch (F.family()) {
        case Family::Pareto:
        case Family::OscillatingORV: return F.mda_index() > p;
        case Family::LogSlowlyVarying: {
            const double a = F.param("alpha");
            return a > p || (a == p && F.param("beta") > 1.0);
        }
        case Family::CarnalConstructed:
            return F.mda_class() == MdaClass::Gumbel;
        default: return true;
    }
}

numeric::IntegralResult sqrt_transform(const RadialLaw& F, double s, const numeric::QuadratureSpec& spec) {
    return radial_integral(law_measure(F), std::max(0.0, s), 1.0, [](double, double) { return 1.0; }, spec);
}

numeric::IntegralResult inv_sqrt_transform(const RadialLaw& F, double s, const numeric::QuadratureSpec& spec) {
    return radial_integral(law_measure(F), std::max(0.0, s), -1.0, [](double, double) { return 1.0; }, spec);
}

double mean_radius(const RadialLaw& F, const numeric::QuadratureSpec& spec) {
    if (!moment_exists(F, 1.0))
        fail(ErrorKind::Moment, "first moment of " + F.spec_string() + " is infinite");
    return sqrt_transform(F, 0.0, spec.tail()).value;
}

DerivedLaw::DerivedLaw(DerivedKind kind, RadialLaw base, int d, const numeric::QuadratureSpec& spec)
    : kind_(kind), base_(std::move(base)), d_(d), spec_(spec) {
    spec_.validate();
    measure_ = kind == DerivedKind::MinH ? min_measure(base_) : law_measure(base_);
    if (kind == DerivedKind::KStar) mu_ = mean_radius(base_, spec_);
    if (kind == DerivedKind::MarginalQ) check_d(d);
}

numeric::IntegralResult DerivedLaw::survival_detailed(double u) const {
    const numeric::QuadratureSpec s = spec_.tail();
    switch (kind_) {
        case DerivedKind::MarginalQ: {
            if (u <= 0) return {0.5, 0.0, 0};
            const double a = 0.5, b = 0.5 * (d_ - 1);
            auto phi = [u, a, b](double r, double t) {
                const double x = (u / r) * (u / r);
                const double y = (t / r) * (t / r);
                return numeric::beta_survival(a, b, std::min(1.0, x), std::min(1.0, y));
            };
            auto r = radial_integral(measure_, u, 0.0, phi, s);
            r.value *= 0.5;
            r.abs_error *= 0.5;
            return r;
        }
        case DerivedKind::MinH: {
            if (u <= 0) return {1.0, 0.0, 0};
            auto phi = [u](double, double t) { return std::atan2(t, u); };
            auto r = radial_integral(measure_, u, 0.0, phi, s);
            r.value *= 2.0 / kPi;
            r.abs_error *= 2.0 / kPi;
            return r;
        }
        case DerivedKind::AreaK: {
            auto J = radial_integral(measure_, std::max(0.0, u), 1.0, [](double, double) { return 1.0; }, s);
            return {J.value * J.value / kPi, 2.0 * J.value * J.abs_error / kPi, J.evaluations};
        }
        case DerivedKind::KStar: {
            if (u <= 0) return {1.0, 0.0, 0};
            auto J = radial_integral(measure_, u, 1.0, [](double, double) { return 1.0; }, s);
            return {J.value / *mu_, J.abs_error / *mu_, J.evaluations};
        }
    }
    return {};
}

double DerivedLaw::density(double x) const {
    const numeric::QuadratureSpec s = spec_.tail();
    if (x < 0) return 0.0;
    if (x >= upper_endpoint()) return 0.0;
    auto one = [](double, double) { return 1.0; };
    switch (kind_) {
        case DerivedKind::MarginalQ: {
            const double c = std::exp(numeric::lgamma_checked(0.5 * d_) - 0.5 * std::log(kPi) -
                                      numeric::lgamma_checked(0.5 * (d_ - 1)));
            const int d = d_;
            auto phi = [d](double r, double) { return std::pow(r, 2.0 - d); };
            return c * radial_integral(measure_, x, d_ - 3.0, phi, s).value;
        }
        case DerivedKind::MinH: return 2.0 / kPi * radial_integral(measure_, x, -1.0, one, s).value;
        case DerivedKind::AreaK: {
            const double J = radial_integral(measure_, x, 1.0, one, s).value;
            const double I = radial_integral(measure_, x, -1.0, one, s).value;
            return 2.0 / kPi * J * x * I;
        }
        case DerivedKind::KStar: {
            const double I = radial_integral(measure_, x, -1.0, one, s).value;
            return x * I / *mu_;
        }
    }
    return 0.0;
}

double DerivedLaw::survival_quantile(double q) const {
    if (!(q > 0 && q < 1)) {
        if (q <= 0) return upper_endpoint();
        return 0.0;
    }
    const double s0 = survival(0.0);
    if (q >= s0) return 0.0;
    const double hi = bracket_hi(*this, q);
    auto g = [this](double u) { return -std::log(std::max(survival(u), 1e-300)); };
    return numeric::solve_monotone(g, -std::log(q), 0.0, hi, 1e-13);
}

MdaClass DerivedLaw::mda_class() const { return base_.mda_class(); }

double DerivedLaw::mda_index() const {
    const double g = base_.mda_index();
    switch (base_.mda_class()) {
        case MdaClass::Frechet:
        case MdaClass::ORegVarying:
            if (kind_ == DerivedKind::MinH || kind_ == DerivedKind::AreaK) return 2.0 * g;
            return g;
        case MdaClass::Weibull:
            if (kind_ == DerivedKind::MarginalQ) return g + 0.5 * (d_ - 1);
            return g;
        default: return g;
    }
}

DerivedLaw marginal_law(const RadialLaw& F, int d, const numeric::QuadratureSpec& spec) {
    return DerivedLaw(DerivedKind::MarginalQ, F, d, spec);
}
DerivedLaw min_h_law(const RadialLaw& F, const numeric::QuadratureSpec& spec) {
    return DerivedLaw(DerivedKind::MinH, F, 2, spec);
}
DerivedLaw area_k_law(const RadialLaw& F, const numeric::QuadratureSpec& spec) {
    return DerivedLaw(DerivedKind::AreaK, F, 2, spec);
}
DerivedLaw kstar_law(const RadialLaw& F, const numeric::QuadratureSpec& spec) {
    return DerivedLaw(DerivedKind::KStar, F, 2, spec);
}

TailFunction tail_of(const DerivedLaw& L) {
    TailFunction t;
    t.name = std::string(to_string(L.kind())) + (L.kind() == DerivedKind::MarginalQ ? std::to_string(L.d()) : "") +
             "[" + L.base().spec_string() + "]";
    t.survival = [L](double u) { return L.survival(u); };
    t.survival_quantile = [L](double q) { return L.survival_quantile(q); };
    t.upper = L.upper_endpoint();
    const RadialLaw F = L.base();
    const DerivedKind k = L.kind();
    const double factor = (k == DerivedKind::MinH || k == DerivedKind::AreaK) ? 2.0 : 1.0;
    t.scale = [F, factor](double u) { return F.tail_scale(u) / factor; };
    t.breaks = F.breaks();
    t.mda = L.mda_class();
    t.index = L.mda_index();
    t.declared_w = [F, factor](double u) -> std::optional<double> {
        auto w = F.declared_w(u);
        if (!w) return std::nullopt;
        return *w * factor;
    };
    return t;
}

double marginal_survival_Qd(const RadialLaw& F, int d, double u, const numeric::QuadratureSpec& spec) {
    return marginal_law(F, d, spec).survival(u);
}
double marginal_density_qd(const RadialLaw& F, int d, double x, const numeric::QuadratureSpec& spec) {
    if (x >= F.upper_endpoint()) return 0.0;
    return marginal_law(F, d, spec).density(x);
}
double h_survival(const RadialLaw& F, double u, const numeric::QuadratureSpec& spec) {
    return min_h_law(F, spec).survival(u);
}
double h_density(const RadialLaw& F, double u, const numeric::QuadratureSpec& spec) {
    return min_h_law(F, spec).density(u);
}
double k_survival(const RadialLaw& F, double s, const numeric::QuadratureSpec& spec) {
    return area_k_law(F, spec).survival(s);
}
double k_density(const RadialLaw& F, double s, const numeric::QuadratureSpec& spec) {
    return area_k_law(F, spec).density(s);
}

numeric::IntegralResult abel_invert(const DerivedLaw& kstar, double x) {
    if (kstar.kind() != DerivedKind::KStar) fail(ErrorKind::Validation, "abel_invert expects a K* law");
    const double mu = *kstar.mu();
    const RadialLaw& F = kstar.base();
    const double xf = F.upper_endpoint();
    x = std::max(0.0, x);
    if (x >= xf) return {0.0, 0.0, 0};
    auto y_of = [x](double t) { return x == 0.0 ? t : std::sqrt(x * x + t * t); };
    auto t_of = [x](double y) { return std::sqrt(std::max(0.0, (y - x) * (y + x))); };
    // (y^2-x^2)^{-1/2} dy = dt / y
    auto f = [&](double t) {
        const double y = y_of(t);
        if (y >= xf) return 0.0;
        return kstar.density(y) / y;
    };
    numeric::IntegrateOptions opts;
    for (double b : F.breaks())
        if (b > x && b < xf) opts.breaks.push_back(t_of(b));
    const double sr = F.tail_scale(x);
    const double T = std::isinf(xf) ? numeric::kInf : t_of(xf);
    if (std::isinf(T)) {
        opts.scale = std::max(std::sqrt(sr * (2 * x + sr)), 1e-300);
        for (double k : {0.25, 1.0, 4.0, 16.0}) opts.breaks.push_back(t_of(x + k * sr));
    } else {
        opts.end_map = numeric::EndMap::Right;
    }
    auto res = numeric::integrate(f, 0.0, T, kstar.spec().tail(), opts);
    const double c = 2.0 * mu / kPi;
    return {c * res.value, c * res.abs_error, res.evaluations};
}

const char* to_string(TransferRegime r) {
    switch (r) {
        case TransferRegime::Gumbel: return "gumbel";
        case TransferRegime::Frechet: return "frechet";
        case TransferRegime::Weibull: return "weibull";
    }
    return "?";
}

const TransferItem& TransferReport::at(const std::string& name) const {
    for (const auto& it : items)
        if (it.name == name) return it;
    fail(ErrorKind::Validation, "transfer report has no item '" + name + "'");
}

double gumbel_marginal_constant(int d) {
    return std::pow(2.0, 0.5 * (d - 3)) * numeric::gamma_checked(0.5 * d) / std::sqrt(kPi);
}

double frechet_marginal_constant(int d, double gamma) {
    const double a = 0.5 * (d - 1), b = 0.5, tau = 2.0;
    return std::exp(numeric::lgamma_checked(a + b) - numeric::lgamma_checked(b) +
                    numeric::lgamma_checked(b + gamma / tau) - numeric::lgamma_checked(a + b + gamma / tau));
}

double frechet_h_constant(double gamma) {
    return std::exp(numeric::lgamma_checked(gamma + 0.5) - 0.5 * std::log(kPi) - numeric::lgamma_checked(gamma + 1.0));
}

double weibull_marginal_constant(int d, double gamma) {
    const double a = 0.5 * (d - 1), b = 0.5;
    return std::exp(numeric::lgamma_checked(a + b) - numeric::lgamma_checked(b) + numeric::lgamma_checked(gamma + 1.0) -
                    numeric::lgamma_checked(gamma + a + 1.0));
}

TransferReport transfer_constants(const RadialLaw& F, int d, TransferRegime regime, double u,
                                  const numeric::QuadratureSpec& spec, ScalingSource src) {
    check_d(d);
    const MdaClass want = regime == TransferRegime::Gumbel    ? MdaClass::Gumbel
                          : regime == TransferRegime::Frechet ? MdaClass::Frechet
                                                              : MdaClass::Weibull;
    if (F.mda_class() != want)
        fail(ErrorKind::ClassMismatch, std::string("transfer_constants: regime ") + to_string(regime) +
                                           " does not match law class " + to_string(F.mda_class()));
    TransferReport rep{regime, d, u, 0.0, {}};
    auto add = [&rep](std::string name, double pred, double quad, std::string note = {}) {
        rep.items.push_back({std::move(name), pred, quad, quad / pred, std::move(note)});
    };
    const DerivedLaw Q = marginal_law(F, d, spec);
    const double Fb = F.survival(u);
    const double Qb = Q.survival(u);
    switch (regime) {
        case TransferRegime::Gumbel: {
            const double w = scaling_w(tail_of(F), u, src, spec);
            rep.w = w;
            const double uw = u * w;
            add("Qbar_d", gumbel_marginal_constant(d) * std::pow(uw, -0.5 * (d - 1)) * Fb, Qb, "one-sided");
            add("absX_product", numeric::gamma_checked(0.5 * d) / std::sqrt(kPi) * std::pow(2.0 / uw, 0.5 * (d - 1)) * Fb,
                2.0 * Qb, "two-sided |X_1| tail");
            add("q_d", w * Qb, Q.density(u));
            const DerivedLaw Q2 = d == 2 ? Q : marginal_law(F, 2, spec);
            const double Q2b = Q2.survival(u);
            const double Hb = h_survival(F, u, spec);
            add("Hbar", Fb * Fb / std::sqrt(kPi * uw), Hb);
            add("Hbar_via_Q2", 2.0 * std::sqrt(kPi * uw) * Q2b * Q2b, Hb);
            const double Kb = k_survival(F, u, spec);
            add("Kbar", 0.5 * Fb * Fb * u / w, Kb);
            add("Kbar_via_Q2", kPi * u * u * Q2b * Q2b, Kb);
            if (moment_exists(F, 1.0)) {
                const DerivedLaw Ks = kstar_law(F, spec);
                add("Kstar", numeric::gamma_checked(1.5) * std::sqrt(2.0 * u / w) * Fb / *Ks.mu(), Ks.survival(u));
            }
            break;
        }
        case TransferRegime::Frechet: {
            const double g = F.mda_index();
            const double c2 = frechet_marginal_constant(d, g);
            if (d == 2)
                add("Qbar2_printed", c2 * Fb, Qb, "printed constant is two-sided; one-sided ratio tends to 1/2");
            add("Qbar_d_one_sided", 0.5 * c2 * Fb, Qb);
            add("absX_product", c2 * Fb, 2.0 * Qb, "two-sided |X_1| tail");
            add("Hbar", frechet_h_constant(g) * Fb * Fb, h_survival(F, u, spec));
            break;
        }
        case TransferRegime::Weibull: {
            const double g = F.mda_index();
            const double xf = F.upper_endpoint();
            const double delta = xf - u;
            const double q2 = Q.survival(xf - 2.0 * delta);
            const double fitted = std::log(q2 / Qb) / std::log(2.0);
            add("index_shift", g + 0.5 * (d - 1), fitted, "fitted from Qbar_d(1-2t)/Qbar_d(1-t)");
            const double pred = weibull_marginal_constant(d, g) * std::pow(2.0 * delta / xf, 0.5 * (d - 1)) * Fb;
            add("absX_product", pred, 2.0 * Qb, "two-sided |X_1| tail");
            add("Qbar_d_one_sided", 0.5 * pred, Qb);
            break;
        }
    }
    return rep;
}

}  // namespace sphull
