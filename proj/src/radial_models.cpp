#include "sphull/radial_models.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "sphull/error.hpp"
#include "sphull/numeric/integrate.hpp"
#include "sphull/numeric/roots.hpp"

namespace sphull {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void bad_param(const char* family, const char* name, const char* why) {
    std::ostringstream os;
    os << family << ": parameter '" << name << "' " << why;
    fail(ErrorKind::Validation, os.str());
}

double get(const ParamMap& p, const char* key, double def) {
    auto it = p.find(key);
    return it == p.end() ? def : it->second;
}

double require(const ParamMap& p, const char* family, const char* key) {
    auto it = p.find(key);
    if (it == p.end()) bad_param(family, key, "is required");
    return it->second;
}

void check_keys(const ParamMap& p, const char* family, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : p) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) bad_param(family, k.c_str(), "is not recognised");
        if (!std::isfinite(v)) bad_param(family, k.c_str(), "must be finite");
    }
}

class ExponentialImpl final : public LawImpl {
public:
    explicit ExponentialImpl(double lambda) : l_(lambda) {}
    double survival(double u) const override { return u <= 0 ? 1.0 : std::exp(-l_ * u); }
    double survival_quantile(double q) const override {
        if (q >= 1.0) return 0.0;
        if (q <= 0.0) return kInf;
        return -std::log(q) / l_;
    }
    std::optional<double> density(double u) const override { return u < 0 ? 0.0 : l_ * std::exp(-l_ * u); }
    double upper_endpoint() const override { return kInf; }
    MdaClass mda_class() const override { return MdaClass::Gumbel; }
    std::optional<double> declared_w(double) const override { return l_; }
    double tail_scale(double) const override { return 1.0 / l_; }

private:
    double l_;
};

// F_bar = exp(-r (u^theta + c u^{theta(1+gamma)}))
class WeibullTailImpl final : public LawImpl {
public:
    WeibullTailImpl(double r, double theta, double c, double gamma) : r_(r), t_(theta), c_(c), g_(gamma) {}
    double lam(double u) const {
        if (u <= 0) return 0.0;
        double v = std::pow(u, t_);
        if (c_ > 0) v += c_ * std::pow(u, t_ * (1.0 + g_));
        return r_ * v;
    }
    double hazard(double u) const {
        double v = t_ * std::pow(u, t_ - 1.0);
        if (c_ > 0) v += c_ * t_ * (1.0 + g_) * std::pow(u, t_ * (1.0 + g_) - 1.0);
        return r_ * v;
    }
    double survival(double u) const override { return u <= 0 ? 1.0 : std::exp(-lam(u)); }
    double survival_quantile(double q) const override {
        if (q >= 1.0) return 0.0;
        if (q <= 0.0) return kInf;
        const double target = -std::log(q);
        const double x0 = std::pow(target / r_, 1.0 / t_);
        if (c_ == 0.0) return x0;
        return numeric::solve_monotone([this](double u) { return lam(u); }, target, 0.0, x0 * 1.0000001 + 1e-300,
                                       1e-15);
    }
    std::optional<double> density(double u) const override {
        if (u <= 0) return (t_ == 1.0 && c_ == 0) ? r_ : 0.0;
        return hazard(u) * survival(u);
    }
    double upper_endpoint() const override { return kInf; }
    MdaClass mda_class() const override { return MdaClass::Gumbel; }
    std::optional<double> declared_w(double u) const override { return hazard(u); }
    double tail_scale(double u) const override {
        const double h = u > 0 ? hazard(u) : 0.0;
        return (h > 0 && std::isfinite(h)) ? 1.0 / h : std::pow(1.0 / r_, 1.0 / t_);
    }

private:
    double r_, t_, c_, g_;
};

class Example1Impl final : public LawImpl {
public:
    Example1Impl(double a, double b) : a_(a), b_(b) {
        if (a * std::exp(-2.0 * b) <= 1.0) {
            u0_ = 0.5;
            p0_ = a * std::exp(-2.0 * b);
        } else {
            u0_ = 1.0 - b / std::log(a);
            p0_ = 1.0;
        }
    }
    double survival(double u) const override {
        if (u <= 0) return 1.0;
        if (u >= 1.0) return 0.0;
        if (u < u0_) return 1.0 - (1.0 - p0_) * u / u0_;
        return a_ * std::exp(-b_ / (1.0 - u));
    }
    double survival_quantile(double q) const override {
        if (q >= 1.0) return 0.0;
        if (q <= 0.0) return 1.0;
        if (q >= p0_) return p0_ < 1.0 ? u0_ * (1.0 - q) / (1.0 - p0_) : u0_;
        return 1.0 - b_ / std::log(a_ / q);
    }
    std::optional<double> density(double u) const override {
        if (u <= 0 || u >= 1.0) return 0.0;
        if (u < u0_) return (1.0 - p0_) / u0_;
        const double om = 1.0 - u;
        return a_ * std::exp(-b_ / om) * b_ / (om * om);
    }
    double upper_endpoint() const override { return 1.0; }
    MdaClass mda_class() const override { return MdaClass::Gumbel; }
    std::optional<double> declared_w(double u) const override {
        const double om = 1.0 - u;
        return b_ / (om * om);
    }
    double tail_scale(double u) const override {
        if (u < u0_) return u0_;
        const double om = 1.0 - u;
        return std::max(om * om / b_, 1e-300);
    }
    std::vector<double> breaks() const override { return {u0_}; }
    double body_end() const { return u0_; }

private:
    double a_, b_, u0_, p0_;
};

class ParetoImpl final : public LawImpl {
public:
    ParetoImpl(double alpha, double xm) : a_(alpha), xm_(xm) {}
    double survival(double u) const override { return u <= xm_ ? 1.0 : std::pow(u / xm_, -a_); }
    double survival_quantile(double q) const override {
        if (q >= 1.0) return xm_;
        if (q <= 0.0) return kInf;
        return xm_ * std::pow(q, -1.0 / a_);
    }
    std::optional<double> density(double u) const override {
        return u < xm_ ? 0.0 : a_ / xm_ * std::pow(u / xm_, -a_ - 1.0);
    }
    double upper_endpoint() const override { return kInf; }
    double lower_support() const override { return xm_; }
    MdaClass mda_class() const override { return MdaClass::Frechet; }
    double mda_index() const override { return a_; }
    double tail_scale(double u) const override { return std::max(u, xm_); }
    std::vector<double> breaks() const override { return {xm_}; }

private:
    double a_, xm_;
};

// F_bar = u^{-alpha} (1 + ln u)^{-beta}, u >= 1
class LogSvImpl final : public LawImpl {
public:
    LogSvImpl(double alpha, double beta) : a_(alpha), b_(beta) {}
    double lsurv(double t) const { return -a_ * t - b_ * std::log1p(t); }
    double survival(double u) const override { return u <= 1.0 ? 1.0 : std::exp(lsurv(std::log(u))); }
    double survival_quantile(double q) const override {
        if (q >= 1.0) return 1.0;
        if (q <= 0.0) return kInf;
        const double target = -std::log(q);
        const double t = numeric::solve_monotone([this](double s) { return -lsurv(s); }, target, 0.0, kInf, 1e-15,
                                                 1.0);
        return std::exp(t);
    }
    std::optional<double> density(double u) const override {
        if (u < 1.0) return 0.0;
        const double t = std::log(u);
        return survival(u) * (a_ + b_ / (1.0 + t)) / u;
    }
    double upper_endpoint() const override { return kInf; }
    double lower_support() const override { return 1.0; }
    MdaClass mda_class() const override { return a_ > 0 ? MdaClass::Frechet : MdaClass::ORegVarying; }
    double mda_index() const override { return a_; }
    double tail_scale(double u) const override { return std::max(u, 1.0); }
    std::vector<double> breaks() const override { return {1.0}; }

private:
    double a_, b_;
};

// F_bar = u^{-alpha} (2 + cos ln u)/3, u >= 1
class OscOrvImpl final : public LawImpl {
public:
    explicit OscOrvImpl(double alpha) : a_(alpha) {}
    double lsurv(double t) const { return -a_ * t + std::log((2.0 + std::cos(t)) / 3.0); }
    double survival(double u) const override { return u <= 1.0 ? 1.0 : std::exp(lsurv(std::log(u))); }
    double survival_quantile(double q) const override {
        if (q >= 1.0) return 1.0;
        if (q <= 0.0) return kInf;
        const double target = -std::log(q);
        const double lo = std::max(0.0, (target - std::log(3.0)) / a_);
        const double hi = target / a_ + 1e-12;
        if (hi <= lo) return std::exp(lo);
        const double t =
            numeric::solve_monotone([this](double s) { return -lsurv(s); }, target, lo, hi, 1e-15);
        return std::exp(t);
    }
    std::optional<double> density(double u) const override {
        if (u < 1.0) return 0.0;
        const double t = std::log(u);
        return std::pow(u, -a_ - 1.0) * (a_ * (2.0 + std::cos(t)) + std::sin(t)) / 3.0;
    }
    double upper_endpoint() const override { return kInf; }
    double lower_support() const override { return 1.0; }
    MdaClass mda_class() const override { return MdaClass::ORegVarying; }
    double mda_index() const override { return a_; }
    double tail_scale(double u) const override { return std::max(u, 1.0); }
    std::vector<double> breaks() const override { return {1.0}; }

private:
    double a_;
};

class PointMassImpl final : public LawImpl {
public:
    explicit PointMassImpl(double x) : x_(x) {}
    double survival(double u) const override { return u < x_ ? 1.0 : 0.0; }
    double survival_quantile(double q) const override { return q >= 1.0 ? 0.0 : x_; }
    std::optional<double> density(double) const override { return std::nullopt; }
    std::vector<Atom> atoms() const override { return {{x_, 1.0}}; }
    double upper_endpoint() const override { return x_; }
    double lower_support() const override { return x_; }
    MdaClass mda_class() const override { return MdaClass::Unknown; }
    double tail_scale(double) const override { return x_; }

private:
    double x_;
};

// R ~ Beta(a,b) on [0,1]; F_bar(1-x) ~ c x^b at the endpoint.
class BetaEndpointImpl final : public LawImpl {
public:
    BetaEndpointImpl(double a, double b) : a_(a), b_(b) {}
    double survival(double u) const override {
        if (u <= 0) return 1.0;
        if (u >= 1) return 0.0;
        return boost::math::ibeta(b_, a_, 1.0 - u);
    }
    double survival_quantile(double q) const override {
        if (q >= 1.0) return 0.0;
        if (q <= 0.0) return 1.0;
        return 1.0 - boost::math::ibeta_inv(b_, a_, q);
    }
    std::optional<double> density(double u) const override {
        if (u <= 0 || u >= 1) return 0.0;
        return boost::math::ibeta_derivative(a_, b_, u);
    }
    double upper_endpoint() const override { return 1.0; }
    MdaClass mda_class() const override { return MdaClass::Weibull; }
    double mda_index() const override { return b_; }
    double tail_scale(double u) const override { return std::max(1.0 - u, 1e-300); }

private:
    double a_, b_;
};

struct CarnalTable {
    double x0, p0, lam0, h;
    std::vector<double> lnx;  // ln x at lam0 + k h
};

class CarnalImpl final : public LawImpl {
public:
    CarnalImpl(CarnalSpec spec, CarnalTable table, bool decaying)
        : spec_(std::move(spec)), tab_(std::move(table)), decaying_(decaying) {}

    double eps_at(double lam) const { return spec_.epsilon(std::exp(lam)); }

    // ln x as a function of Lambda = -ln F_bar
    double lnx_of(double lam) const {
        const double k = (lam - tab_.lam0) / tab_.h;
        std::size_t i = static_cast<std::size_t>(std::max(0.0, std::floor(k)));
        if (i >= tab_.lnx.size() - 1) i = tab_.lnx.size() - 2;
        const double l0 = tab_.lam0 + static_cast<double>(i) * tab_.h;
        return tab_.lnx[i] + numeric::gauss_legendre8([this](double s) { return eps_at(s); }, l0, lam);
    }

    double lam_of(double x) const {
        const double target = std::log(x);
        // binary search in the table
        auto it = std::upper_bound(tab_.lnx.begin(), tab_.lnx.end(), target);
        if (it == tab_.lnx.end()) return lam_max();
        std::size_t j = static_cast<std::size_t>(it - tab_.lnx.begin());
        if (j == 0) return tab_.lam0;
        const double lo = tab_.lam0 + static_cast<double>(j - 1) * tab_.h;
        const double hi = lo + tab_.h;
        return numeric::solve_monotone([this](double l) { return lnx_of(l); }, target, lo, hi, 1e-15);
    }

    double lam_max() const { return tab_.lam0 + static_cast<double>(tab_.lnx.size() - 1) * tab_.h; }

    double survival(double u) const override {
        if (u <= 0) return 1.0;
        if (u < tab_.x0) return 1.0 - (1.0 - tab_.p0) * u / tab_.x0;
        if (std::log(u) >= tab_.lnx.back()) return 0.0;
        return std::exp(-lam_of(u));
    }
    double survival_quantile(double q) const override {
        if (q >= 1.0) return 0.0;
        if (q >= tab_.p0) return tab_.x0 * (1.0 - q) / (1.0 - tab_.p0);
        if (q <= 0.0) return kInf;
        const double lam = -std::log(q);
        if (lam >= lam_max()) return std::exp(tab_.lnx.back());
        return std::exp(lnx_of(lam));
    }
    std::optional<double> density(double u) const override {
        if (u <= 0) return 0.0;
        if (u < tab_.x0) return (1.0 - tab_.p0) / tab_.x0;
        const double s = survival(u);
        if (s <= 0) return 0.0;
        return s / (u * spec_.epsilon(1.0 / s));
    }
    double upper_endpoint() const override { return kInf; }
    MdaClass mda_class() const override { return decaying_ ? MdaClass::Gumbel : MdaClass::Unknown; }
    std::optional<double> declared_w(double u) const override {
        if (!decaying_) return std::nullopt;
        const double s = survival(u);
        return 1.0 / (u * spec_.epsilon(1.0 / s));
    }
    double tail_scale(double u) const override {
        if (u < tab_.x0) return tab_.x0;
        const double s = survival(u);
        if (s <= 0) return u;
        return u * spec_.epsilon(1.0 / s);
    }
    std::vector<double> breaks() const override { return {tab_.x0}; }
    double eta(double s) const {
        const double sv = survival(s);
        return spec_.epsilon(1.0 / sv);
    }

private:
    CarnalSpec spec_;
    CarnalTable tab_;
    bool decaying_;
};

}  // namespace

const char* to_string(Family f) {
    switch (f) {
        case Family::Exponential: return "exponential";
        case Family::WeibullTail: return "weibull";
        case Family::TruncatedExample1: return "example1";
        case Family::Pareto: return "pareto";
        case Family::LogSlowlyVarying: return "logsv";
        case Family::OscillatingORV: return "orv";
        case Family::PointMass: return "pointmass";
        case Family::CarnalConstructed: return "carnal";
        case Family::BetaEndpoint: return "beta";
    }
    return "unknown";
}

const char* to_string(MdaClass c) {
    switch (c) {
        case MdaClass::Gumbel: return "gumbel";
        case MdaClass::Frechet: return "frechet";
        case MdaClass::Weibull: return "weibull";
        case MdaClass::ORegVarying: return "orv";
        case MdaClass::Unknown: return "unknown";
    }
    return "unknown";
}

Family family_from_string(const std::string& name) {
    static const std::map<std::string, Family> names = {
        {"exponential", Family::Exponential},     {"exp", Family::Exponential},
        {"weibull", Family::WeibullTail},         {"weibulltail", Family::WeibullTail},
        {"example1", Family::TruncatedExample1},  {"truncatedexample1", Family::TruncatedExample1},
        {"pareto", Family::Pareto},               {"logsv", Family::LogSlowlyVarying},
        {"logslowlyvarying", Family::LogSlowlyVarying}, {"orv", Family::OscillatingORV},
        {"oscillatingorv", Family::OscillatingORV}, {"pointmass", Family::PointMass},
        {"carnal", Family::CarnalConstructed},    {"carnalconstructed", Family::CarnalConstructed},
        {"beta", Family::BetaEndpoint},           {"betaendpoint", Family::BetaEndpoint},
    };
    std::string key;
    for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    auto it = names.find(key);
    if (it == names.end()) fail(ErrorKind::Validation, "unknown law family '" + name + "'");
    return it->second;
}

RadialLaw::RadialLaw(Family family, ParamMap params, std::shared_ptr<const LawImpl> impl, std::string label)
    : family_(family), params_(std::move(params)), impl_(std::move(impl)), label_(std::move(label)) {}

double RadialLaw::param(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end()) fail(ErrorKind::Validation, "law has no parameter '" + key + "'");
    return it->second;
}

double RadialLaw::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::Domain, "quantile: p must lie in [0,1]");
    return impl_->survival_quantile(1.0 - p);
}

double RadialLaw::survival_quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) fail(ErrorKind::Domain, "survival_quantile: q must lie in [0,1]");
    return impl_->survival_quantile(q);
}

bool RadialLaw::has_density() const { return impl_->atoms().empty(); }

double RadialLaw::density(double u) const {
    auto d = impl_->density(u);
    if (!d) fail(ErrorKind::Domain, std::string(to_string(family_)) + " law has no density");
    return *d;
}

std::string RadialLaw::params_string() const {
    std::ostringstream os;
    bool first = true;
    if (!label_.empty()) {
        os << "eps=" << label_;
        first = false;
    }
    for (const auto& [k, v] : params_) {
        if (!first) os << ';';
        char buf[32];
        auto r = std::to_chars(buf, buf + sizeof buf, v);
        os << k << '=' << std::string_view(buf, r.ptr - buf);
        first = false;
    }
    return os.str();
}

std::string RadialLaw::spec_string() const {
    std::string ps = params_string();
    for (char& c : ps)
        if (c == ';') c = ',';
    return std::string(to_string(family_)) + (ps.empty() ? "" : ":" + ps);
}

RadialLaw make_law(Family family, const ParamMap& p) {
    switch (family) {
        case Family::Exponential: {
            check_keys(p, "exponential", {"lambda"});
            const double l = get(p, "lambda", 1.0);
            if (!(l > 0)) bad_param("exponential", "lambda", "must be > 0");
            return RadialLaw(family, {{"lambda", l}}, std::make_shared<ExponentialImpl>(l));
        }
        case Family::WeibullTail: {
            check_keys(p, "weibull", {"r", "theta", "c", "gamma"});
            const double r = require(p, "weibull", "r");
            const double t = require(p, "weibull", "theta");
            const double c = get(p, "c", 0.0);
            const double g = get(p, "gamma", -0.5);
            if (!(r > 0)) bad_param("weibull", "r", "must be > 0");
            if (!(t > 0)) bad_param("weibull", "theta", "must be > 0");
            if (!(c >= 0)) bad_param("weibull", "c", "must be >= 0");
            if (!(g > -1 && g < 0)) bad_param("weibull", "gamma", "must lie in (-1,0)");
            ParamMap echo{{"r", r}, {"theta", t}};
            if (c > 0) {
                echo["c"] = c;
                echo["gamma"] = g;
            }
            return RadialLaw(family, echo, std::make_shared<WeibullTailImpl>(r, t, c, g));
        }
        case Family::TruncatedExample1: {
            check_keys(p, "example1", {"a", "b"});
            const double a = require(p, "example1", "a");
            const double b = require(p, "example1", "b");
            if (!(a > 0)) bad_param("example1", "a", "must be > 0");
            if (!(b > 0)) bad_param("example1", "b", "must be > 0");
            return RadialLaw(family, {{"a", a}, {"b", b}}, std::make_shared<Example1Impl>(a, b));
        }
        case Family::Pareto: {
            check_keys(p, "pareto", {"alpha", "xm"});
            const double a = require(p, "pareto", "alpha");
            const double xm = get(p, "xm", 1.0);
            if (!(a > 0)) bad_param("pareto", "alpha", "must be > 0");
            if (!(xm > 0)) bad_param("pareto", "xm", "must be > 0");
            ParamMap echo{{"alpha", a}};
            if (xm != 1.0) echo["xm"] = xm;
            return RadialLaw(family, echo, std::make_shared<ParetoImpl>(a, xm));
        }
        case Family::LogSlowlyVarying: {
            check_keys(p, "logsv", {"alpha", "beta"});
            const double a = get(p, "alpha", 0.0);
            const double b = require(p, "logsv", "beta");
            if (!(a >= 0)) bad_param("logsv", "alpha", "must be >= 0");
            if (!(b > 0)) bad_param("logsv", "beta", "must be > 0");
            return RadialLaw(family, {{"alpha", a}, {"beta", b}}, std::make_shared<LogSvImpl>(a, b));
        }
        case Family::OscillatingORV: {
            check_keys(p, "orv", {"alpha"});
            const double a = require(p, "orv", "alpha");
            if (!(a > 1.0 / std::sqrt(3.0))) bad_param("orv", "alpha", "must exceed 1/sqrt(3) for monotonicity");
            return RadialLaw(family, {{"alpha", a}}, std::make_shared<OscOrvImpl>(a));
        }
        case Family::PointMass: {
            check_keys(p, "pointmass", {"x"});
            const double x = get(p, "x", 1.0);
            if (!(x > 0)) bad_param("pointmass", "x", "must be > 0");
            return RadialLaw(family, {{"x", x}}, std::make_shared<PointMassImpl>(x));
        }
        case Family::BetaEndpoint: {
            check_keys(p, "beta", {"a", "b"});
            const double a = require(p, "beta", "a");
            const double b = require(p, "beta", "b");
            if (!(a > 0)) bad_param("beta", "a", "must be > 0");
            if (!(b > 0)) bad_param("beta", "b", "must be > 0");
            return RadialLaw(family, {{"a", a}, {"b", b}}, std::make_shared<BetaEndpointImpl>(a, b));
        }
        case Family::CarnalConstructed:
            fail(ErrorKind::Validation, "carnal laws are built with build_carnal or parse_law(\"carnal:eps=...\")");
    }
    fail(ErrorKind::Validation, "unknown family");
}

RadialLaw build_carnal(const CarnalSpec& spec, const std::vector<double>& grid) {
    if (!spec.epsilon) fail(ErrorKind::Validation, "carnal: epsilon function is required");
    if (!(spec.x0 > 0)) bad_param("carnal", "x0", "must be > 0");
    const double p0 = spec.start_survival;
    if (!(p0 > 0 && p0 < 1)) bad_param("carnal", "p0", "must lie in (0,1)");

    CarnalTable tab{spec.x0, p0, -std::log(p0), 1.0 / 16.0, {}};
    tab.lnx.push_back(std::log(spec.x0));
    constexpr double kLamMax = 700.0;
    constexpr double kLnxMax = 700.0;
    const double eps_first = spec.epsilon(std::exp(tab.lam0));
    double eps_min = eps_first;
    auto eps = [&](double lam) {
        const double e = spec.epsilon(std::exp(lam));
        if (!(e > 0) || !std::isfinite(e)) {
            std::ostringstream os;
            os << "carnal: eps(s) must be positive and finite; got " << e << " at s=exp(" << lam << ")";
            fail(ErrorKind::Domain, os.str());
        }
        eps_min = std::min(eps_min, e);
        return e;
    };
    double lam = tab.lam0;
    while (lam < kLamMax && tab.lnx.back() < kLnxMax) {
        const double next = lam + tab.h;
        tab.lnx.push_back(tab.lnx.back() + numeric::gauss_legendre8(eps, lam, next));
        lam = next;
    }
    if (tab.lnx.size() < 3) fail(ErrorKind::Domain, "carnal: epsilon too large; representation range is empty");
    const double eps_last = spec.epsilon(std::exp(lam));
    const bool decaying = eps_last < eps_first * (1.0 - 1e-9);
    if (!decaying && !spec.allow_nondecaying) {
        std::ostringstream os;
        os << "carnal: eps does not decay on the probed range (eps(first)=" << eps_first
           << ", eps(last)=" << eps_last << ")";
        fail(ErrorKind::Diagnostic, os.str());
    }
    (void)eps_min;
    ParamMap echo{{"x0", spec.x0}, {"p0", p0}};
    for (const auto& [k, v] : spec.extra_params) echo[k] = v;
    auto impl = std::make_shared<CarnalImpl>(spec, std::move(tab), decaying);
    // eta(s) s must be positive at every probed grid point
    for (double s : grid) {
        if (s < spec.x0) continue;
        const double sv = impl->survival(s);
        if (sv <= 0) continue;
        const double e = impl->eta(s);
        if (!(e * s > 0)) fail(ErrorKind::Domain, "carnal: eta(s) s <= 0 on the grid");
    }
    return RadialLaw(Family::CarnalConstructed, std::move(echo), impl, spec.label);
}

double carnal_eta(const RadialLaw& law, double s) {
    const auto* c = dynamic_cast<const CarnalImpl*>(&law.impl());
    if (!c) fail(ErrorKind::Validation, "carnal_eta: law is not carnal-constructed");
    return c->eta(s);
}

}  // namespace sphull
