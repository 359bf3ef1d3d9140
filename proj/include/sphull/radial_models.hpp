#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sphull {

enum class Family {
    Exponential,
    WeibullTail,
    TruncatedExample1,
    Pareto,
    LogSlowlyVarying,
    OscillatingORV,
    PointMass,
    CarnalConstructed,
    BetaEndpoint,
};

enum class MdaClass { Gumbel, Frechet, Weibull, ORegVarying, Unknown };

const char* to_string(Family f);
const char* to_string(MdaClass c);
Family family_from_string(const std::string& name);

using ParamMap = std::map<std::string, double>;

struct Atom {
    double x;
    double mass;
};

// Interface implemented by every family. Methods must be pure: instances
// are shared between threads.
class LawImpl {
public:
    virtual ~LawImpl() = default;
    virtual double survival(double u) const = 0;
    // Inverse of the survival function: smallest x with F_bar(x) <= q.
    virtual double survival_quantile(double q) const = 0;
    virtual std::optional<double> density(double u) const = 0;
    virtual std::vector<Atom> atoms() const { return {}; }
    virtual double upper_endpoint() const = 0;
    virtual double lower_support() const { return 0.0; }
    virtual MdaClass mda_class() const = 0;
    // Positive-magnitude index: F_bar RV with index -ind (Frechet) or
    // F_bar(1 - x/u)/F_bar(1 - 1/u) -> x^ind (Weibull). 0 otherwise.
    virtual double mda_index() const { return 0.0; }
    virtual std::optional<double> declared_w(double) const { return std::nullopt; }
    // Characteristic tail length near u, used only as a quadrature hint.
    virtual double tail_scale(double u) const = 0;
    virtual std::vector<double> breaks() const { return {}; }
};

class RadialLaw {
public:
    RadialLaw() = default;
    RadialLaw(Family family, ParamMap params, std::shared_ptr<const LawImpl> impl, std::string label = {});

    Family family() const { return family_; }
    const ParamMap& params() const { return params_; }
    double param(const std::string& key) const;
    const std::string& label() const { return label_; }

    double survival(double u) const { return impl_->survival(u); }
    double cdf(double u) const { return 1.0 - impl_->survival(u); }
    // F^{-1}(p) = inf{x : F(x) >= p}
    double quantile(double p) const;
    double survival_quantile(double q) const;
    bool has_density() const;
    double density(double u) const;
    std::vector<Atom> atoms() const { return impl_->atoms(); }
    double upper_endpoint() const { return impl_->upper_endpoint(); }
    double lower_support() const { return impl_->lower_support(); }
    MdaClass mda_class() const { return impl_->mda_class(); }
    double mda_index() const { return impl_->mda_index(); }
    std::optional<double> declared_w(double u) const { return impl_->declared_w(u); }
    double tail_scale(double u) const { return impl_->tail_scale(u); }
    std::vector<double> breaks() const { return impl_->breaks(); }

    // Canonical "family:key=value,..." form.
    std::string spec_string() const;
    // Semicolon-free parameter echo "key=value;key=value" for CSV cells.
    std::string params_string() const;

    const LawImpl& impl() const { return *impl_; }

private:
    Family family_ = Family::PointMass;
    ParamMap params_;
    std::shared_ptr<const LawImpl> impl_;
    std::string label_;
};

RadialLaw make_law(Family family, const ParamMap& params);

// Parse "family:key=value,key=value". Carnal presets use "carnal:eps=inv_log".
RadialLaw parse_law(const std::string& spec);

struct CarnalSpec {
    std::function<double(double)> epsilon;  // s -> eps(s), s = 1/F_bar
    double x0 = 1.0;                         // representation starts at x0
    double start_survival = 0.36787944117144233;  // F_bar(x0)
    bool allow_nondecaying = false;
    std::string label = "custom";
    ParamMap extra_params;  // echoed in params_string
};

// eta(s) = eps(1/F_bar(s)) for a built law.
double carnal_eta(const RadialLaw& law, double s);

RadialLaw build_carnal(const CarnalSpec& spec, const std::vector<double>& grid);

}  // namespace sphull
