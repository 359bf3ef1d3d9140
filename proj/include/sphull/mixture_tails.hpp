#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphull/evt_core.hpp"
#include "sphull/measure.hpp"
#include "sphull/numeric/integrate.hpp"
#include "sphull/radial_models.hpp"

namespace sphull {

struct BetaParams {
    double alpha;
    double beta;
};

// 1 - I_x(alpha, beta)
double beta_survival(BetaParams p, double x);

enum class DerivedKind { MarginalQ, MinH, AreaK, KStar };
const char* to_string(DerivedKind k);

// Laws derived from F by the mixture and integral transforms. Survival and
// density are evaluated by quadrature on demand; instances are immutable.
class DerivedLaw {
public:
    DerivedLaw(DerivedKind kind, RadialLaw base, int d, const numeric::QuadratureSpec& spec);

    DerivedKind kind() const { return kind_; }
    const RadialLaw& base() const { return base_; }
    int d() const { return d_; }
    std::optional<double> mu() const { return mu_; }
    const numeric::QuadratureSpec& spec() const { return spec_; }
    double upper_endpoint() const { return base_.upper_endpoint(); }

    numeric::IntegralResult survival_detailed(double u) const;
    double survival(double u) const { return survival_detailed(u).value; }
    // MarginalQ: q_d; MinH: h; AreaK: |dK_bar/ds|; KStar: n*
    double density(double u) const;
    // u with survival(u) = q
    double survival_quantile(double q) const;

    MdaClass mda_class() const;
    double mda_index() const;

private:
    DerivedKind kind_;
    RadialLaw base_;
    int d_;
    numeric::QuadratureSpec spec_;
    Measure measure_;
    std::optional<double> mu_;
};

DerivedLaw marginal_law(const RadialLaw& F, int d, const numeric::QuadratureSpec& spec = {});
DerivedLaw min_h_law(const RadialLaw& F, const numeric::QuadratureSpec& spec = {});
DerivedLaw area_k_law(const RadialLaw& F, const numeric::QuadratureSpec& spec = {});
DerivedLaw kstar_law(const RadialLaw& F, const numeric::QuadratureSpec& spec = {});

TailFunction tail_of(const DerivedLaw& L);

// One-sided marginal survival P(X_1 > u).
double marginal_survival_Qd(const RadialLaw& F, int d, double u, const numeric::QuadratureSpec& spec = {});
double marginal_density_qd(const RadialLaw& F, int d, double x, const numeric::QuadratureSpec& spec = {});
double h_survival(const RadialLaw& F, double u, const numeric::QuadratureSpec& spec = {});
double h_density(const RadialLaw& F, double u, const numeric::QuadratureSpec& spec = {});
double k_survival(const RadialLaw& F, double s, const numeric::QuadratureSpec& spec = {});
// |dK_bar/ds|
double k_density(const RadialLaw& F, double s, const numeric::QuadratureSpec& spec = {});

// J(s) = int_{y>s} sqrt(y^2 - s^2) dF(y)
numeric::IntegralResult sqrt_transform(const RadialLaw& F, double s, const numeric::QuadratureSpec& spec);
// I(s) = int_{y>s} (y^2 - s^2)^{-1/2} dF(y)
numeric::IntegralResult inv_sqrt_transform(const RadialLaw& F, double s, const numeric::QuadratureSpec& spec);

// E[R^p] finite
bool moment_exists(const RadialLaw& F, double p);
double mean_radius(const RadialLaw& F, const numeric::QuadratureSpec& spec = {});

// F_bar(x) = (2 mu/pi) int_x (y^2 - x^2)^{-1/2} n*(y) dy
numeric::IntegralResult abel_invert(const DerivedLaw& kstar, double x);

enum class TransferRegime { Gumbel, Frechet, Weibull };
const char* to_string(TransferRegime r);

struct TransferItem {
    std::string name;
    double predicted;
    double quadrature;
    double ratio;  // quadrature / predicted
    std::string note;
};

struct TransferReport {
    TransferRegime regime;
    int d;
    double u;
    double w = 0;  // Gumbel only
    std::vector<TransferItem> items;
    const TransferItem& at(const std::string& name) const;
};

// Constant of the one-sided Gumbel marginal equivalent 2^{(d-3)/2} Gamma(d/2)/sqrt(pi).
double gumbel_marginal_constant(int d);
// Two-sided (|X| tail) constants of the product transfer for Frechet and
// Weibull tails, positive-magnitude index.
double frechet_marginal_constant(int d, double gamma);
double frechet_h_constant(double gamma);
double weibull_marginal_constant(int d, double gamma);

TransferReport transfer_constants(const RadialLaw& F, int d, TransferRegime regime, double u,
                                  const numeric::QuadratureSpec& spec = {},
                                  ScalingSource src = ScalingSource::Declared);

}  // namespace sphull
