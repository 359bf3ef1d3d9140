#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sphull/numeric/integrate.hpp"
#include "sphull/radial_models.hpp"

namespace sphull {

// A univariate survival function with the metadata the EVT routines need.
// Built from a RadialLaw or from a DerivedLaw (see mixture_tails.hpp).
struct TailFunction {
    std::string name;
    std::function<double(double)> survival;
    std::function<double(double)> survival_quantile;
    double upper = numeric::kInf;
    std::function<double(double)> scale;  // quadrature length hint
    std::vector<double> breaks;
    MdaClass mda = MdaClass::Unknown;
    double index = 0.0;
    std::function<std::optional<double>(double)> declared_w;
};

TailFunction tail_of(const RadialLaw& F);

enum class ScalingSource { Numeric, Declared };

struct MdaDescriptor {
    MdaClass mda_class = MdaClass::Unknown;
    double index = 0.0;  // positive magnitude for Frechet/Weibull
    std::function<double(double)> scaling_w;  // set for Gumbel only
    enum class Source { FamilyMetadata, NumericDetection } source = Source::FamilyMetadata;
};

MdaDescriptor describe(const TailFunction& tail, const numeric::QuadratureSpec& spec = {});

struct GumbelNorming {
    double n = 0;
    double b_n = 0;
    double a_n = 0;
    double xi = 0;
};

// w(u) = N_bar(u) / int_u^{x_N} N_bar(s) ds
double scaling_from_survival(const TailFunction& tail, double u, const numeric::QuadratureSpec& spec = {});
double scaling_from_survival(const RadialLaw& F, double u, const numeric::QuadratureSpec& spec = {});

double scaling_w(const TailFunction& tail, double u, ScalingSource src, const numeric::QuadratureSpec& spec);

GumbelNorming norming(const TailFunction& tail, double n, ScalingSource src = ScalingSource::Numeric,
                      const numeric::QuadratureSpec& spec = {});
GumbelNorming norming(const RadialLaw& F, double n, ScalingSource src = ScalingSource::Numeric,
                      const numeric::QuadratureSpec& spec = {});

struct DiagnosticRow {
    std::string check;
    double u_or_n;
    double value;
    double reference;
    double deviation;
};

struct GumbelCheckReport {
    double max_deviation = 0;  // over the residual-tail grid
    bool uw_increasing = true;
    bool endpoint_growth = true;  // (x_N - u) w(u) increasing (finite endpoint only)
    std::vector<DiagnosticRow> rows;
};

GumbelCheckReport gumbel_limit_check(const TailFunction& tail, const std::vector<double>& u_grid,
                                     const std::vector<double>& x_grid,
                                     ScalingSource src = ScalingSource::Numeric,
                                     const numeric::QuadratureSpec& spec = {});

// max over s of |w(u + s/w(u))/w(u) - 1|
double local_scaling_deviation(const TailFunction& tail, double u, const std::vector<double>& s_grid,
                               ScalingSource src = ScalingSource::Numeric,
                               const numeric::QuadratureSpec& spec = {});

enum class RvVerdict { RegularlyVarying, ORegVarying, Neither };
const char* to_string(RvVerdict v);

struct RvReport {
    RvVerdict verdict = RvVerdict::Neither;
    double index = 0.0;         // fitted positive magnitude (slope = -index)
    double slope_spread = 0.0;  // max deviation of local slopes from the fit
    struct RatioBound {
        double x, lo, hi;
    };
    std::vector<RatioBound> ratio_bounds;
};

RvReport rv_index_detect(const TailFunction& tail, const std::vector<double>& u_grid);

double weibull_index_check(const TailFunction& tail, double gamma, const std::vector<double>& u_grid,
                           const std::vector<double>& x_grid = {0.5, 2.0});

std::vector<double> log_grid(double lo, double hi, int per_decade);

}  // namespace sphull
