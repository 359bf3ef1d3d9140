#pragma once

#include <functional>
#include <vector>

#include "sphull/numeric/integrate.hpp"
#include "sphull/radial_models.hpp"

namespace sphull {

// A positive measure on (0, upper] made of a density part and atoms.
struct Measure {
    std::function<double(double)> density;  // empty when there is no density part
    std::vector<Atom> atoms;
    double lower = 0.0;
    double upper = numeric::kInf;
    std::vector<double> breaks;
    std::function<double(double)> scale;  // tail length hint near u
};

Measure law_measure(const RadialLaw& F);
// Law of min(R1, R2): survival F_bar^2.
Measure min_measure(const RadialLaw& F);

// int_{r > u} t^e phi(r, t) dM(r), t = sqrt(r^2 - u^2).
// The density part is integrated in t, which removes the algebraic
// singularity of (r^2 - u^2)^{e/2} for e >= -1. extra_breaks are r values.
numeric::IntegralResult radial_integral(const Measure& m, double u, double e,
                                        const std::function<double(double, double)>& phi,
                                        const numeric::QuadratureSpec& spec,
                                        const std::vector<double>& extra_breaks = {});

// int_{(lo, hi]} g(r) dM(r) in the natural variable.
numeric::IntegralResult measure_integral(const Measure& m, const std::function<double(double)>& g, double lo,
                                         const numeric::QuadratureSpec& spec,
                                         const std::vector<double>& extra_breaks = {},
                                         double hi = numeric::kInf);

// r values where F_bar(r) = c/n for a geometric ladder of c; used as
// breakpoints for integrands concentrated at the n-th order statistic.
std::vector<double> level_breaks(const std::function<double(double)>& survival_quantile, double n);

}  // namespace sphull
