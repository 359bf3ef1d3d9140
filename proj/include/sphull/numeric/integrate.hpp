#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace sphull::numeric {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    std::size_t max_nodes = 1000000;

    void validate() const;
    QuadratureSpec tail() const {
        QuadratureSpec s = *this;
        s.abs_tol = 0.0;
        return s;
    }
};

struct IntegralResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    bool roundoff_limited = false;  // stopped on a noise floor above the target
};

using Integrand = std::function<double(double)>;

// Change of variables applied to the end segments of a finite range.
// Right maps the last segment [c,b] by x = b - (b-c) e^{-s}, which tames
// integrable endpoint singularities and essential-singularity tails.
enum class EndMap { None, Left, Right, Both };

struct IntegrateOptions {
    std::vector<double> breaks;  // interior split points, any order
    double scale = 0.0;          // length scale for a semi-infinite range
    EndMap end_map = EndMap::None;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Global adaptive Gauss-Kronrod (10/21) over [a,b]; b may be +inf.
// Throws QuadratureFailure when the node budget is exhausted.
// If the error estimate stalls under repeated subdivision (a noise floor),
// returns early with roundoff_limited set.
IntegralResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                         const IntegrateOptions& opts = {});

// Fixed Gauss-Legendre rule on [a,b] with n in {8}.
double gauss_legendre8(const Integrand& f, double a, double b);

}  // namespace sphull::numeric
