#pragma once

#include <functional>

namespace sphull::numeric {

// Solve g(x) = target for x in [lo, hi] where g is monotone (either
// direction). hi may be +inf; the bracket is then grown geometrically from
// lo + step. Relative tolerance on x.
double solve_monotone(const std::function<double(double)>& g, double target, double lo, double hi,
                      double rel_tol = 1e-13, double step = 1.0);

}  // namespace sphull::numeric
