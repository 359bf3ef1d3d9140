#include "sphull/numeric/roots.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>

#include "sphull/error.hpp"

namespace sphull::numeric {

double solve_monotone(const std::function<double(double)>& g, double target, double lo, double hi,
                      double rel_tol, double step) {
    auto h = [&](double x) { return g(x) - target; };
    double flo = h(lo);
    if (flo == 0.0) return lo;
    if (std::isinf(hi)) {
        double s = step > 0 ? step : 1.0;
        double x = lo + s;
        double fx = h(x);
        int guard = 0;
        while ((fx > 0) == (flo > 0) && fx != 0.0) {
            lo = x;
            flo = fx;
            s *= 2.0;
            x = lo + s;
            fx = h(x);
            if (++guard > 2000 || !std::isfinite(x)) fail(ErrorKind::Domain, "solve_monotone: no bracket found");
        }
        hi = x;
    }
    double fhi = h(hi);
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) fail(ErrorKind::Domain, "solve_monotone: target not bracketed");
    std::uintmax_t iters = 400;
    auto tol = [rel_tol](double a, double b) {
        return std::fabs(a - b) <= rel_tol * std::max(std::fabs(a), std::fabs(b)) || std::fabs(a - b) < 1e-300;
    };
    auto r = boost::math::tools::toms748_solve(h, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace sphull::numeric
