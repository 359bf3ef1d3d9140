#include "sphull/measure.hpp"

#include <algorithm>
#include <cmath>

namespace sphull {

Measure law_measure(const RadialLaw& F) {
    Measure m;
    if (F.has_density()) m.density = [F](double r) { return F.density(r); };
    m.atoms = F.atoms();
    m.lower = F.lower_support();
    m.upper = F.upper_endpoint();
    m.breaks = F.breaks();
    m.scale = [F](double u) { return F.tail_scale(u); };
    return m;
}

Measure min_measure(const RadialLaw& F) {
    Measure m;
    if (F.has_density()) m.density = [F](double r) { return 2.0 * F.survival(r) * F.density(r); };
    for (const Atom& a : F.atoms()) {
        const double right = F.survival(a.x);
        const double left = right + a.mass;
        m.atoms.push_back({a.x, left * left - right * right});
    }
    m.lower = F.lower_support();
    m.upper = F.upper_endpoint();
    m.breaks = F.breaks();
    m.scale = [F](double u) { return 0.5 * F.tail_scale(u); };
    return m;
}

numeric::IntegralResult radial_integral(const Measure& m, double u, double e,
                                        const std::function<double(double, double)>& phi,
                                        const numeric::QuadratureSpec& spec,
                                        const std::vector<double>& extra_breaks) {
    numeric::IntegralResult total;
    for (const Atom& a : m.atoms) {
        if (a.x > u) {
            const double t = std::sqrt((a.x - u) * (a.x + u));
            total.value += std::pow(t, e) * phi(a.x, t) * a.mass;
        }
    }
    if (!m.density) return total;
    const double r0 = std::max(u, m.lower);
    if (!(m.upper > r0)) return total;
    auto t_of = [u](double r) { return std::sqrt(std::max(0.0, (r - u) * (r + u))); };
    const double t0 = t_of(r0);
    const double t1 = std::isinf(m.upper) ? numeric::kInf : t_of(m.upper);
    numeric::IntegrateOptions opts;
    for (double b : m.breaks)
        if (b > r0 && b < m.upper) opts.breaks.push_back(t_of(b));
    for (double b : extra_breaks)
        if (b > r0 && b < m.upper) opts.breaks.push_back(t_of(b));
    const double sr = m.scale ? m.scale(r0) : 1.0;
    if (std::isinf(t1)) {
        opts.scale = std::sqrt(sr * (2.0 * r0 + sr)) - t0;
        if (!(opts.scale > 0)) opts.scale = std::max(1.0, t0);
        // resolve the region just above r0 where the tail mass sits
        for (double k : {0.25, 1.0, 4.0, 16.0}) opts.breaks.push_back(t_of(r0 + k * sr));
        if (u == 0.0 && t0 == 0.0) opts.end_map = numeric::EndMap::None;
    } else {
        opts.end_map = numeric::EndMap::Right;
        for (double k : {0.25, 1.0, 4.0})
            if (r0 + k * sr < m.upper) opts.breaks.push_back(t_of(r0 + k * sr));
    }
    auto f = [&](double t) {
        const double r = u == 0.0 ? t : std::sqrt(u * u + t * t);
        if (r <= r0 || r >= m.upper) return 0.0;
        const double dens = m.density(r);
        if (dens == 0.0) return 0.0;
        const double jac = u == 0.0 ? 1.0 : t / r;
        return std::pow(t, e) * phi(r, t) * dens * jac;
    };
    auto res = numeric::integrate(f, t0, t1, spec, opts);
    total.value += res.value;
    total.abs_error += res.abs_error;
    total.evaluations += res.evaluations;
    return total;
}

numeric::IntegralResult measure_integral(const Measure& m, const std::function<double(double)>& g, double lo,
                                         const numeric::QuadratureSpec& spec,
                                         const std::vector<double>& extra_breaks, double hi) {
    numeric::IntegralResult total;
    for (const Atom& a : m.atoms)
        if (a.x > lo && a.x <= hi) total.value += g(a.x) * a.mass;
    if (!m.density) return total;
    const double r0 = std::max(lo, m.lower);
    const double r1 = std::min(hi, m.upper);
    if (!(r1 > r0)) return total;
    numeric::IntegrateOptions opts;
    for (double b : m.breaks) opts.breaks.push_back(b);
    for (double b : extra_breaks) opts.breaks.push_back(b);
    if (std::isinf(r1)) {
        opts.scale = m.scale ? m.scale(r0) : 1.0;
        if (!(opts.scale > 0) || !std::isfinite(opts.scale)) opts.scale = 1.0;
    } else if (r1 == m.upper) {
        opts.end_map = numeric::EndMap::Right;
    }
    auto f = [&](double r) { return g(r) * m.density(r); };
    auto res = numeric::integrate(f, r0, r1, spec, opts);
    total.value += res.value;
    total.abs_error += res.abs_error;
    total.evaluations += res.evaluations;
    return total;
}

std::vector<double> level_breaks(const std::function<double(double)>& survival_quantile, double n) {
    std::vector<double> out;
    for (double c : {1e-4, 1e-3, 1e-2, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 1e3, 1e4}) {
        const double q = c / n;
        if (q >= 1.0) continue;
        const double x = survival_quantile(q);
        if (std::isfinite(x)) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sphull
