#include "sphull/evt_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sphull/error.hpp"

namespace sphull {

TailFunction tail_of(const RadialLaw& F) {
    TailFunction t;
    t.name = F.spec_string();
    t.survival = [F](double u) { return F.survival(u); };
    t.survival_quantile = [F](double q) { return F.survival_quantile(q); };
    t.upper = F.upper_endpoint();
    t.scale = [F](double u) { return F.tail_scale(u); };
    t.breaks = F.breaks();
    t.mda = F.mda_class();
    t.index = F.mda_index();
    t.declared_w = [F](double u) { return F.declared_w(u); };
    return t;
}

namespace {

double tail_integral(const TailFunction& tail, double u, const numeric::QuadratureSpec& spec) {
    numeric::QuadratureSpec s = spec.tail();
    s.rel_tol = std::min(spec.rel_tol, 1e-10);
    numeric::IntegrateOptions opts;
    double sc = tail.scale ? tail.scale(u) : 1.0;
    if (!(sc > 0) || !std::isfinite(sc)) sc = std::isinf(tail.upper) ? std::max(1.0, u) : (tail.upper - u);
    for (double b : tail.breaks) opts.breaks.push_back(b);
    for (double k : {0.25, 1.0, 4.0, 16.0}) opts.breaks.push_back(u + k * sc);
    if (std::isinf(tail.upper)) {
        opts.scale = sc;
    } else {
        opts.end_map = numeric::EndMap::Right;
    }
    return numeric::integrate(tail.survival, u, tail.upper, s, opts).value;
}

}  // namespace

double scaling_from_survival(const TailFunction& tail, double u, const numeric::QuadratureSpec& spec) {
    if (!(u < tail.upper)) fail(ErrorKind::Domain, "scaling_from_survival: u must lie below the upper endpoint");
    const double s0 = tail.survival(u);
    if (!(s0 > 0)) fail(ErrorKind::Domain, "scaling_from_survival: survival is zero at u");
    if (std::isinf(tail.upper)) {
        // s N_bar(s) must vanish for the tail integral to converge
        const double base = std::max(u, 1.0);
        const double far = base * std::ldexp(1.0, 100);
        const double ratio = far * tail.survival(far) / (base * tail.survival(base));
        if (ratio > 1e-3) {
            std::ostringstream os;
            os << "tail integral of " << tail.name << " diverges (heavy tail); law is not of Gumbel type";
            fail(ErrorKind::NotGumbel, os.str());
        }
    }
    const double I = tail_integral(tail, u, spec);
    if (!(I > 0)) fail(ErrorKind::Domain, "scaling_from_survival: tail integral vanished");
    return s0 / I;
}

double scaling_from_survival(const RadialLaw& F, double u, const numeric::QuadratureSpec& spec) {
    return scaling_from_survival(tail_of(F), u, spec);
}

double scaling_w(const TailFunction& tail, double u, ScalingSource src, const numeric::QuadratureSpec& spec) {
    if (src == ScalingSource::Declared && tail.declared_w) {
        if (auto w = tail.declared_w(u)) return *w;
    }
    return scaling_from_survival(tail, u, spec);
}

MdaDescriptor describe(const TailFunction& tail, const numeric::QuadratureSpec& spec) {
    MdaDescriptor d;
    d.mda_class = tail.mda;
    d.index = tail.index;
    d.source = MdaDescriptor::Source::FamilyMetadata;
    if (tail.mda == MdaClass::Gumbel) {
        TailFunction copy = tail;
        d.scaling_w = [copy, spec](double u) { return scaling_from_survival(copy, u, spec); };
    }
    return d;
}

GumbelNorming norming(const TailFunction& tail, double n, ScalingSource src, const numeric::QuadratureSpec& spec) {
    if (tail.mda != MdaClass::Gumbel)
        fail(ErrorKind::ClassMismatch, "norming: " + tail.name + " is not classified Gumbel (" +
                                           to_string(tail.mda) + ")");
    if (!(n > 1)) fail(ErrorKind::Validation, "norming: n must exceed 1");
    GumbelNorming g;
    g.n = n;
    g.b_n = tail.survival_quantile(1.0 / n);
    const double w = scaling_w(tail, g.b_n, src, spec);
    g.a_n = 1.0 / w;
    g.xi = g.b_n * w;
    return g;
}

GumbelNorming norming(const RadialLaw& F, double n, ScalingSource src, const numeric::QuadratureSpec& spec) {
    return norming(tail_of(F), n, src, spec);
}

GumbelCheckReport gumbel_limit_check(const TailFunction& tail, const std::vector<double>& u_grid,
                                     const std::vector<double>& x_grid, ScalingSource src,
                                     const numeric::QuadratureSpec& spec) {
    GumbelCheckReport rep;
    double prev_uw = -1, prev_end = -1;
    for (double u : u_grid) {
        if (!(u < tail.upper)) continue;
        const double s0 = tail.survival(u);
        if (!(s0 > 0)) continue;
        double w;
        try {
            w = scaling_w(tail, u, src, spec);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotGumbel) throw;
            // heavy tails have no Gumbel scaling; use u^{-1}, the scale at which
            // a noncollapsing residual tail would live
            w = 1.0 / u;
        }
        for (double x : x_grid) {
            const double v = tail.survival(u + x / w) / s0;
            const double ref = std::exp(-x);
            const double dev = std::fabs(v - ref);
            rep.max_deviation = std::max(rep.max_deviation, dev);
            std::ostringstream name;
            name << "residual_x=" << x;
            rep.rows.push_back({name.str(), u, v, ref, dev});
        }
        const double uw = u * w;
        rep.rows.push_back({"uw", u, uw, prev_uw, uw - prev_uw});
        if (prev_uw >= 0 && !(uw > prev_uw)) rep.uw_increasing = false;
        prev_uw = uw;
        if (std::isfinite(tail.upper)) {
            const double eg = (tail.upper - u) * w;
            rep.rows.push_back({"endpoint_growth", u, eg, prev_end, eg - prev_end});
            if (prev_end >= 0 && !(eg > prev_end)) rep.endpoint_growth = false;
            prev_end = eg;
        } else {
            for (double c : {1.5, 2.0}) {
                for (int a : {1, 2}) {
                    const double v = tail.survival(c * u) * std::pow(uw, a) / s0;
                    std::ostringstream name;
                    name << "resn_c=" << c << "_a=" << a;
                    rep.rows.push_back({name.str(), u, v, 0.0, v});
                }
            }
        }
    }
    return rep;
}

double local_scaling_deviation(const TailFunction& tail, double u, const std::vector<double>& s_grid,
                               ScalingSource src, const numeric::QuadratureSpec& spec) {
    const double w = scaling_w(tail, u, src, spec);
    double dev = 0;
    for (double s : s_grid) {
        const double v = u + s / w;
        if (!(v < tail.upper) || v <= 0) continue;
        dev = std::max(dev, std::fabs(scaling_w(tail, v, src, spec) / w - 1.0));
    }
    return dev;
}

const char* to_string(RvVerdict v) {
    switch (v) {
        case RvVerdict::RegularlyVarying: return "regularly_varying";
        case RvVerdict::ORegVarying: return "o_regularly_varying";
        case RvVerdict::Neither: return "neither";
    }
    return "neither";
}

RvReport rv_index_detect(const TailFunction& tail, const std::vector<double>& grid_in) {
    if (std::isfinite(tail.upper)) fail(ErrorKind::Domain, "rv_index_detect: requires an infinite upper endpoint");
    std::vector<double> grid;
    for (double u : grid_in)
        if (u > 0 && std::isfinite(u)) grid.push_back(u);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.size() < 4 || grid.back() / grid.front() < 100.0)
        fail(ErrorKind::InsufficientData, "rv_index_detect: grid must span at least two decades");
    const double top = grid.back();
    std::vector<double> win;
    for (double u : grid)
        if (u >= top / 100.0 * (1 - 1e-12)) win.push_back(u);
    if (win.size() < 3) fail(ErrorKind::InsufficientData, "rv_index_detect: need at least 3 points in the top two decades");

    RvReport rep;
    // ratio bounds, split into lower and upper decade of the window
    bool collapse = false;
    for (double x : {2.0, 4.0, 8.0}) {
        double lo = INFINITY, hi = 0, lo_bottom = INFINITY, lo_top = INFINITY;
        for (double u : win) {
            const double s = tail.survival(u);
            const double r = s > 0 ? tail.survival(u * x) / s : 0.0;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            if (u < top / 10.0) lo_bottom = std::min(lo_bottom, r);
            else lo_top = std::min(lo_top, r);
        }
        rep.ratio_bounds.push_back({x, lo, hi});
        if (!(lo > 0) || (std::isfinite(lo_bottom) && lo_top < 1e-3 * lo_bottom)) collapse = true;
    }
    bool finite_logs = true;
    std::vector<double> lx, ly;
    for (double u : win) {
        const double s = tail.survival(u);
        if (!(s > 0)) {
            finite_logs = false;
            break;
        }
        lx.push_back(std::log(u));
        ly.push_back(std::log(s));
    }
    if (!finite_logs || collapse) {
        rep.verdict = RvVerdict::Neither;
        return rep;
    }
    const double m = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double spread = 0;
    for (std::size_t i = 0; i + 1 < lx.size(); ++i) {
        const double loc = (ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i]);
        spread = std::max(spread, std::fabs(loc - slope));
    }
    rep.index = -slope;
    rep.slope_spread = spread;
    rep.verdict = spread <= 0.05 * std::max(1.0, std::fabs(slope)) ? RvVerdict::RegularlyVarying
                                                                    : RvVerdict::ORegVarying;
    return rep;
}

double weibull_index_check(const TailFunction& tail, double gamma, const std::vector<double>& u_grid,
                           const std::vector<double>& x_grid) {
    if (!std::isfinite(tail.upper))
        fail(ErrorKind::ClassMismatch, "weibull_index_check: requires a finite upper endpoint");
    const double xf = tail.upper;
    double dev = 0;
    for (double u : u_grid) {
        if (!(u > 1)) continue;
        const double den = tail.survival(xf * (1.0 - 1.0 / u));
        for (double x : x_grid) {
            if (!(x < u)) continue;
            const double num = tail.survival(xf * (1.0 - x / u));
            const double r = den > 0 ? num / den : INFINITY;
            const double d = std::fabs(r - std::pow(x, gamma));
            dev = std::max(dev, std::isnan(d) ? INFINITY : d);
        }
    }
    return dev;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    std::vector<double> g;
    const double step = 1.0 / per_decade;
    const double l0 = std::log10(lo), l1 = std::log10(hi);
    for (double l = l0; l <= l1 + 1e-12; l += step) g.push_back(std::pow(10.0, l));
    return g;
}

}  // namespace sphull
