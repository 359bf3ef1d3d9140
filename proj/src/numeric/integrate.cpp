#include "sphull/numeric/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "sphull/error.hpp"

namespace sphull::numeric {

namespace {

constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208735646326, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

enum class PieceKind { Linear, ExpRight, ExpLeft, SemiInf };

// A piece maps t in [0,1] (or [0,1) for unbounded maps) onto a subrange of x.
struct Piece {
    PieceKind kind;
    double x0;
    double x1;  // unused for SemiInf
    double len;  // SemiInf length scale
};

struct Mapped {
    double x;
    double jac;
};

Mapped map_point(const Piece& p, double t) {
    switch (p.kind) {
        case PieceKind::Linear:
            return {p.x0 + (p.x1 - p.x0) * t, p.x1 - p.x0};
        case PieceKind::ExpRight: {
            // x = x1 - (x1-x0) e^{-s}, s = t/(1-t)
            const double om = 1.0 - t;
            const double s = t / om;
            const double e = std::exp(-s);
            return {p.x1 - (p.x1 - p.x0) * e, (p.x1 - p.x0) * e / (om * om)};
        }
        case PieceKind::ExpLeft: {
            const double om = 1.0 - t;
            const double s = t / om;
            const double e = std::exp(-s);
            return {p.x0 + (p.x1 - p.x0) * e, (p.x1 - p.x0) * e / (om * om)};
        }
        case PieceKind::SemiInf: {
            const double om = 1.0 - t;
            return {p.x0 + p.len * t / om, p.len / (om * om)};
        }
    }
    return {0.0, 0.0};
}

struct Segment {
    std::size_t piece;
    double t0, t1;
    double value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

struct Evaluator {
    const Integrand& f;
    const std::vector<Piece>& pieces;
    std::size_t evals = 0;

    double g(std::size_t pi, double t) {
        const Piece& p = pieces[pi];
        const Mapped m = map_point(p, t);
        ++evals;
        if (m.jac == 0.0 || !std::isfinite(m.jac)) return 0.0;
        const double v = f(m.x);
        if (!std::isfinite(v)) return 0.0;
        const double r = v * m.jac;
        return std::isfinite(r) ? r : 0.0;
    }

    void rule(Segment& s) {
        const double c = 0.5 * (s.t0 + s.t1);
        const double h = 0.5 * (s.t1 - s.t0);
        double fv1[10], fv2[10];
        const double fc = g(s.piece, c);
        double resk = fc * wgk[10];
        double resg = 0.0;
        double resabs = std::fabs(resk);
        for (int j = 0; j < 10; ++j) {
            const double dx = h * xgk[j];
            fv1[j] = g(s.piece, c - dx);
            fv2[j] = g(s.piece, c + dx);
            const double sum = fv1[j] + fv2[j];
            resk += wgk[j] * sum;
            resabs += wgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
            if (j % 2 == 1) resg += wg[j / 2] * sum;
        }
        const double mean = resk * 0.5;
        double resasc = wgk[10] * std::fabs(fc - mean);
        for (int j = 0; j < 10; ++j)
            resasc += wgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
        const double ah = std::fabs(h);
        resk *= h;
        resg *= h;
        resabs *= ah;
        resasc *= ah;
        double err = std::fabs(resk - resg);
        if (resasc != 0.0 && err != 0.0)
            err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
            err = std::max(50.0 * kEps * resabs, err);
        s.value = resk;
        s.error = err;
    }
};

std::vector<Piece> build_pieces(double a, double b, const IntegrateOptions& opts) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double x : opts.breaks)
        if (std::isfinite(x) && x > a && x < b) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<Piece> pieces;
    if (std::isinf(b)) {
        double scale = opts.scale > 0.0 ? opts.scale : std::max(1.0, std::fabs(pts.back()));
        double last = pts.back();
        std::vector<double> geo;
        double step = scale;
        for (int k = 0; k < 12; ++k) {
            geo.push_back(last + step);
            step *= 4.0;
        }
        for (double x : geo) pts.push_back(x);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            pieces.push_back({PieceKind::Linear, pts[i], pts[i + 1], 0.0});
        if (opts.end_map == EndMap::Left || opts.end_map == EndMap::Both)
            pieces.front().kind = PieceKind::ExpLeft;
        const double tail_len = pts.back() - pts[pts.size() - 2];
        pieces.push_back({PieceKind::SemiInf, pts.back(), kInf, tail_len});
        return pieces;
    }
    pts.push_back(b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        pieces.push_back({PieceKind::Linear, pts[i], pts[i + 1], 0.0});
    if (opts.end_map == EndMap::Right || opts.end_map == EndMap::Both)
        pieces.back().kind = PieceKind::ExpRight;
    if (opts.end_map == EndMap::Left || opts.end_map == EndMap::Both) {
        if (pieces.size() == 1 && opts.end_map == EndMap::Both) {
            const double mid = 0.5 * (a + b);
            pieces = {{PieceKind::ExpLeft, a, mid, 0.0}, {PieceKind::ExpRight, mid, b, 0.0}};
        } else {
            pieces.front().kind = PieceKind::ExpLeft;
        }
    }
    return pieces;
}

double neumaier_total(const std::vector<Segment>& segs, double* err_total) {
    double s = 0.0, c = 0.0, e = 0.0;
    for (const auto& seg : segs) {
        const double t = s + seg.value;
        if (std::fabs(s) >= std::fabs(seg.value))
            c += (s - t) + seg.value;
        else
            c += (seg.value - t) + s;
        s = t;
        e += seg.error;
    }
    *err_total = e;
    return s + c;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_nodes < 21)
        fail(ErrorKind::Validation, "quadrature tolerances must be positive (rel_tol, abs_tol, max_nodes)");
}

IntegralResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                         const IntegrateOptions& opts) {
    if (std::isnan(a) || std::isnan(b)) fail(ErrorKind::Domain, "integration limits are NaN");
    if (!(b > a)) return {0.0, 0.0, 0};
    if (std::isinf(a)) fail(ErrorKind::Domain, "lower integration limit must be finite");

    const std::vector<Piece> pieces = build_pieces(a, b, opts);
    Evaluator ev{f, pieces};

    std::vector<Segment> heap;
    heap.reserve(256);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        Segment s{i, 0.0, 1.0, 0.0, 0.0};
        ev.rule(s);
        heap.push_back(s);
    }
    std::make_heap(heap.begin(), heap.end());

    double err = 0.0;
    double total = neumaier_total(heap, &err);
    std::size_t iter = 0;
    int stalled = 0;
    bool roundoff = false;
    while (true) {
        // errors below the normal range carry no information
        const double tol = std::max({spec.abs_tol, spec.rel_tol * std::fabs(total), 1e-300});
        if (err <= tol) break;
        // repeated splits that leave the estimate unchanged mean the integrand is
        // noise limited and further work buys nothing
        if (stalled >= 50) {
            roundoff = true;
            break;
        }
        if (ev.evals + 42 > spec.max_nodes) {
            std::ostringstream os;
            os << "quadrature node budget " << spec.max_nodes << " exhausted; achieved error " << err
               << " vs requested " << tol;
            throw QuadratureFailure(os.str(), total, err);
        }
        std::pop_heap(heap.begin(), heap.end());
        Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.t0 + worst.t1);
        const double xm0 = map_point(pieces[worst.piece], worst.t0).x;
        const double xm1 = map_point(pieces[worst.piece], mid).x;
        if (mid <= worst.t0 || mid >= worst.t1 ||
            (std::isfinite(xm0) && xm0 == xm1 && pieces[worst.piece].kind == PieceKind::Linear)) {
            // Cannot subdivide further in floating point.
            std::ostringstream os;
            os << "quadrature interval collapsed; achieved error " << err << " vs requested " << tol;
            throw QuadratureFailure(os.str(), total, err);
        }
        Segment l{worst.piece, worst.t0, mid, 0.0, 0.0};
        Segment r{worst.piece, mid, worst.t1, 0.0, 0.0};
        ev.rule(l);
        ev.rule(r);
        const double split = l.value + r.value;
        if (l.error + r.error >= 0.99 * worst.error &&
            std::fabs(split - worst.value) <= 1e-5 * std::fabs(split))
            ++stalled;
        total += split - worst.value;
        err += (l.error + r.error) - worst.error;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end());
        if (++iter % 64 == 0) total = neumaier_total(heap, &err);
    }
    total = neumaier_total(heap, &err);
    return {total, err, ev.evals, roundoff};
}

double gauss_legendre8(const Integrand& f, double a, double b) {
    static constexpr double x[4] = {0.183434642495649804939476142360184, 0.525532409916328985817739049189246,
                                    0.796666477413626739591553936475831, 0.960289856497536231683560868569473};
    static constexpr double w[4] = {0.362683783378361982965150449277195, 0.313706645877887287337962201986601,
                                    0.222381034453374470544355994426241, 0.101228536290376259152531354309962};
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
    return s * h;
}

}  // namespace sphull::numeric
