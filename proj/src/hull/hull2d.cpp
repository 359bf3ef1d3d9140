#include <algorithm>
#include <cmath>
#include <numeric>

#include "sphull/error.hpp"
#include "sphull/hull/predicates.hpp"
#include "sphull/hull_engine.hpp"

namespace sphull {

namespace {

using hull::orient2d;

// Akl-Toussaint: drop points strictly inside the polygon spanned by the
// extremes in eight directions.
std::vector<std::size_t> prefilter(const PointCloud& c) {
    const std::size_t n = c.n;
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (n < 64) return all;
    const double dirs[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    std::size_t ext[8];
    double best[8];
    for (int k = 0; k < 8; ++k) {
        ext[k] = 0;
        best[k] = -HUGE_VAL;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = c.row(i);
        for (int k = 0; k < 8; ++k) {
            const double v = dirs[k][0] * p[0] + dirs[k][1] * p[1];
            if (v > best[k]) {
                best[k] = v;
                ext[k] = i;
            }
        }
    }
    std::vector<std::size_t> poly;
    for (int k = 0; k < 8; ++k)
        if (poly.empty() || (ext[k] != poly.back() && ext[k] != poly.front())) poly.push_back(ext[k]);
    if (poly.size() < 3) return all;
    // the extremes come in counterclockwise angular order; they must form a
    // strictly convex polygon for the inside test to be sound
    const std::size_t m = poly.size();
    for (std::size_t k = 0; k < m; ++k)
        if (orient2d(c.row(poly[k]), c.row(poly[(k + 1) % m]), c.row(poly[(k + 2) % m])) <= 0) return all;
    std::vector<std::size_t> keep;
    keep.reserve(n / 8 + 16);
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = c.row(i);
        bool inside = true;
        for (std::size_t k = 0; k < m && inside; ++k)
            inside = orient2d(c.row(poly[k]), c.row(poly[(k + 1) % m]), p) > 0;
        if (!inside) keep.push_back(i);
    }
    return keep;
}

}  // namespace

HullStats hull2d(const PointCloud& c) {
    if (c.d != 2) fail(ErrorKind::Validation, "hull2d needs d=2");
    HullStats s;
    s.perimeter = 0.0;
    if (c.n == 0) return s;
    std::vector<std::size_t> idx = prefilter(c);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double* p = c.row(a);
        const double* q = c.row(b);
        if (p[0] != q[0]) return p[0] < q[0];
        if (p[1] != q[1]) return p[1] < q[1];
        return a < b;
    });
    // drop exact duplicates, keeping the lowest index
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](std::size_t a, std::size_t b) {
                              return c.row(a)[0] == c.row(b)[0] && c.row(a)[1] == c.row(b)[1];
                          }),
              idx.end());
    const std::size_t m = idx.size();
    if (m == 1) {
        s.v_n = 1;
        s.vertices = {idx[0]};
        return s;
    }
    std::vector<std::size_t> h(2 * m);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
        while (k >= 2 && orient2d(c.row(h[k - 2]), c.row(h[k - 1]), c.row(idx[i])) <= 0) --k;
        h[k++] = idx[i];
    }
    for (std::size_t i = m - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient2d(c.row(h[k - 2]), c.row(h[k - 1]), c.row(idx[i])) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1);
    const std::size_t v = h.size();
    double area2 = 0, per = 0;
    for (std::size_t i = 0; i < v; ++i) {
        const double* p = c.row(h[i]);
        const double* q = c.row(h[(i + 1) % v]);
        area2 += p[0] * q[1] - p[1] * q[0];
        per += std::hypot(q[0] - p[0], q[1] - p[1]);
    }
    s.v_n = v;
    s.f_n = v;
    s.area = 0.5 * std::fabs(area2);
    s.volume = s.area;
    // a collinear cloud gives v=2 and twice the segment length
    s.perimeter = per;
    s.vertices = h;
    std::sort(s.vertices.begin(), s.vertices.end());
    return s;
}

}  // namespace sphull
