#include "sphull/hull/predicates.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace sphull::hull {

namespace {

using Rat = boost::multiprecision::cpp_rational;

std::atomic<std::size_t> g_fallbacks{0};

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;


int exact_det_sign(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    int s = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            s = -s;
        }
        if (m[c][c] < 0) s = -s;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rat f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return s;
}

int exact_orient(const std::vector<const double*>& pts, int d) {
    g_fallbacks.fetch_add(1, std::memory_order_relaxed);
    std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = Rat(pts[i + 1][j]) - Rat(pts[0][j]);
    return exact_det_sign(std::move(m));
}

}  // namespace

std::size_t exact_fallbacks() { return g_fallbacks.load(); }

int orient2d(const double* a, const double* b, const double* c) {
    const double l = (b[0] - a[0]) * (c[1] - a[1]);
    const double r = (b[1] - a[1]) * (c[0] - a[0]);
    const double det = l - r;
    // Shewchuk's ccwerrboundA plus slack for the rounded differences
    const double bound = (3.0 + 16.0 * kEps) * kEps * (std::fabs(l) + std::fabs(r));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return exact_orient({a, b, c}, 2);
}

int orient3d(const double* a, const double* b, const double* c, const double* d) {
    const double bx = b[0] - a[0], by = b[1] - a[1], bz = b[2] - a[2];
    const double cx = c[0] - a[0], cy = c[1] - a[1], cz = c[2] - a[2];
    const double dx = d[0] - a[0], dy = d[1] - a[1], dz = d[2] - a[2];
    const double m1 = cy * dz - cz * dy, m2 = cz * dx - cx * dz, m3 = cx * dy - cy * dx;
    const double det = bx * m1 + by * m2 + bz * m3;
    const double perm = std::fabs(bx) * (std::fabs(cy * dz) + std::fabs(cz * dy)) +
                        std::fabs(by) * (std::fabs(cz * dx) + std::fabs(cx * dz)) +
                        std::fabs(bz) * (std::fabs(cx * dy) + std::fabs(cy * dx));
    const double bound = (8.0 + 64.0 * kEps) * kEps * perm;
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return exact_orient({a, b, c, d}, 3);
}

int orient_d(const std::vector<const double*>& pts, int d) {
    if (d == 2) return orient2d(pts[0], pts[1], pts[2]);
    if (d == 3) return orient3d(pts[0], pts[1], pts[2], pts[3]);
    // Gaussian elimination in doubles, accepted when |det| clears a
    // Hadamard-type bound on the accumulated rounding error
    std::vector<double> m(static_cast<std::size_t>(d) * d);
    double had = 1.0;
    for (int i = 0; i < d; ++i) {
        double nr = 0;
        for (int j = 0; j < d; ++j) {
            const double v = pts[i + 1][j] - pts[0][j];
            m[i * d + j] = v;
            nr += v * v;
        }
        had *= std::sqrt(nr);
    }
    if (had == 0.0) return 0;
    double det = 1.0;
    for (int c = 0; c < d; ++c) {
        int p = c;
        for (int r = c + 1; r < d; ++r)
            if (std::fabs(m[r * d + c]) > std::fabs(m[p * d + c])) p = r;
        if (m[p * d + c] == 0.0) {
            det = 0.0;
            break;
        }
        if (p != c) {
            for (int k = 0; k < d; ++k) std::swap(m[p * d + k], m[c * d + k]);
            det = -det;
        }
        det *= m[c * d + c];
        for (int r = c + 1; r < d; ++r) {
            const double f = m[r * d + c] / m[c * d + c];
            for (int k = c; k < d; ++k) m[r * d + k] -= f * m[c * d + k];
        }
    }
    const double bound = 256.0 * d * d * d * kEps * had;
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return exact_orient(pts, d);
}

}  // namespace sphull::hull
