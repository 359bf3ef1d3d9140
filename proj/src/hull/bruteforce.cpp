#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sphull/error.hpp"
#include "sphull/hull/predicates.hpp"
#include "sphull/hull_engine.hpp"

namespace sphull {

namespace {

// |det| of a k x k matrix by partial pivoting
double abs_det(std::vector<double> m, int k) {
    double det = 1;
    for (int c = 0; c < k; ++c) {
        int p = c;
        for (int r = c + 1; r < k; ++r)
            if (std::fabs(m[r * k + c]) > std::fabs(m[p * k + c])) p = r;
        if (m[p * k + c] == 0.0) return 0.0;
        if (p != c)
            for (int j = 0; j < k; ++j) std::swap(m[p * k + j], m[c * k + j]);
        det *= m[c * k + c];
        for (int r = c + 1; r < k; ++r) {
            const double f = m[r * k + c] / m[c * k + c];
            for (int j = c; j < k; ++j) m[r * k + j] -= f * m[c * k + j];
        }
    }
    return std::fabs(det);
}

}  // namespace

HullStats hull_bruteforce(const PointCloud& c) {
    const int d = c.d;
    const int n = static_cast<int>(c.n);
    if (d < 2 || d > 6 || n > 60)
        fail(ErrorKind::UnsupportedScale, "hull_bruteforce supports 2 <= d <= 6 and n <= 60");
    if (n <= d) fail(ErrorKind::Degeneracy, "hull_bruteforce: n <= d points span no full-dimensional hull");

    std::vector<double> centroid(d, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) centroid[k] += c.row(i)[k] / n;

    double fact_dm1 = 1;
    for (int k = 2; k < d; ++k) fact_dm1 *= k;
    const double fact_d = fact_dm1 * d;

    HullStats s;
    std::set<std::size_t> verts;
    std::vector<int> S(d);
    std::iota(S.begin(), S.end(), 0);
    std::vector<const double*> pts(d + 1);
    std::vector<double> gram((d - 1) * (d - 1)), vol(d * d), diff((d - 1) * d);
    while (true) {
        for (int k = 0; k < d; ++k) pts[k] = c.row(S[k]);
        int pos = 0, neg = 0, zero = 0;
        int si = 0;
        for (int q = 0; q < n && !(pos && neg); ++q) {
            if (si < d && S[si] == q) {
                ++si;
                continue;
            }
            pts[d] = c.row(q);
            const int o = hull::orient_d(pts, d);
            if (o > 0) ++pos;
            else if (o < 0) ++neg;
            else ++zero;
        }
        if (!(pos && neg)) {
            if (zero > 0)
                fail(ErrorKind::Degeneracy,
                     "hull_bruteforce: input is not in general position (a supporting hyperplane holds more than d "
                     "points); perturb the input");
            ++s.f_n;
            for (int k = 0; k < d; ++k) verts.insert(S[k]);
            for (int i = 1; i < d; ++i)
                for (int k = 0; k < d; ++k) diff[(i - 1) * d + k] = pts[i][k] - pts[0][k];
            for (int i = 0; i < d - 1; ++i)
                for (int j = 0; j < d - 1; ++j) {
                    double g = 0;
                    for (int k = 0; k < d; ++k) g += diff[i * d + k] * diff[j * d + k];
                    gram[i * (d - 1) + j] = g;
                }
            s.area += std::sqrt(abs_det(gram, d - 1)) / fact_dm1;
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k) vol[i * d + k] = pts[i][k] - centroid[k];
            s.volume += abs_det(vol, d) / fact_d;
        }
        // next combination
        int i = d - 1;
        while (i >= 0 && S[i] == n - d + i) --i;
        if (i < 0) break;
        ++S[i];
        for (int j = i + 1; j < d; ++j) S[j] = S[j - 1] + 1;
    }
    s.vertices.assign(verts.begin(), verts.end());
    s.v_n = s.vertices.size();
    if (d == 2) {
        // edges: boundary length is the 1-dimensional facet measure
        s.perimeter = s.area;
        s.area = s.volume;
    }
    return s;
}

}  // namespace sphull
