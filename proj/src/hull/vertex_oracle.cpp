#include <cmath>
#include <vector>

#include "sphull/error.hpp"
#include "sphull/hull_engine.hpp"

namespace sphull {

namespace {

constexpr double kTol = 1e-9;

// Phase-1 simplex with Bland's rule: is {lambda >= 0 : A lambda = b} nonempty?
// A is r x m row-major, b >= 0.
bool feasible(const std::vector<double>& A, const std::vector<double>& b, int r, int m) {
    const int cols = m + r + 1;  // structural, artificial, rhs
    std::vector<double> T(static_cast<std::size_t>(r + 1) * cols, 0.0);
    auto at = [&](int i, int j) -> double& { return T[static_cast<std::size_t>(i) * cols + j]; };
    std::vector<int> basis(r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < m; ++j) at(i, j) = A[i * m + j];
        at(i, m + i) = 1.0;
        at(i, cols - 1) = b[i];
        basis[i] = m + i;
    }
    // objective row: reduced costs of min sum(artificials)
    for (int j = 0; j < cols; ++j) {
        if (j >= m && j < m + r) continue;
        double s = 0;
        for (int i = 0; i < r; ++i) s += at(i, j);
        at(r, j) = -s;
    }
    for (int iter = 0; iter < 50 * (m + r) + 100; ++iter) {
        int enter = -1;
        for (int j = 0; j < m + r; ++j)
            if (at(r, j) < -kTol) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        double best = 0;
        for (int i = 0; i < r; ++i) {
            if (at(i, enter) <= kTol) continue;
            const double ratio = at(i, cols - 1) / at(i, enter);
            if (leave < 0 || ratio < best - kTol || (std::fabs(ratio - best) <= kTol && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break;  // unbounded direction cannot occur in phase 1
        const double piv = at(leave, enter);
        for (int j = 0; j < cols; ++j) at(leave, j) /= piv;
        for (int i = 0; i <= r; ++i) {
            if (i == leave) continue;
            const double f = at(i, enter);
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) at(i, j) -= f * at(leave, j);
        }
        basis[leave] = enter;
    }
    // -objective = remaining artificial mass
    return -at(r, cols - 1) <= kTol;
}

}  // namespace

bool vertex_oracle(const PointCloud& c, std::size_t i) {
    if (c.n < 2) fail(ErrorKind::Validation, "vertex_oracle needs n >= 2");
    if (i >= c.n) fail(ErrorKind::Validation, "vertex_oracle: index out of range");
    const int d = c.d;
    const int m = static_cast<int>(c.n) - 1;
    const double* x = c.row(i);
    double scale = 0;
    for (std::size_t j = 0; j < c.n; ++j)
        for (int k = 0; k < d; ++k) scale = std::max(scale, std::fabs(c.row(j)[k] - x[k]));
    if (scale == 0.0) return false;
    std::vector<double> A(static_cast<std::size_t>(d + 1) * m), b(d + 1, 0.0);
    int col = 0;
    for (std::size_t j = 0; j < c.n; ++j) {
        if (j == i) continue;
        for (int k = 0; k < d; ++k) A[k * m + col] = (c.row(j)[k] - x[k]) / scale;
        A[d * m + col] = 1.0;
        ++col;
    }
    b[d] = 1.0;
    return !feasible(A, b, d + 1, m);
}

}  // namespace sphull
