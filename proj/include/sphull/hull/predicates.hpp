#pragma once

#include <cstddef>
#include <vector>

namespace sphull::hull {

// Signs are exact: a floating-point filter decides when it can, otherwise the
// determinant is recomputed in rational arithmetic.

// > 0 when c lies left of a->b
int orient2d(const double* a, const double* b, const double* c);

// > 0 when d lies on the positive side of plane (a,b,c), i.e. det[b-a, c-a, d-a] > 0
int orient3d(const double* a, const double* b, const double* c, const double* d);

// sign of det[p_1 - p_0, ..., p_d - p_0] for d+1 points in R^d
int orient_d(const std::vector<const double*>& pts, int d);

// number of times the exact fallback was taken (process wide, for diagnostics)
std::size_t exact_fallbacks();

}  // namespace sphull::hull
