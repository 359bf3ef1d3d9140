#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphull/radial_models.hpp"

namespace sphull {

struct PointCloud {
    int d = 2;
    std::size_t n = 0;
    std::vector<double> coords;  // row-major n x d
    std::uint64_t master_seed = 0;
    std::uint64_t replication = 0;

    const double* row(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(d); }
    double* row(std::size_t i) { return coords.data() + i * static_cast<std::size_t>(d); }
};

PointCloud make_cloud(int d, const std::vector<std::vector<double>>& rows);

struct HullStats {
    std::size_t v_n = 0;
    std::size_t f_n = 0;
    double area = 0;    // (d-1)-dimensional boundary measure; polygon area when d=2
    double volume = 0;  // d-dimensional content; equal to area when d=2
    std::optional<double> perimeter;  // d=2
    std::vector<std::size_t> vertices;  // sorted indices of extreme points
};

// Counter-based stream seed; independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replication_index);

PointCloud sample_cloud(const RadialLaw& F, int d, std::size_t n, std::uint64_t master_seed,
                        std::uint64_t replication_index);

HullStats hull2d(const PointCloud& c);
HullStats hull3d(const PointCloud& c);
// facet enumeration for 2 <= d <= 6, n <= 60
HullStats hull_bruteforce(const PointCloud& c);
// fast path for d=2,3, brute force above
HullStats hull_stats(const PointCloud& c);

// true iff point i is outside the convex hull of the other points
bool vertex_oracle(const PointCloud& c, std::size_t i);

enum class Quantity { Vn, Fn, An, Vol, Ln, VarVn };
const char* to_string(Quantity q);
Quantity quantity_from_string(const std::string& s);

struct EstimateRecord {
    Quantity quantity = Quantity::Vn;
    std::size_t n = 0;
    int d = 2;
    std::size_t replications = 0;
    double mean = 0;
    double sample_variance = 0;
    double ci_halfwidth_95 = 0;
    std::uint64_t seed = 0;
};

struct McOptions {
    unsigned workers = 1;
};

// one record per requested quantity, all from the same clouds
std::vector<EstimateRecord> mc_estimate(const RadialLaw& F, int d, std::size_t n, const std::vector<Quantity>& qs,
                                        std::size_t replications, std::uint64_t master_seed,
                                        const McOptions& opts = {});
EstimateRecord mc_estimate(const RadialLaw& F, int d, std::size_t n, Quantity q, std::size_t replications,
                           std::uint64_t master_seed, const McOptions& opts = {});

struct EfronReport {
    EstimateRecord vn;     // mean v_n
    double n_times_p = 0;  // n * P(X_1 outside hull of the rest)
    double ci_halfwidth_95 = 0;
    bool overlap = false;
};

EfronReport efron_check(const RadialLaw& F, int d, std::size_t n, std::size_t replications,
                        std::uint64_t master_seed, const McOptions& opts = {});

struct CltReport {
    std::vector<double> standardized;
    double mean = 0;
    double variance = 0;
    double skewness = 0;
    double excess_kurtosis = 0;
    double ks_distance = 0;  // sup |F_emp - Phi| of the standardized sample
    double xi = 0;           // xi_{Q_d}(n) by quadrature
    double lambda_hat = 0;
    double lambda_star_hat = 0;
    bool condition_ok = true;
    std::string warning;
};

CltReport clt_replicates(const RadialLaw& F, int d, std::size_t n, std::size_t replications,
                         std::uint64_t master_seed, const McOptions& opts = {});

}  // namespace sphull
