#include <cmath>
#include <random>

#include "sphull/error.hpp"
#include "sphull/hull_engine.hpp"

namespace sphull {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replication_index) {
    return splitmix64(splitmix64(master_seed) ^ (replication_index * 0xD1B54A32D192ED03ull + 1));
}

PointCloud make_cloud(int d, const std::vector<std::vector<double>>& rows) {
    if (d < 1) fail(ErrorKind::Validation, "make_cloud: d must be >= 1");
    PointCloud c;
    c.d = d;
    c.n = rows.size();
    c.coords.reserve(rows.size() * d);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != d) fail(ErrorKind::Validation, "make_cloud: row length differs from d");
        for (double v : r) {
            if (!std::isfinite(v)) fail(ErrorKind::Validation, "make_cloud: non-finite coordinate");
            c.coords.push_back(v);
        }
    }
    return c;
}

PointCloud sample_cloud(const RadialLaw& F, int d, std::size_t n, std::uint64_t master_seed,
                        std::uint64_t replication_index) {
    if (d < 2) fail(ErrorKind::Validation, "sample_cloud: d must be >= 2");
    if (n < 1) fail(ErrorKind::Validation, "sample_cloud: n must be >= 1");
    PointCloud c;
    c.d = d;
    c.n = n;
    c.master_seed = master_seed;
    c.replication = replication_index;
    c.coords.resize(n * d);
    std::mt19937_64 gen(derive_seed(master_seed, replication_index));
    std::normal_distribution<double> normal;
    std::vector<double> z(d);
    for (std::size_t i = 0; i < n; ++i) {
        double s2;
        do {
            s2 = 0;
            for (int k = 0; k < d; ++k) {
                z[k] = normal(gen);
                s2 += z[k] * z[k];
            }
        } while (s2 == 0.0);
        // U in (0,1), never 0 or 1
        const double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
        const double r = F.survival_quantile(u) / std::sqrt(s2);
        double* p = c.row(i);
        for (int k = 0; k < d; ++k) p[k] = r * z[k];
    }
    return c;
}

}  // namespace sphull
