#include <cmath>
#include <set>

#include "sphull/hull/predicates.hpp"
#include "sphull/hull_engine.hpp"
#include "test_helpers.hpp"

using namespace sphull;

TEST_CASE("orientation predicates are exact on near-degenerate input") {
    const double a[2] = {0, 0}, b[2] = {1, 1};
    const double c[2] = {0.5, 0.5}, l[2] = {0.5, 0.5000000000000001};
    CHECK(hull::orient2d(a, b, c) == 0);
    CHECK(hull::orient2d(a, b, l) > 0);
    // classic filter failure: points nearly on a line far from the origin
    const double p[2] = {0.5, 0.5}, q[2] = {12, 12}, r[2] = {24, 24};
    CHECK(hull::orient2d(p, q, r) == 0);
    const double r2[2] = {24.000000000000004, 24};
    CHECK(hull::orient2d(p, q, r2) < 0);

    const double o[3] = {0, 0, 0}, x[3] = {1, 0, 0}, y[3] = {0, 1, 0}, z[3] = {0, 0, 1}, m[3] = {0.3, 0.3, 0};
    CHECK(hull::orient3d(o, x, y, z) > 0);
    CHECK(hull::orient3d(o, x, y, m) == 0);
    std::vector<const double*> pts{o, x, y, z};
    CHECK(hull::orient_d(pts, 3) > 0);
}

TEST_CASE("square with an interior point") {
    const auto c = make_cloud(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    const auto h = hull2d(c);
    CHECK(h.v_n == 4);
    CHECK(h.f_n == 4);
    CHECK(h.area == doctest::Approx(1.0));
    CHECK(h.volume == doctest::Approx(1.0));
    REQUIRE(h.perimeter);
    CHECK(*h.perimeter == doctest::Approx(4.0));
    CHECK(h.vertices == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_FALSE(vertex_oracle(c, 4));
    CHECK(vertex_oracle(c, 0));
}

TEST_CASE("collinear and duplicate planar input") {
    const auto c = make_cloud(2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    const auto h = hull2d(c);
    CHECK(h.v_n == 2);
    CHECK(*h.perimeter == doctest::Approx(2 * 3 * std::sqrt(2.0)));
    CHECK(h.area == 0.0);
    const auto d = make_cloud(2, {{0, 0}, {1, 0}, {0, 1}, {1, 0}});
    CHECK(hull2d(d).v_n == 3);
}

TEST_CASE("unit cube") {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 8; ++i) rows.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    rows.push_back({0.5, 0.5, 0.5});
    const auto c = make_cloud(3, rows);
    const auto h = hull3d(c);
    CHECK(h.v_n == 8);
    CHECK(h.f_n == 12);
    CHECK(h.volume == doctest::Approx(1.0));
    CHECK(h.area == doctest::Approx(6.0));
    // coplanar quadruples leave the brute-force facets ambiguous
    CHECK_KIND(hull_bruteforce(c), ErrorKind::Degeneracy);
}

TEST_CASE("degenerate spatial input") {
    CHECK_KIND(hull3d(make_cloud(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})), ErrorKind::Degeneracy);
    CHECK_KIND(hull3d(make_cloud(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 3, 0}})), ErrorKind::Degeneracy);
    CHECK_KIND(hull_bruteforce(make_cloud(4, {{0, 0, 0, 0}, {1, 0, 0, 0}})), ErrorKind::Degeneracy);
}

TEST_CASE("brute force limits") {
    const auto F = parse_law("exponential:lambda=1");
    CHECK_KIND(hull_bruteforce(sample_cloud(F, 2, 61, 1, 0)), ErrorKind::UnsupportedScale);
    CHECK_KIND(hull_bruteforce(sample_cloud(F, 7, 20, 1, 0)), ErrorKind::UnsupportedScale);
}

TEST_CASE("simplex in four dimensions") {
    std::vector<std::vector<double>> rows{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0.1, 0.1, 0.1, 0.1}};
    const auto h = hull_stats(make_cloud(4, rows));
    CHECK(h.v_n == 5);
    CHECK(h.f_n == 5);
    CHECK(h.volume == doctest::Approx(1.0 / 24));
}

TEST_CASE("seed derivation is stable") {
    CHECK(derive_seed(0, 0) != derive_seed(0, 1));
    CHECK(derive_seed(1, 0) != derive_seed(0, 0));
    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    const auto F = parse_law("weibull:r=0.5,theta=2");
    const auto a = sample_cloud(F, 3, 100, 5, 9);
    const auto b = sample_cloud(F, 3, 100, 5, 9);
    CHECK(a.coords == b.coords);
    CHECK(a.coords != sample_cloud(F, 3, 100, 5, 10).coords);
}

TEST_CASE("sampled radii follow the radial law") {
    const auto F = parse_law("exponential:lambda=1");
    const auto c = sample_cloud(F, 3, 20000, 3, 0);
    double sum = 0;
    for (std::size_t i = 0; i < c.n; ++i) {
        const double* p = c.row(i);
        sum += std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    }
    CHECK(std::fabs(sum / c.n - 1.0) < 0.03);
}

TEST_CASE("fast path, brute force and LP oracle agree") {
    Gen g(2024);
    const char* laws[] = {"exponential:lambda=1", "pareto:alpha=2", "weibull:r=0.5,theta=2"};
    for (int it = 0; it < 200; ++it) {
        const int d = g.integer(2, 3);
        const std::size_t n = static_cast<std::size_t>(g.integer(d + 2, 40));
        const auto c = sample_cloud(parse_law(laws[it % 3]), d, n, 77, static_cast<std::uint64_t>(it));
        const auto fast = hull_stats(c);
        const auto slow = hull_bruteforce(c);
        CHECK(fast.vertices == slow.vertices);
        CHECK(fast.f_n == slow.f_n);
        CHECK(fast.volume == doctest::Approx(slow.volume).epsilon(1e-9));
        CHECK(fast.area == doctest::Approx(slow.area).epsilon(1e-9));
        std::set<std::size_t> vs(fast.vertices.begin(), fast.vertices.end());
        for (std::size_t i = 0; i < n; ++i) CHECK(vertex_oracle(c, i) == (vs.count(i) == 1));
    }
}

TEST_CASE("quantity names") {
    CHECK(std::string(to_string(Quantity::Vn)) == "v_n");
    CHECK(quantity_from_string("A_n") == Quantity::An);
    CHECK(quantity_from_string("l_n") == Quantity::Ln);
    CHECK_KIND(quantity_from_string("nope"), ErrorKind::Validation);
}

TEST_CASE("monte carlo on the circle is exact") {
    const auto r = mc_estimate(parse_law("pointmass:x=1"), 2, 100, Quantity::Vn, 20, 1);
    CHECK(r.mean == 100.0);
    CHECK(r.sample_variance == 0.0);
    CHECK(r.ci_halfwidth_95 == 0.0);
}

TEST_CASE("monte carlo does not depend on the worker count") {
    const auto F = parse_law("exponential:lambda=1");
    const std::vector<Quantity> qs{Quantity::Vn, Quantity::An, Quantity::Ln, Quantity::VarVn};
    const auto a = mc_estimate(F, 2, 500, qs, 40, 9, {1});
    const auto b = mc_estimate(F, 2, 500, qs, 40, 9, {8});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mean == b[i].mean);
        CHECK(a[i].sample_variance == b[i].sample_variance);
    }
    CHECK_KIND(mc_estimate(F, 2, 500, Quantity::Vn, 1, 9), ErrorKind::Validation);
}

TEST_CASE("efron identity at small n") {
    const auto rep = efron_check(parse_law("exponential:lambda=1"), 2, 20, 2000, 5);
    CHECK(rep.overlap);
    CHECK(std::fabs(rep.vn.mean - rep.n_times_p) < 4 * (rep.vn.ci_halfwidth_95 + rep.ci_halfwidth_95));
}

TEST_CASE("clt report warns outside the Gumbel class") {
    const auto rep = clt_replicates(parse_law("pareto:alpha=3"), 2, 200, 50, 1);
    CHECK_FALSE(rep.condition_ok);
    CHECK_FALSE(rep.warning.empty());
    CHECK(rep.standardized.size() == 50);
}
