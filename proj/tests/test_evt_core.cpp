#include <cmath>

#include "sphull/evt_core.hpp"
#include "sphull/mixture_tails.hpp"
#include "test_helpers.hpp"

using namespace sphull;

TEST_CASE("scaling function of the exponential law is one") {
    const auto F = parse_law("exponential:lambda=1");
    for (double u : {0.5, 3.0, 20.0, 200.0}) CHECK(std::fabs(scaling_from_survival(F, u) - 1.0) <= 1e-10);
}

TEST_CASE("scaling function of example1 near the endpoint") {
    const auto F = parse_law("example1:a=1,b=1");
    const double w = scaling_from_survival(F, 0.9);
    CHECK_REL(w, 100.0, 0.2);
    // mpmath: e^{-10} / int_{0.9}^1 e^{-1/(1-s)} ds
    CHECK_REL(w, 118.53023372776283, 1e-8);
}

TEST_CASE("scaling function of weibull(1,2) at 10") {
    const auto F = parse_law("weibull:r=1,theta=2");
    const double w = scaling_from_survival(F, 10.0);
    CHECK_REL(w, 20.0, 0.01);
    CHECK_REL(w, 20.099024116734604, 1e-9);
}

TEST_CASE("heavy tails are rejected as not Gumbel") {
    CHECK_KIND(scaling_from_survival(parse_law("pareto:alpha=1"), 10.0), ErrorKind::NotGumbel);
    CHECK_KIND(scaling_from_survival(parse_law("pareto:alpha=0.7"), 10.0), ErrorKind::NotGumbel);
    // alpha > 1 has a convergent tail integral; w = (alpha - 1)/u
    CHECK_REL(scaling_from_survival(parse_law("pareto:alpha=2"), 10.0), 0.1, 1e-9);
    CHECK_KIND(norming(parse_law("pareto:alpha=2"), 100.0), ErrorKind::ClassMismatch);
}

TEST_CASE("norming of the exponential law") {
    const auto g = norming(parse_law("exponential:lambda=1"), 1e6);
    CHECK(g.b_n == doctest::Approx(std::log(1e6)).epsilon(1e-12));
    CHECK(g.a_n == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.xi == doctest::Approx(std::log(1e6)).epsilon(1e-10));
}

// Laplace expansion of the tail integral gives xi = L^2 (1 + 1/L + ...) with
// L = ln n, i.e. about 1.054 L^2 at n = 1e6; the 5% band is reached near 1e8.
TEST_CASE("norming of example1 grows like (ln n)^2" * doctest::may_fail()) {
    const auto g = norming(parse_law("example1:a=1,b=1"), 1e6);
    CHECK_REL(g.xi, std::pow(std::log(1e6), 2), 0.05);
}

TEST_CASE("norming of example1 approaches (ln n)^2 from above") {
    const auto F = parse_law("example1:a=1,b=1");
    double prev = INFINITY;
    for (double n : {1e4, 1e6, 1e8, 1e12}) {
        const double r = norming(F, n).xi / std::pow(std::log(n), 2);
        CHECK(r > 1.0);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev - 1 < 0.05);
}

TEST_CASE("norming of weibull tails grows like theta ln n") {
    for (auto [r, t] : {std::pair{0.5, 2.0}, std::pair{1.0, 3.0}, std::pair{2.0, 1.5}}) {
        const auto F = make_law(Family::WeibullTail, {{"r", r}, {"theta", t}});
        // declared w(u) = r theta u^{theta-1} makes xi = theta ln n exactly
        CHECK_REL(norming(F, 1e6, ScalingSource::Declared).xi, t * std::log(1e6), 0.02);
        // the tail-integral w carries a 1 + (theta-1)/(theta ln n) correction
        CHECK_REL(norming(F, 1e6).xi, t * std::log(1e6) * (1 + (t - 1) / (t * std::log(1e6))), 0.01);
    }
}

TEST_CASE("gumbel limit check") {
    const std::vector<double> xs{0.5, 1.0, 2.0};
    auto rep = gumbel_limit_check(tail_of(parse_law("exponential:lambda=1")), {1, 5, 10, 20}, xs);
    CHECK(rep.max_deviation <= 1e-12);
    CHECK(rep.uw_increasing);

    rep = gumbel_limit_check(tail_of(parse_law("example1:a=1,b=1")), {0.99}, {1.0});
    CHECK(rep.max_deviation <= 0.05);
    CHECK(rep.endpoint_growth);

    auto pareto = gumbel_limit_check(tail_of(parse_law("pareto:alpha=2")), {10, 1e3, 1e5}, xs);
    CHECK(pareto.max_deviation > 0.1);
}

TEST_CASE("regular variation detection") {
    const auto grid = log_grid(1e2, 1e8, 4);
    const auto p = rv_index_detect(tail_of(parse_law("pareto:alpha=3")), grid);
    CHECK(p.verdict == RvVerdict::RegularlyVarying);
    CHECK(std::fabs(p.index - 3.0) <= 0.01);

    const auto o = rv_index_detect(tail_of(parse_law("orv:alpha=2")), grid);
    CHECK(o.verdict == RvVerdict::ORegVarying);
    for (const auto& b : o.ratio_bounds) {
        CHECK(b.lo >= std::pow(b.x, -2.0) / 3);
        CHECK(b.hi <= 3 * std::pow(b.x, -2.0));
    }

    const auto e = rv_index_detect(tail_of(parse_law("exponential:lambda=1")), log_grid(1, 1e3, 4));
    CHECK(e.verdict == RvVerdict::Neither);

    CHECK_KIND(rv_index_detect(tail_of(parse_law("pareto:alpha=3")), {10, 20, 50}), ErrorKind::InsufficientData);
    CHECK_KIND(rv_index_detect(tail_of(parse_law("example1:a=1,b=1")), grid), ErrorKind::Domain);
}

TEST_CASE("weibull index at a finite endpoint") {
    TailFunction t;
    t.name = "power";
    t.upper = 1.0;
    t.survival = [](double u) { return u >= 1 ? 0.0 : u <= 0 ? 1.0 : (1 - u) * (1 - u); };
    CHECK(weibull_index_check(t, 2.0, {2, 10, 100, 1e4}) <= 1e-12);

    // Beta(1,3): F_bar(u) = (1-u)^3 exactly
    CHECK(weibull_index_check(tail_of(parse_law("beta:a=1,b=3")), 3.0, {1e2, 1e4}) <= 1e-12);
    const auto B = tail_of(parse_law("beta:a=2,b=3"));
    const double d1 = weibull_index_check(B, 3.0, {1e2});
    const double d2 = weibull_index_check(B, 3.0, {1e4});
    CHECK(d2 < d1);
    CHECK(d2 <= 1e-3);

    const auto E = tail_of(parse_law("example1:a=1,b=1"));
    for (double g : {1.0, 3.0, 10.0}) CHECK(weibull_index_check(E, g, {10, 100}) >= 0.1);
    CHECK_KIND(weibull_index_check(tail_of(parse_law("pareto:alpha=2")), 1.0, {10}), ErrorKind::ClassMismatch);
}

TEST_CASE("descriptors carry a scaling function only for Gumbel laws") {
    CHECK(static_cast<bool>(describe(tail_of(parse_law("exponential:lambda=1"))).scaling_w));
    CHECK_FALSE(static_cast<bool>(describe(tail_of(parse_law("pareto:alpha=2"))).scaling_w));
    CHECK_FALSE(static_cast<bool>(describe(tail_of(parse_law("beta:a=1,b=3"))).scaling_w));
}

TEST_CASE("xi is slowly varying and b_n is monotone") {
    for (const char* s : {"exponential:lambda=1", "weibull:r=0.5,theta=2", "example1:a=1,b=1", "carnal:eps=inv_log"}) {
        const auto F = parse_law(s);
        double prev_dev = INFINITY, prev_b = -INFINITY;
        for (double n : {1e3, 1e4, 1e5, 1e6}) {
            const auto g1 = norming(F, n);
            const auto g2 = norming(F, 2 * n);
            const double dev = std::fabs(g2.xi / g1.xi - 1.0);
            CHECK_MESSAGE(dev < prev_dev, s);
            prev_dev = dev;
            CHECK(g1.b_n >= prev_b);
            CHECK(g1.a_n > 0);
            prev_b = g1.b_n;
        }
    }
}

// For xi proportional to ln n the doubling ratio is ln 2 / ln n = 0.0502 at
// n = 1e6, and twice that for (ln n)^2; the 0.05 threshold is out of reach.
TEST_CASE("xi doubling ratio within 0.05 at n = 1e6" * doctest::may_fail()) {
    for (const char* s : {"exponential:lambda=1", "weibull:r=0.5,theta=2", "example1:a=1,b=1", "carnal:eps=inv_log"}) {
        const auto F = parse_law(s);
        CHECK_MESSAGE(std::fabs(norming(F, 2e6).xi / norming(F, 1e6).xi - 1.0) <= 0.05, s);
    }
}

TEST_CASE("local scaling stability converges") {
    std::vector<double> s_grid;
    for (double s = -2; s <= 2 + 1e-12; s += 0.5) s_grid.push_back(s);
    for (const char* s : {"exponential:lambda=1", "weibull:r=0.5,theta=2", "example1:a=1,b=1"}) {
        const auto F = parse_law(s);
        double prev = INFINITY, first = 0;
        for (double q : {1e-4, 1e-8, 1e-16, 1e-32}) {
            const double dev = local_scaling_deviation(tail_of(F), F.survival_quantile(q), s_grid);
            CHECK_MESSAGE(dev <= prev, s);
            if (first == 0) first = dev;
            prev = dev;
        }
        CHECK_MESSAGE(prev <= 0.5 * first + 1e-9, s);
    }
}

// w(u + s/w)/w - 1 is about s/(2 r u^2) for the Gaussian radius (0.054 at
// s = 2) and about 2 s/ln(1/q) for example1 (0.26) at q = 1e-8.
TEST_CASE("local scaling stability at the 1e-8 quantile" * doctest::may_fail()) {
    std::vector<double> s_grid;
    for (double s = -2; s <= 2 + 1e-12; s += 0.5) s_grid.push_back(s);
    for (const char* s : {"exponential:lambda=1", "weibull:r=0.5,theta=2", "example1:a=1,b=1"}) {
        const auto F = parse_law(s);
        const double u = F.survival_quantile(1e-8);
        CHECK_MESSAGE(local_scaling_deviation(tail_of(F), u, s_grid) <= 0.02, s);
    }
}
