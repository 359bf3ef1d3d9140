#include <cmath>

#include "sphull/predictor.hpp"
#include "test_helpers.hpp"

using namespace sphull;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("planar vertex prediction for the exponential law") {
    const auto p = predict(parse_law("exponential:lambda=1"), 2, 1e6, FormulaId::Vn2d);
    CHECK(p.value == doctest::Approx(2 * std::sqrt(kPi * std::log(1e6))).epsilon(1e-9));
    CHECK(p.value == doctest::Approx(13.18).epsilon(1e-3));
    CHECK(p.xi == doctest::Approx(std::log(1e6)).epsilon(1e-9));
    CHECK(p.caveat.empty());
}

TEST_CASE("example1 vertex prediction") {
    const auto p = predict(parse_law("example1:a=1,b=1"), 2, 1e6, FormulaId::Example1Vn);
    CHECK(p.value == doctest::Approx(std::sqrt(4 * kPi) * std::log(1e6)).epsilon(1e-14));
    CHECK(p.value == doctest::Approx(48.97).epsilon(1e-3));
    CHECK_KIND(predict(parse_law("exponential:lambda=1"), 2, 1e6, FormulaId::Example1Vn), ErrorKind::ClassMismatch);
}

TEST_CASE("example2 vertex prediction") {
    const auto p = predict(parse_law("weibull:r=0.5,theta=2"), 2, 1e5, FormulaId::Example2Vn);
    CHECK(p.value == doctest::Approx(std::sqrt(8 * kPi * std::log(1e5))).epsilon(1e-14));
}

TEST_CASE("heavy-tail limit expression") {
    CHECK(frechet_limit_printed(1.0) == doctest::Approx(std::pow(std::sqrt(kPi) / 2, 3)).epsilon(1e-14));
    // mpmath values
    CHECK_REL(frechet_limit_printed(1.0), 0.69604099960396348, 1e-13);
    CHECK_REL(frechet_limit_printed(3.0), 0.97880765569307364, 1e-13);
    const auto p = predict(parse_law("pareto:alpha=1"), 2, 1e4, FormulaId::FrechetLimit);
    CHECK(p.caveat == "convention");
    bool has_quad = false;
    for (const auto& [k, v] : p.extras)
        if (k == "quadrature_E_vn") has_quad = v >= 3.0;
    CHECK(has_quad);
    CHECK_KIND(predict(parse_law("exponential:lambda=1"), 2, 1e4, FormulaId::FrechetLimit), ErrorKind::ClassMismatch);
}

TEST_CASE("class and dimension checks") {
    CHECK_KIND(predict(parse_law("pareto:alpha=3"), 2, 1e4, FormulaId::Vn2d), ErrorKind::ClassMismatch);
    CHECK_KIND(predict(parse_law("exponential:lambda=1"), 3, 1e4, FormulaId::Vn2d), ErrorKind::Validation);
    CHECK_KIND(predict(parse_law("exponential:lambda=1"), 2, 1.0, FormulaId::Vn2d), ErrorKind::Validation);
    PredictOptions o;
    o.epsilon = 1.5;
    CHECK_KIND(predict(parse_law("exponential:lambda=1"), 2, 1e4, FormulaId::VnBoundsD, o), ErrorKind::Validation);
    CHECK_KIND(formula_from_string("Vn9d"), ErrorKind::Validation);
}

TEST_CASE("formula names round trip") {
    for (auto id : all_formulas()) CHECK(formula_from_string(to_string(id)) == id);
}

TEST_CASE("suspect displays carry caveats") {
    const auto F = parse_law("exponential:lambda=1");
    CHECK(predict(F, 3, 1e4, FormulaId::FnUpperD).caveat == "as-printed-suspect");
    CHECK(predict(F, 3, 1e4, FormulaId::AnUpperD).caveat == "exponent-d-variant-suspect");
    CHECK(predict(F, 3, 1e4, FormulaId::VolUpperD).caveat.empty());
}

TEST_CASE("bounds bracket the planar vertex prediction") {
    for (const char* s : {"exponential:lambda=1", "weibull:r=0.5,theta=2", "example1:a=1,b=1"})
        for (double n : {1e3, 1e5, 1e7}) {
            const auto F = parse_law(s);
            const auto b = predict(F, 2, n, FormulaId::VnBoundsD);
            const auto v = predict(F, 2, n, FormulaId::Vn2d);
            REQUIRE(b.upper);
            CHECK(b.value <= v.value);
            CHECK(v.value <= *b.upper);
        }
}

TEST_CASE("area over perimeter is half the quantile") {
    for (const char* s : {"exponential:lambda=1", "example1:a=1,b=1"}) {
        const auto F = parse_law(s);
        const auto a = predict(F, 2, 1e5, FormulaId::An2d);
        const auto l = predict(F, 2, 1e5, FormulaId::Ln2d);
        CHECK(a.value / l.value == doctest::Approx(a.b_n / 2).epsilon(1e-14));
    }
}

TEST_CASE("planar predictions are nondecreasing in n") {
    for (const char* s : {"exponential:lambda=1", "weibull:r=0.5,theta=2", "example1:a=1,b=1", "carnal:eps=inv_log"}) {
        const auto F = parse_law(s);
        for (auto id : {FormulaId::Vn2d, FormulaId::An2d, FormulaId::Ln2d}) {
            double prev = 0;
            for (double n = 1e3; n <= 1.1e6; n *= 2) {
                const double v = predict(F, 2, n, id).value;
                CHECK(v >= prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("quadrature norming stays close to the F-based norming") {
    const auto F = parse_law("exponential:lambda=1");
    PredictOptions o;
    o.norming = NormingSource::QQuadrature;
    const auto q = predict(F, 2, 1e6, FormulaId::Vn2d, o);
    const auto f = predict(F, 2, 1e6, FormulaId::Vn2d);
    CHECK(q.value < f.value);
    CHECK(q.value / f.value > 0.9);
}

TEST_CASE("gaussian radius norming constants") {
    const auto r = consistency_examples(parse_law("weibull:r=0.5,theta=2"), {1e4, 1e6});
    CHECK_REL(r.rows.back().anbn, 1.0, 0.10);
    CHECK_REL(r.rows.back().ratio_f, 1.0, 0.05);
}

TEST_CASE("norming constant product decreases for theta above two") {
    const auto r = consistency_examples(parse_law("weibull:r=1,theta=3"), {1e3, 1e5, 1e7, 1e9});
    CHECK(r.anbn_trend == -1);
    for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].anbn < r.rows[i - 1].anbn);
}

TEST_CASE("example1 xi against the squared log") {
    const auto r = consistency_examples(parse_law("example1:a=1,b=1"), {1e4, 1e6, 1e8});
    CHECK_REL(r.rows.back().ratio_f, 1.0, 0.05);
    // the marginal norming converges from below, markedly slower
    CHECK(r.rows.back().ratio < r.rows.back().ratio_f);
    CHECK(r.rows.back().ratio > r.rows.front().ratio);
    CHECK_KIND(consistency_examples(parse_law("exponential:lambda=1"), {1e4}), ErrorKind::Validation);
}
