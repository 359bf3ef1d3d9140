#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <doctest.h>

#include "sphull/error.hpp"

// relative closeness
inline bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }

#define CHECK_REL(a, b, tol) CHECK_MESSAGE(rel_close((a), (b), (tol)), (a), " vs ", (b))

#define CHECK_KIND(expr, k)                                   \
    do {                                                      \
        bool thrown_ = false;                                 \
        try {                                                 \
            (void)(expr);                                     \
        } catch (const sphull::Error& e_) {                   \
            thrown_ = true;                                   \
            CHECK_MESSAGE(e_.kind() == (k), e_.what());       \
        }                                                     \
        CHECK_MESSAGE(thrown_, "expected an sphull::Error");  \
    } while (0)

// small generator for property tests
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
};
