#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sphull/numeric/integrate.hpp"
#include "sphull/radial_models.hpp"

namespace sphull {

using numeric::QuadratureSpec;

struct DimensionalConstants {
    int d;
    double tau_d;
    double kappa_d;
};

DimensionalConstants dimensional_constants(int d);

struct FormulaValue {
    double value = 0.0;
    double achieved_error = 0.0;
};

// int_{u > r} (u^2 - r^2)^p u dF(u)
FormulaValue tail_moment_integral(const RadialLaw& F, double r, double p, const QuadratureSpec& spec = {});

struct VnBounds {
    double lower;
    double upper;
    double lower_error;
    double upper_error;
};

// lower = n int Q_d^{n-1} dF, upper = n 2^{d-1} int [1 - 2^{1-d} Qbar_d]^{n-1} dF
VnBounds vn_integral_bounds(const RadialLaw& F, int d, double n, const QuadratureSpec& spec = {});

enum class CarnalWhich { Vertices, Area };

struct Carnal2dValue {
    double integral;     // n^2 int Q_2^{n-2} |dH| (or |dK|) ~ 2 E[v_n] (2 E[A_n])
    double expectation;  // integral / 2
    double achieved_error;
};

Carnal2dValue carnal_2d_integrals(const RadialLaw& F, double n, CarnalWhich which, const QuadratureSpec& spec = {});

enum class DwyerWhich { Facets, Area, Volume };

// Upper estimates built from the delta bounds; labelled "upper estimate".
FormulaValue dwyer_d_integrals(const RadialLaw& F, int d, double n, DwyerWhich which, const QuadratureSpec& spec = {});

struct Lemma2Input {
    RadialLaw g1;                                 // G1 (continuous)
    std::function<double(double)> g2_survival;    // G2 bar
    std::function<double(double)> g2_density;     // dG2/ds
    double rho = 1.0;
    double l = 1.0;
    double lambda = 0.0;
    double z = 0.0;
    std::function<double(double)> slowly_varying = [](double) { return 1.0; };
};

struct Lemma2Row {
    double n;
    double a;  // normalized statement (a)
    double b;  // normalized statement (b) at G1_bar(u) = 1/n
    double c;  // normalized statement (c)
    double max_mutual_deviation;
};

std::vector<Lemma2Row> lemma2_verify(const Lemma2Input& in, const std::vector<double>& n_grid,
                                     const QuadratureSpec& spec = {});

// Lemma2Input for G2_bar = G1_bar^k.
Lemma2Input lemma2_power_pair(const RadialLaw& g1, double k, double lambda = 0.0, double z = 0.0);

}  // namespace sphull
