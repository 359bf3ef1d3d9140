#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphull/numeric/integrate.hpp"
#include "sphull/radial_models.hpp"

namespace sphull {

enum class FormulaId { Vn2d, VnBoundsD, An2d, AnUpperD, FnUpperD, VolUpperD, Ln2d, FrechetLimit, Example1Vn, Example2Vn };

const char* to_string(FormulaId id);
FormulaId formula_from_string(const std::string& s);
const std::vector<FormulaId>& all_formulas();

// Where xi and b_n come from: F's own quantiles (default) or Q_d by quadrature.
enum class NormingSource { FBased, QQuadrature };

struct PredictOptions {
    double epsilon = 0.1;
    NormingSource norming = NormingSource::FBased;
    numeric::QuadratureSpec spec{};
};

struct Prediction {
    FormulaId id = FormulaId::Vn2d;
    double value = 0;                // lower end for bound pairs
    std::optional<double> upper;     // set for VnBoundsD
    double n = 0;
    int d = 2;
    double xi = 0;
    double b_n = 0;
    std::string caveat;              // "as-printed-suspect", "convention" or empty
    std::vector<std::pair<std::string, double>> extras;
};

Prediction predict(const RadialLaw& law, int d, double n, FormulaId id, const PredictOptions& opts = {});

// Gamma expression for the heavy-tail vertex limit, at positive index g.
double frechet_limit_printed(double g);

struct ConsistencyRow {
    double n;
    double xi_quadrature;  // xi_{Q_2}(n)
    double xi_closed;      // b (ln n)^2 or theta ln n
    double ratio;
    double xi_f;           // xi_F(n), the F-based norming
    double ratio_f;
    double anbn;           // a_n b_n from F
};

struct ConsistencyReport {
    Family family;
    std::vector<ConsistencyRow> rows;
    // +1 growing, -1 shrinking, 0 flat within 1% across the grid
    int anbn_trend = 0;
};

ConsistencyReport consistency_examples(const RadialLaw& law, const std::vector<double>& n_grid,
                                       const numeric::QuadratureSpec& spec = {});

}  // namespace sphull
