#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphull/hull_engine.hpp"
#include "sphull/numeric/integrate.hpp"
#include "sphull/predictor.hpp"
#include "sphull/radial_models.hpp"

namespace sphull::harness {

// ---- tables -------------------------------------------------------------

// Shortest round-trip decimal form; '.' separator, no locale.
std::string fmt(double v);
std::string fmt(std::uint64_t v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::size_t column(const std::string& name) const;  // throws Join if absent
    std::string to_csv() const;
    std::string to_json() const;
};

Table read_csv(const std::string& path);
Table parse_csv(const std::string& text);
void write_file(const std::string& path, const std::string& content);

// ---- configuration --------------------------------------------------------

struct ExperimentConfig {
    std::vector<std::string> laws;
    int d = 2;
    std::vector<std::size_t> n_list;
    std::vector<Quantity> quantities{Quantity::Vn};
    std::vector<FormulaId> formulas;
    std::size_t replications = 100;
    std::uint64_t master_seed = 0;
    numeric::QuadratureSpec quadrature{};
    double epsilon = 0.1;
    NormingSource norming = NormingSource::FBased;
    bool verify = true;
    std::string out_dir = "sphull_out";
    std::string format = "csv";
    unsigned workers = 1;  // not part of the run identity

    void validate() const;
    // canonical text of every field that affects results
    std::string canonical() const;
};

// Sections [law] [experiment] [quadrature] [output], key = value lines,
// '#' comments. Lists are comma separated; several laws are separated by ';'.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

std::string version_string();
std::string run_id(const ExperimentConfig& cfg);

// ---- stage tables -----------------------------------------------------------

struct StageOptions {
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
    numeric::QuadratureSpec quadrature{};
    double epsilon = 0.1;
    NormingSource norming = NormingSource::FBased;
    bool timing = false;
};

struct CellFailure {
    std::string stage;
    std::string cell;
    std::string kind;
    std::string message;
};

Table simulate_header();
Table predict_header();
Table verify_header();
Table tails_header();

void simulate_rows(Table& t, const RadialLaw& law, int d, std::size_t n, const std::vector<Quantity>& qs,
                   std::size_t replications, const StageOptions& o);
void predict_rows(Table& t, const RadialLaw& law, int d, double n, const std::vector<FormulaId>& ids,
                  const StageOptions& o, std::vector<CellFailure>* failures);
void verify_rows(Table& t, const RadialLaw& law, int d, double n, const StageOptions& o,
                 std::vector<CellFailure>* failures);
// derived: "" (F itself), "Q", "H", "K" or "Kstar"
void tails_rows(Table& t, const RadialLaw& law, int d, const std::string& derived, const StageOptions& o,
                std::vector<CellFailure>* failures);

// ---- experiment -------------------------------------------------------------

struct RunRecord {
    std::string run_id;
    std::string started;
    std::string finished;
    std::vector<std::string> files;
    std::vector<CellFailure> failures;
    std::string manifest_path;
};

RunRecord run_experiment(const ExperimentConfig& cfg);

// ---- comparison ------------------------------------------------------------

struct CompareOptions {
    double tol_rel = 0.15;
};

struct CompareResult {
    Table report;
    bool gate_passed = true;
    std::vector<std::string> gate_notes;
};

// Joins simulate and predict tables on (law, params, d, n) with quantity
// v_n<->Vn2d/Example1Vn/Example2Vn, A_n<->An2d, l_n<->Ln2d.
CompareResult compare_report(const Table& sim, const Table& pred, const CompareOptions& o = {});

}  // namespace sphull::harness
