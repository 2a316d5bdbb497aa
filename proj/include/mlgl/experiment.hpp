#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlgl/data.hpp"
#include "mlgl/metrics.hpp"
#include "mlgl/optimizer.hpp"

namespace mlgl {

inline constexpr const char* kMethodProposed = "proposed";
inline constexpr const char* kMethodArithmeticMean = "arithmetic-mean";

/// Either a synthetic dataset (regenerated per run seed) or a file on disk
/// (loaded once and shared across seeds).
struct DatasetConfig {
    std::optional<SyntheticSpec> synthetic;
    std::optional<std::string> file;
};

struct ExperimentConfig {
    DatasetConfig dataset;
    std::vector<std::string> methods = {kMethodProposed, kMethodArithmeticMean};
    std::vector<double> gamma1_grid = {0.01, 0.1, 1.0};
    std::vector<double> gamma2_grid = {0.1, 1.0, 10.0};
    std::optional<int> k_communities;  // default: the ground-truth cluster count
    double eig_floor = 1e-8;
    SolveConfig solver;
    std::vector<std::uint64_t> seeds = {0};
    std::string output_dir = "out";

    void validate() const;  // throws ConfigError
};

/// Parses a config object; unknown keys and malformed values raise
/// ConfigError naming the offending key.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// One line of results.csv.
struct RunRow {
    std::string method;
    std::optional<double> gamma1;  // empty for baselines
    std::optional<double> gamma2;
    std::uint64_t seed = 0;
    MetricReport metrics;
    TermValues terms;
    std::optional<double> objective;  // empty for baselines
    std::optional<int> iters;
    std::string termination;  // empty for baselines
};

struct ExperimentResult {
    std::vector<RunRow> rows;
    nlohmann::json summary;
};

/// Runs every configured (method, grid point, seed) combination, writing
/// results.csv (flushed row by row), summary.json, adjacency_<method>.csv
/// and trace_proposed_<seed>.csv under output_dir. Fully deterministic for a
/// fixed config: reruns reproduce results.csv bit for bit.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Doubles formatted with up to 17 significant digits (shortest form that
/// round-trips is not required; the fixed %.17g formatting is).
std::string format_double(double v);

}  // namespace mlgl
