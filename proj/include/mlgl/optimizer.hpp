#pragma once

#include <cstdint>
#include <vector>

#include "mlgl/objective.hpp"

namespace mlgl {

enum class InitMode { LayerMean, Uniform, Custom };
enum class StopReason { Converged, MaxIters, Stalled };

const char* to_string(StopReason reason);

struct SolveConfig {
    int max_iters = 2000;
    double grad_tol = 1e-5;
    double initial_step = 1.0;
    double backtrack_factor = 0.5;
    double armijo_c = 1e-4;
    InitMode init_mode = InitMode::LayerMean;
    Eigen::VectorXd custom_init;  // used only when init_mode == Custom

    void validate() const;
};

struct TraceRecord {
    int iter = 0;
    double objective = 0.0;
    TermValues terms;
    double step = 0.0;     // accepted step size (0 on the initial record)
    double pg_norm = 0.0;  // || w - proj(w - grad) ||_2
};

struct SolveTrace {
    std::vector<TraceRecord> records;
    StopReason reason = StopReason::MaxIters;

    int iterations() const {
        return records.empty() ? 0 : records.back().iter;
    }
};

struct SolveResult {
    EdgeWeightVector weights;
    SolveTrace trace;
};

/// Numeric failure mid-solve; carries the trace accumulated so far.
class SolveNumericError : public NumericError {
public:
    SolveNumericError(const std::string& msg, SolveTrace trace)
        : NumericError(msg), trace_(std::move(trace)) {}

    const SolveTrace& trace() const { return trace_; }

private:
    SolveTrace trace_;
};

/// Elementwise max(v, 0): Euclidean projection onto the nonnegative orthant.
Eigen::VectorXd project_nonnegative(const Eigen::VectorXd& v);

/// Starting point per the configured mode. LayerMean averages the layer
/// adjacencies and adds 0.01 to every edge weight so the initial graph is
/// connected; Uniform sets every weight to 1; Custom projects the supplied
/// vector onto the feasible set.
EdgeWeightVector initial_weights(const MultilayerGraph& g, const SolveConfig& cfg);

/// Projected gradient descent with Armijo backtracking along the projection
/// arc. Deterministic for identical inputs; `seed` is reserved for randomized
/// initialization modes and does not affect the current ones.
SolveResult solve(const MultilayerGraph& g, const HyperParams& h,
                  const SolveConfig& cfg, std::uint64_t seed = 0);

}  // namespace mlgl
