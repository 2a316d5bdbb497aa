#include "mlgl/optimizer.hpp"

#include <cmath>

namespace mlgl {

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::Converged: return "converged";
        case StopReason::MaxIters: return "max_iters";
        case StopReason::Stalled: return "stalled";
    }
    return "unknown";
}

void SolveConfig::validate() const {
    if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
    if (!(grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");
    if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
        throw InvalidArgument("initial_step must be positive and finite");
    }
    if (!(backtrack_factor > 0.0) || !(backtrack_factor < 1.0)) {
        throw InvalidArgument("backtrack_factor must lie in (0, 1)");
    }
    if (!(armijo_c > 0.0) || !(armijo_c < 1.0)) {
        throw InvalidArgument("armijo_c must lie in (0, 1)");
    }
}

Eigen::VectorXd project_nonnegative(const Eigen::VectorXd& v) {
    return v.cwiseMax(0.0);
}

EdgeWeightVector initial_weights(const MultilayerGraph& g, const SolveConfig& cfg) {
    const int n = g.n_nodes();
    switch (cfg.init_mode) {
        case InitMode::Uniform:
            return EdgeWeightVector(n, Eigen::VectorXd::Ones(edge_count(n)));
        case InitMode::LayerMean: {
            Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
            for (const Layer& layer : g.layers()) mean += layer.adjacency();
            mean /= static_cast<double>(g.n_layers());
            Eigen::VectorXd w = upper_triangular(mean).array() + 0.01;
            return EdgeWeightVector(n, std::move(w));
        }
        case InitMode::Custom: {
            if (cfg.custom_init.size() != edge_count(n)) {
                throw InvalidArgument(
                    "custom_init has length " + std::to_string(cfg.custom_init.size()) +
                    " but the graph needs " + std::to_string(edge_count(n)));
            }
            return EdgeWeightVector(n, project_nonnegative(cfg.custom_init));
        }
    }
    throw InvalidArgument("unknown init mode");
}

namespace {

constexpr double kMinStep = 1e-12;

bool finite_eval(const ObjectiveEval& eval) {
    return std::isfinite(eval.value) && eval.gradient.allFinite();
}

double projected_gradient_norm(const Eigen::VectorXd& w, const Eigen::VectorXd& grad) {
    return (w - project_nonnegative(w - grad)).norm();
}

}  // namespace

SolveResult solve(const MultilayerGraph& g, const HyperParams& h,
                  const SolveConfig& cfg, std::uint64_t seed) {
    (void)seed;  // current init modes are deterministic
    cfg.validate();
    h.validate(g.n_nodes());

    EdgeWeightVector w = initial_weights(g, cfg);
    SolveTrace trace;

    ObjectiveEval eval = objective(w, g, h);
    if (!finite_eval(eval)) {
        throw SolveNumericError("objective is not finite at the initial point",
                                std::move(trace));
    }
    double pg = projected_gradient_norm(w.weights, eval.gradient);
    trace.records.push_back(TraceRecord{0, eval.value, eval.terms, 0.0, pg});
    if (pg <= cfg.grad_tol) {
        trace.reason = StopReason::Converged;
        return SolveResult{std::move(w), std::move(trace)};
    }

    double step = cfg.initial_step;
    for (int t = 1; t <= cfg.max_iters; ++t) {
        // Warm start: allow the step to grow back one notch per iteration,
        // capped at the configured initial step.
        step = std::min(cfg.initial_step, step / cfg.backtrack_factor);

        Eigen::VectorXd w_new;
        bool accepted = false;
        while (step >= kMinStep) {
            w_new = project_nonnegative(w.weights - step * eval.gradient);
            // Sufficient decrease along the projection arc.
            const double directional = eval.gradient.dot(w_new - w.weights);
            const double f_new = objective_value(EdgeWeightVector(w.n_nodes, w_new), g, h);
            if (std::isfinite(f_new) &&
                f_new <= eval.value + cfg.armijo_c * directional) {
                accepted = true;
                break;
            }
            step *= cfg.backtrack_factor;
        }
        if (!accepted) {
            // No acceptable step above the stall threshold: return the best
            // (current) iterate rather than looping forever.
            trace.reason = StopReason::Stalled;
            return SolveResult{std::move(w), std::move(trace)};
        }

        w = EdgeWeightVector(w.n_nodes, std::move(w_new));
        eval = objective(w, g, h);
        if (!finite_eval(eval)) {
            throw SolveNumericError(
                "objective became non-finite at iteration " + std::to_string(t),
                std::move(trace));
        }
        pg = projected_gradient_norm(w.weights, eval.gradient);
        trace.records.push_back(TraceRecord{t, eval.value, eval.terms, step, pg});
        if (pg <= cfg.grad_tol) {
            trace.reason = StopReason::Converged;
            return SolveResult{std::move(w), std::move(trace)};
        }
    }
    trace.reason = StopReason::MaxIters;
    return SolveResult{std::move(w), std::move(trace)};
}

}  // namespace mlgl
