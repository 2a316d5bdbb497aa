#include "mlgl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "mlgl/baselines.hpp"
#include "mlgl/clustering.hpp"

namespace mlgl {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void ExperimentConfig::validate() const {
    if (!dataset.synthetic && !dataset.file) {
        throw ConfigError("dataset must specify 'synthetic' or 'file'");
    }
    if (dataset.synthetic && dataset.file) {
        throw ConfigError("dataset cannot be both synthetic and file-backed");
    }
    if (dataset.synthetic) {
        try {
            dataset.synthetic->validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("dataset.synthetic: ") + e.what());
        }
    }
    if (methods.empty()) throw ConfigError("methods must list at least one method");
    for (const std::string& m : methods) {
        const auto& known = baseline_names();
        if (m != kMethodProposed &&
            std::find(known.begin(), known.end(), m) == known.end()) {
            throw ConfigError("unknown method '" + m + "'");
        }
        if (std::count(methods.begin(), methods.end(), m) > 1) {
            throw ConfigError("method '" + m + "' listed more than once");
        }
    }
    auto check_grid = [](const std::vector<double>& grid, const char* name) {
        if (grid.empty()) throw ConfigError(std::string(name) + " must be nonempty");
        for (double v : grid) {
            if (!std::isfinite(v) || v < 0.0) {
                throw ConfigError(std::string(name) + " entries must be finite and >= 0");
            }
        }
    };
    check_grid(gamma1_grid, "gamma1_grid");
    check_grid(gamma2_grid, "gamma2_grid");
    if (k_communities && *k_communities < 1) {
        throw ConfigError("k_communities must be at least 1");
    }
    if (!(eig_floor > 0.0)) throw ConfigError("eig_floor must be positive");
    try {
        solver.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("solver: ") + e.what());
    }
    if (seeds.empty()) throw ConfigError("seeds must be nonempty");
    if (output_dir.empty()) throw ConfigError("output_dir must be nonempty");
}

namespace {

void reject_unknown_keys(const nlohmann::json& j, const char* ctx,
                         std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return it.key() == k;
            }) == allowed.end()) {
            throw ConfigError(std::string(ctx) + ": unknown key '" + it.key() + "'");
        }
    }
}

template <typename T>
T fetch(const nlohmann::json& j, const char* ctx, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string(ctx) + "." + key + " has the wrong type");
    }
}

SyntheticSpec synthetic_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("dataset.synthetic must be an object");
    // The generation seed is taken from the experiment's per-run seed list,
    // so a 'seed' key here would be dead weight and is rejected.
    reject_unknown_keys(j, "dataset.synthetic",
                        {"n_nodes", "n_layers", "n_clusters", "knn_k", "dim"});
    SyntheticSpec spec;
    spec.n_nodes = fetch(j, "dataset.synthetic", "n_nodes", spec.n_nodes);
    spec.n_layers = fetch(j, "dataset.synthetic", "n_layers", spec.n_layers);
    spec.n_clusters = fetch(j, "dataset.synthetic", "n_clusters", spec.n_clusters);
    spec.knn_k = fetch(j, "dataset.synthetic", "knn_k", spec.knn_k);
    spec.dim = fetch(j, "dataset.synthetic", "dim", spec.dim);
    return spec;
}

SolveConfig solver_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("solver must be an object");
    reject_unknown_keys(j, "solver",
                        {"max_iters", "grad_tol", "initial_step", "backtrack_factor",
                         "armijo_c", "init"});
    SolveConfig cfg;
    cfg.max_iters = fetch(j, "solver", "max_iters", cfg.max_iters);
    cfg.grad_tol = fetch(j, "solver", "grad_tol", cfg.grad_tol);
    cfg.initial_step = fetch(j, "solver", "initial_step", cfg.initial_step);
    cfg.backtrack_factor = fetch(j, "solver", "backtrack_factor", cfg.backtrack_factor);
    cfg.armijo_c = fetch(j, "solver", "armijo_c", cfg.armijo_c);
    const std::string init = fetch<std::string>(j, "solver", "init", "layer-mean");
    if (init == "layer-mean") {
        cfg.init_mode = InitMode::LayerMean;
    } else if (init == "uniform") {
        cfg.init_mode = InitMode::Uniform;
    } else {
        throw ConfigError("solver.init must be 'layer-mean' or 'uniform'");
    }
    return cfg;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(j, "config",
                        {"dataset", "methods", "gamma1_grid", "gamma2_grid",
                         "k_communities", "eig_floor", "solver", "seeds", "output_dir"});
    ExperimentConfig cfg;

    if (!j.contains("dataset")) throw ConfigError("config needs a 'dataset' object");
    const nlohmann::json& ds = j.at("dataset");
    if (!ds.is_object()) throw ConfigError("dataset must be an object");
    reject_unknown_keys(ds, "dataset", {"synthetic", "file"});
    if (ds.contains("synthetic")) cfg.dataset.synthetic = synthetic_from_json(ds.at("synthetic"));
    if (ds.contains("file")) {
        cfg.dataset.file = fetch<std::string>(ds, "dataset", "file", "");
    }

    cfg.methods = fetch(j, "config", "methods", cfg.methods);
    cfg.gamma1_grid = fetch(j, "config", "gamma1_grid", cfg.gamma1_grid);
    cfg.gamma2_grid = fetch(j, "config", "gamma2_grid", cfg.gamma2_grid);
    if (j.contains("k_communities")) {
        cfg.k_communities = fetch(j, "config", "k_communities", 0);
    }
    cfg.eig_floor = fetch(j, "config", "eig_floor", cfg.eig_floor);
    if (j.contains("solver")) cfg.solver = solver_from_json(j.at("solver"));
    cfg.seeds = fetch(j, "config", "seeds", cfg.seeds);
    cfg.output_dir = fetch(j, "config", "output_dir", cfg.output_dir);

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

namespace {

constexpr const char* kCsvHeader =
    "method,gamma1,gamma2,seed,accuracy,purity,nmi,rand_index,adjusted_rand,"
    "contrastive,r_eff,r_com,objective,iters,termination";

std::string csv_row(const RunRow& r) {
    std::string line = r.method;
    auto field = [&](const std::string& s) { line += ','; line += s; };
    auto opt_field = [&](const std::optional<double>& v) {
        field(v ? format_double(*v) : std::string());
    };
    opt_field(r.gamma1);
    opt_field(r.gamma2);
    field(std::to_string(r.seed));
    field(format_double(r.metrics.accuracy));
    field(format_double(r.metrics.purity));
    field(format_double(r.metrics.nmi));
    field(format_double(r.metrics.rand_index));
    field(format_double(r.metrics.adjusted_rand));
    field(format_double(r.terms.contrastive));
    field(format_double(r.terms.r_eff));
    field(format_double(r.terms.r_com));
    opt_field(r.objective);
    field(r.iters ? std::to_string(*r.iters) : std::string());
    field(r.termination);
    return line;
}

// Mean and sample standard deviation (0 for a single observation).
nlohmann::json stats_json(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double var = 0.0;
    if (xs.size() > 1) {
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= (n - 1.0);
    }
    return nlohmann::json{{"mean", mean}, {"std", std::sqrt(var)}};
}

struct MetricSamples {
    std::vector<double> accuracy, purity, nmi, rand_index, adjusted_rand;

    void add(const MetricReport& m) {
        accuracy.push_back(m.accuracy);
        purity.push_back(m.purity);
        nmi.push_back(m.nmi);
        rand_index.push_back(m.rand_index);
        adjusted_rand.push_back(m.adjusted_rand);
    }
    double mean_accuracy() const {
        return std::accumulate(accuracy.begin(), accuracy.end(), 0.0) /
               static_cast<double>(accuracy.size());
    }
    nlohmann::json to_json() const {
        return nlohmann::json{{"accuracy", stats_json(accuracy)},
                              {"purity", stats_json(purity)},
                              {"nmi", stats_json(nmi)},
                              {"rand_index", stats_json(rand_index)},
                              {"adjusted_rand", stats_json(adjusted_rand)}};
    }
};

// Weight matrix rows/columns reordered by (truth label, node index), one CSV
// row per node with %.17g entries; the first line records the node order.
void write_adjacency_csv(const fs::path& path, const Eigen::MatrixXd& w,
                         const std::vector<int>& order) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << "# node order:";
    for (int i : order) out << ' ' << i;
    out << "\n";
    const int n = static_cast<int>(order.size());
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (c > 0) out << ',';
            out << format_double(w(order[r], order[c]));
        }
        out << "\n";
    }
}

void write_trace_csv(const fs::path& path, const SolveTrace& trace) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << "iter,objective,contrastive,r_eff,r_com,step,pg_norm\n";
    for (const TraceRecord& r : trace.records) {
        out << r.iter << ',' << format_double(r.objective) << ','
            << format_double(r.terms.contrastive) << ',' << format_double(r.terms.r_eff)
            << ',' << format_double(r.terms.r_com) << ',' << format_double(r.step)
            << ',' << format_double(r.pg_norm) << "\n";
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();

    std::optional<LabeledMultilayer> file_data;
    if (config.dataset.file) file_data = load_multilayer(*config.dataset.file);
    auto dataset_for = [&](std::uint64_t seed) -> LabeledMultilayer {
        if (file_data) return *file_data;
        SyntheticSpec spec = *config.dataset.synthetic;
        spec.seed = seed;
        return generate_synthetic(spec);
    };

    const LabeledMultilayer first = dataset_for(config.seeds.front());
    if (!first.truth) {
        throw DataError("dataset carries no ground-truth labels; scoring needs them");
    }
    const int n = first.graph.n_nodes();
    const int k = config.k_communities.value_or(first.truth->n_clusters());
    if (k < 1 || k >= n) {
        throw ConfigError("k_communities must satisfy 1 <= K < N for this dataset (K=" +
                          std::to_string(k) + ", N=" + std::to_string(n) + ")");
    }

    // Node order for adjacency artifacts: by (truth label, index) of the
    // first seed's dataset.
    std::vector<int> node_order(n);
    std::iota(node_order.begin(), node_order.end(), 0);
    std::stable_sort(node_order.begin(), node_order.end(), [&](int a, int b) {
        return first.truth->labels[a] < first.truth->labels[b];
    });

    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    std::ofstream csv(dir / "results.csv");
    if (!csv) throw DataError("cannot open '" + (dir / "results.csv").string() + "'");
    csv << kCsvHeader << "\n" << std::flush;

    std::vector<std::string> methods = config.methods;
    std::sort(methods.begin(), methods.end());

    ExperimentResult out;
    nlohmann::json summary_methods = nlohmann::json::object();

    struct GridArtifacts {
        double gamma1 = 0.0, gamma2 = 0.0;
        MetricSamples samples;
        Eigen::MatrixXd first_seed_adjacency;
        std::vector<SolveTrace> traces;  // one per seed
    };

    for (const std::string& method : methods) {
        if (method == kMethodProposed) {
            nlohmann::json grid_summary = nlohmann::json::array();
            std::optional<GridArtifacts> best;
            for (double g1 : config.gamma1_grid) {
                for (double g2 : config.gamma2_grid) {
                    GridArtifacts point;
                    point.gamma1 = g1;
                    point.gamma2 = g2;
                    for (std::uint64_t seed : config.seeds) {
                        const LabeledMultilayer data = dataset_for(seed);
                        HyperParams h;
                        h.gamma1 = g1;
                        h.gamma2 = g2;
                        h.k_communities = k;
                        h.eig_floor = config.eig_floor;
                        SolveResult res = solve(data.graph, h, config.solver, seed);
                        const LaplacianMatrix L = laplacian_from_weights(res.weights);
                        const ClusterLabels labels = spectral_clustering(L, k, seed);

                        RunRow row;
                        row.method = method;
                        row.gamma1 = g1;
                        row.gamma2 = g2;
                        row.seed = seed;
                        row.metrics = evaluate(labels, *data.truth);
                        row.terms = res.trace.records.back().terms;
                        row.objective = res.trace.records.back().objective;
                        row.iters = res.trace.iterations();
                        row.termination = to_string(res.trace.reason);
                        csv << csv_row(row) << "\n" << std::flush;

                        point.samples.add(row.metrics);
                        if (seed == config.seeds.front()) {
                            point.first_seed_adjacency = weight_matrix(res.weights);
                        }
                        point.traces.push_back(std::move(res.trace));
                        out.rows.push_back(std::move(row));
                    }
                    nlohmann::json entry = point.samples.to_json();
                    entry["gamma1"] = g1;
                    entry["gamma2"] = g2;
                    grid_summary.push_back(entry);
                    if (!best || point.samples.mean_accuracy() >
                                     best->samples.mean_accuracy()) {
                        best = std::move(point);
                    }
                }
            }
            nlohmann::json best_json = best->samples.to_json();
            best_json["gamma1"] = best->gamma1;
            best_json["gamma2"] = best->gamma2;
            summary_methods[method] = {{"grid", grid_summary}, {"best", best_json}};

            write_adjacency_csv(dir / ("adjacency_" + method + ".csv"),
                                best->first_seed_adjacency, node_order);
            for (std::size_t i = 0; i < config.seeds.size(); ++i) {
                write_trace_csv(dir / ("trace_proposed_" +
                                       std::to_string(config.seeds[i]) + ".csv"),
                                best->traces[i]);
            }
        } else {
            MetricSamples samples;
            for (std::uint64_t seed : config.seeds) {
                const LabeledMultilayer data = dataset_for(seed);
                const LaplacianMatrix L = run_baseline(method, data.graph);
                const EdgeWeightVector w = weights_from_laplacian(L);
                const ClusterLabels labels = spectral_clustering(L, k, seed);

                RunRow row;
                row.method = method;
                row.seed = seed;
                row.metrics = evaluate(labels, *data.truth);
                row.terms = objective_terms(w, data.graph, k, config.eig_floor);
                csv << csv_row(row) << "\n" << std::flush;

                samples.add(row.metrics);
                if (seed == config.seeds.front()) {
                    write_adjacency_csv(dir / ("adjacency_" + method + ".csv"),
                                        weight_matrix(w), node_order);
                }
                out.rows.push_back(std::move(row));
            }
            summary_methods[method] = samples.to_json();
        }
    }

    out.summary = nlohmann::json{{"dataset", first.provenance},
                                 {"n_nodes", n},
                                 {"n_layers", first.graph.n_layers()},
                                 {"k_communities", k},
                                 {"n_seeds", config.seeds.size()},
                                 {"methods", summary_methods}};
    std::ofstream summary_out(dir / "summary.json");
    if (!summary_out) {
        throw DataError("cannot open '" + (dir / "summary.json").string() + "'");
    }
    summary_out << out.summary.dump(2) << "\n";
    return out;
}

}  // namespace mlgl
