#include "mlgl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mlgl {

namespace detail {

// Kuhn-Munkres with potentials, O(n^3). Internally 1-based; p[j] is the row
// matched to column j (0 = unmatched).
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    for (const auto& row : cost) {
        if (static_cast<int>(row.size()) != n) {
            throw InvalidArgument("hungarian needs a square cost matrix");
        }
    }
    const double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> match(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] != 0) match[p[j] - 1] = j - 1;
    }
    return match;
}

}  // namespace detail

namespace {

double comb2(double m) { return m * (m - 1.0) / 2.0; }

}  // namespace

MetricReport evaluate(const ClusterLabels& pred, const ClusterLabels& truth) {
    const int n = pred.n();
    if (n == 0) throw InvalidArgument("cannot score an empty labeling");
    if (truth.n() != n) {
        throw InvalidArgument("labelings differ in length: " + std::to_string(n) +
                              " vs " + std::to_string(truth.n()));
    }
    for (int l : pred.labels) {
        if (l < 0) throw InvalidArgument("negative predicted label");
    }
    for (int l : truth.labels) {
        if (l < 0) throw InvalidArgument("negative reference label");
    }

    const int kp = pred.n_clusters();
    const int kt = truth.n_clusters();
    std::vector<std::vector<double>> cont(kp, std::vector<double>(kt, 0.0));
    for (int i = 0; i < n; ++i) {
        cont[pred.labels[i]][truth.labels[i]] += 1.0;
    }
    std::vector<double> row_sum(kp, 0.0), col_sum(kt, 0.0);
    for (int c = 0; c < kp; ++c) {
        for (int t = 0; t < kt; ++t) {
            row_sum[c] += cont[c][t];
            col_sum[t] += cont[c][t];
        }
    }

    MetricReport out;

    // Purity: each predicted cluster claims its plurality reference class.
    double plurality = 0.0;
    for (int c = 0; c < kp; ++c) {
        plurality += *std::max_element(cont[c].begin(), cont[c].end());
    }
    out.purity = plurality / n;

    // Accuracy: optimal one-to-one matching on the (padded square) negated
    // contingency table.
    const int dim = std::max(kp, kt);
    std::vector<std::vector<double>> cost(dim, std::vector<double>(dim, 0.0));
    for (int c = 0; c < kp; ++c) {
        for (int t = 0; t < kt; ++t) cost[c][t] = -cont[c][t];
    }
    const std::vector<int> match = detail::hungarian(cost);
    double agree = 0.0;
    for (int c = 0; c < kp; ++c) {
        if (match[c] < kt) agree += cont[c][match[c]];
    }
    out.accuracy = agree / n;

    // Mutual information and entropies in nats, with 0 log 0 = 0.
    double hp = 0.0, ht = 0.0, mi = 0.0;
    for (int c = 0; c < kp; ++c) {
        if (row_sum[c] > 0.0) {
            const double p = row_sum[c] / n;
            hp -= p * std::log(p);
        }
    }
    for (int t = 0; t < kt; ++t) {
        if (col_sum[t] > 0.0) {
            const double p = col_sum[t] / n;
            ht -= p * std::log(p);
        }
    }
    for (int c = 0; c < kp; ++c) {
        for (int t = 0; t < kt; ++t) {
            if (cont[c][t] > 0.0) {
                mi += (cont[c][t] / n) *
                      std::log(cont[c][t] * n / (row_sum[c] * col_sum[t]));
            }
        }
    }
    if (hp == 0.0 && ht == 0.0) {
        out.nmi = 1.0;  // both labelings put everything in one cluster
    } else if (mi <= 0.0 || hp == 0.0 || ht == 0.0) {
        out.nmi = 0.0;
    } else {
        out.nmi = std::clamp(mi / std::sqrt(hp * ht), 0.0, 1.0);
    }

    // Pair counting in closed form from the contingency table.
    const double total_pairs = comb2(static_cast<double>(n));
    double same_both = 0.0, same_pred = 0.0, same_truth = 0.0;
    for (int c = 0; c < kp; ++c) {
        for (int t = 0; t < kt; ++t) same_both += comb2(cont[c][t]);
        same_pred += comb2(row_sum[c]);
    }
    for (int t = 0; t < kt; ++t) same_truth += comb2(col_sum[t]);

    if (total_pairs == 0.0) {
        out.rand_index = 1.0;
        out.adjusted_rand = 1.0;
        return out;
    }
    out.rand_index = (total_pairs + 2.0 * same_both - same_pred - same_truth) / total_pairs;

    const double expected = same_pred * same_truth / total_pairs;
    const double ari_denom = 0.5 * (same_pred + same_truth) - expected;
    out.adjusted_rand = ari_denom == 0.0 ? 1.0 : (same_both - expected) / ari_denom;
    return out;
}

}  // namespace mlgl
