#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "mlgl/metrics.hpp"
#include "mlgl/rng.hpp"

using namespace mlgl;

namespace {

struct PairCounts {
    double same_both = 0, same_truth_only = 0, same_pred_only = 0, diff_both = 0;
    double total() const {
        return same_both + same_truth_only + same_pred_only + diff_both;
    }
};

// O(n^2) loop over node pairs; the reference for both Rand indices.
PairCounts count_pairs(const std::vector<int>& pred, const std::vector<int>& truth) {
    PairCounts c;
    for (size_t i = 0; i < pred.size(); ++i) {
        for (size_t j = i + 1; j < pred.size(); ++j) {
            const bool sp = pred[i] == pred[j];
            const bool st = truth[i] == truth[j];
            if (sp && st) c.same_both += 1;
            else if (!sp && st) c.same_truth_only += 1;
            else if (sp && !st) c.same_pred_only += 1;
            else c.diff_both += 1;
        }
    }
    return c;
}

double rand_reference(const PairCounts& c) {
    return (c.same_both + c.diff_both) / c.total();
}

// Pair-count form of the adjusted index.
double adjusted_rand_reference(const PairCounts& c) {
    const double num = 2 * (c.same_both * c.diff_both
                            - c.same_truth_only * c.same_pred_only);
    const double den =
        (c.same_both + c.same_truth_only) * (c.same_truth_only + c.diff_both)
        + (c.same_both + c.same_pred_only) * (c.same_pred_only + c.diff_both);
    return den == 0.0 ? 1.0 : num / den;
}

// Exhaustive best one-to-one label matching (feasible for <= 5 clusters).
double accuracy_reference(const std::vector<int>& pred, const std::vector<int>& truth) {
    const int kp = 1 + *std::max_element(pred.begin(), pred.end());
    const int kt = 1 + *std::max_element(truth.begin(), truth.end());
    const int k = std::max(kp, kt);
    std::vector<int> assign(k);
    std::iota(assign.begin(), assign.end(), 0);
    double best = 0.0;
    do {
        int agree = 0;
        for (size_t i = 0; i < pred.size(); ++i)
            if (assign[pred[i]] == truth[i]) ++agree;
        best = std::max(best, static_cast<double>(agree) / pred.size());
    } while (std::next_permutation(assign.begin(), assign.end()));
    return best;
}

std::vector<int> random_labels(int n, int k, std::mt19937_64& g) {
    std::vector<int> out(n);
    for (int& v : out) v = rng::uniform_int(g, k);
    return out;
}

}  // namespace

TEST_CASE("perfect prediction scores 1 everywhere") {
    ClusterLabels truth{{0, 1, 2, 0, 1, 2}};
    MetricReport r = evaluate(truth, truth);
    CHECK(r.accuracy == 1.0);
    CHECK(r.purity == 1.0);
    CHECK(r.nmi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.rand_index == 1.0);
    CHECK(r.adjusted_rand == 1.0);
}

TEST_CASE("label names do not matter") {
    ClusterLabels truth{{0, 0, 1, 1, 2, 2}};
    ClusterLabels pred{{2, 2, 0, 0, 1, 1}};
    MetricReport r = evaluate(pred, truth);
    CHECK(r.accuracy == 1.0);
    CHECK(r.nmi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.adjusted_rand == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("collapsing two balanced clusters into one") {
    ClusterLabels truth{{0, 0, 1, 1}};
    ClusterLabels pred{{0, 0, 0, 0}};
    MetricReport r = evaluate(pred, truth);
    CHECK(r.purity == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.accuracy == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.rand_index == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(r.adjusted_rand == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.nmi == 0.0);  // constant prediction carries no information

    PairCounts c = count_pairs(pred.labels, truth.labels);
    CHECK(r.rand_index == doctest::Approx(rand_reference(c)).epsilon(1e-12));
    CHECK(r.adjusted_rand
          == doctest::Approx(adjusted_rand_reference(c)).epsilon(1e-12));
}

TEST_CASE("both Rand indices match the pairwise reference") {
    auto g = rng::make_rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + rng::uniform_int(g, 39);
        std::vector<int> truth = random_labels(n, 1 + rng::uniform_int(g, 5), g);
        std::vector<int> pred = random_labels(n, 1 + rng::uniform_int(g, 5), g);
        MetricReport r = evaluate(ClusterLabels{pred}, ClusterLabels{truth});
        PairCounts c = count_pairs(pred, truth);
        CHECK(r.rand_index == doctest::Approx(rand_reference(c)).epsilon(1e-12));
        CHECK(r.adjusted_rand
              == doctest::Approx(adjusted_rand_reference(c)).epsilon(1e-12));
    }
}

TEST_CASE("accuracy matches the exhaustive matching") {
    auto g = rng::make_rng(32);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 3 + rng::uniform_int(g, 20);
        std::vector<int> truth = random_labels(n, 1 + rng::uniform_int(g, 5), g);
        std::vector<int> pred = random_labels(n, 1 + rng::uniform_int(g, 5), g);
        MetricReport r = evaluate(ClusterLabels{pred}, ClusterLabels{truth});
        CHECK(r.accuracy
              == doctest::Approx(accuracy_reference(pred, truth)).epsilon(1e-12));
    }
}

TEST_CASE("metrics ignore renaming of predicted clusters") {
    auto g = rng::make_rng(33);
    std::vector<int> truth = random_labels(25, 3, g);
    std::vector<int> pred = random_labels(25, 4, g);
    std::vector<int> renamed(pred.size());
    const int map[4] = {2, 3, 1, 0};
    for (size_t i = 0; i < pred.size(); ++i) renamed[i] = map[pred[i]];
    MetricReport a = evaluate(ClusterLabels{pred}, ClusterLabels{truth});
    MetricReport b = evaluate(ClusterLabels{renamed}, ClusterLabels{truth});
    CHECK(a.accuracy == doctest::Approx(b.accuracy).epsilon(1e-12));
    CHECK(a.purity == doctest::Approx(b.purity).epsilon(1e-12));
    CHECK(a.nmi == doctest::Approx(b.nmi).epsilon(1e-12));
    CHECK(a.rand_index == doctest::Approx(b.rand_index).epsilon(1e-12));
    CHECK(a.adjusted_rand == doctest::Approx(b.adjusted_rand).epsilon(1e-12));
}

TEST_CASE("independent labelings have adjusted Rand near zero") {
    auto g = rng::make_rng(34);
    double sum = 0.0;
    const int draws = 1000;
    for (int rep = 0; rep < draws; ++rep) {
        std::vector<int> truth = random_labels(60, 4, g);
        std::vector<int> pred = random_labels(60, 4, g);
        sum += evaluate(ClusterLabels{pred}, ClusterLabels{truth}).adjusted_rand;
    }
    CHECK(std::abs(sum / draws) < 0.02);
}

TEST_CASE("purity never drops below 1/K on balanced truth") {
    auto g = rng::make_rng(35);
    for (int rep = 0; rep < 20; ++rep) {
        const int k = 2 + rng::uniform_int(g, 4);
        std::vector<int> truth;
        for (int c = 0; c < k; ++c) truth.insert(truth.end(), 6, c);
        std::vector<int> pred = random_labels(static_cast<int>(truth.size()), k, g);
        MetricReport r = evaluate(ClusterLabels{pred}, ClusterLabels{truth});
        CHECK(r.purity >= 1.0 / k - 1e-12);
        CHECK(r.purity <= 1.0 + 1e-12);
    }
}

TEST_CASE("single-node labelings count as perfect agreement") {
    MetricReport r = evaluate(ClusterLabels{{0}}, ClusterLabels{{0}});
    CHECK(r.rand_index == 1.0);
    CHECK(r.adjusted_rand == 1.0);
    CHECK(r.nmi == 1.0);
}

TEST_CASE("degenerate entropies follow the documented rules") {
    // Both sides constant: identical one-cluster partitions.
    MetricReport both = evaluate(ClusterLabels{{0, 0, 0}}, ClusterLabels{{1, 1, 1}});
    CHECK(both.nmi == 1.0);
    // Only one side constant: no shared information.
    MetricReport one = evaluate(ClusterLabels{{0, 0, 0}}, ClusterLabels{{0, 1, 2}});
    CHECK(one.nmi == 0.0);
}

TEST_CASE("mismatched or empty labelings are rejected") {
    CHECK_THROWS_AS(evaluate(ClusterLabels{{0, 1}}, ClusterLabels{{0}}),
                    InvalidArgument);
    CHECK_THROWS_AS(evaluate(ClusterLabels{}, ClusterLabels{}), InvalidArgument);
    CHECK_THROWS_AS(evaluate(ClusterLabels{{-1, 0}}, ClusterLabels{{0, 0}}),
                    InvalidArgument);
}

TEST_CASE("assignment solver handles known cost matrices") {
    // Unique optimum on a 3x3 cost matrix: (0,1), (1,0), (2,2).
    std::vector<std::vector<double>> cost = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
    std::vector<int> match = detail::hungarian(cost);
    CHECK(match == std::vector<int>{1, 0, 2});

    // Exhaustive check on random matrices.
    auto g = rng::make_rng(36);
    for (int rep = 0; rep < 30; ++rep) {
        const int k = 2 + rng::uniform_int(g, 4);
        std::vector<std::vector<double>> c(k, std::vector<double>(k));
        for (auto& row : c)
            for (double& v : row) v = rng::uniform(g, 0.0, 10.0);
        std::vector<int> got = detail::hungarian(c);
        double got_cost = 0.0;
        for (int i = 0; i < k; ++i) got_cost += c[i][got[i]];

        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        do {
            double v = 0.0;
            for (int i = 0; i < k; ++i) v += c[i][perm[i]];
            best = std::min(best, v);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(got_cost == doctest::Approx(best).epsilon(1e-12));
    }
}
