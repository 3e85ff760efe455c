#include "gbc/baselines.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "gbc/metrics.hpp"
#include "gbc/random.hpp"

namespace gbc {

namespace {

constexpr int kUnvisited = -2;

std::size_t nearest_center(const Dataset& dataset, PointIndex i,
                           const std::vector<std::vector<double>>& centers)
{
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = distance(dataset.point(i), centers[c]);
        if (d < best_distance) {
            best_distance = d;
            best = c;
        }
    }
    return best;
}

std::vector<PointIndex> region_query(const Dataset& dataset, PointIndex i, double eps)
{
    std::vector<PointIndex> neighbors;
    const auto p = dataset.point(i);
    for (PointIndex j = 0; j < dataset.size(); ++j) {
        if (distance(p, dataset.point(j)) <= eps) {
            neighbors.push_back(j);
        }
    }
    return neighbors;
}

const std::vector<int>& truth_labels(const Dataset& dataset)
{
    if (!dataset.has_labels()) {
        throw std::invalid_argument("grid search needs a dataset with ground-truth labels");
    }
    return *dataset.labels();
}

}  // namespace

ClusterAssignment kmeans(const Dataset& dataset, const KMeansConfig& config)
{
    const std::size_t n = dataset.size();
    if (config.k < 1 || config.k > n) {
        throw std::invalid_argument("kmeans: k = " + std::to_string(config.k) +
                                    " must be between 1 and the point count " + std::to_string(n));
    }
    if (config.max_iters < 1) {
        throw std::invalid_argument("kmeans: max_iters must be at least 1");
    }
    if (!(config.tol >= 0.0)) {
        throw std::invalid_argument("kmeans: tol must be non-negative");
    }

    // k distinct starting points by a partial Fisher-Yates shuffle.
    Rng rng(config.seed);
    std::vector<PointIndex> indices(n);
    std::iota(indices.begin(), indices.end(), PointIndex{0});
    std::vector<std::vector<double>> centers;
    for (std::size_t c = 0; c < config.k; ++c) {
        const std::size_t pick = c + rng.below(n - c);
        std::swap(indices[c], indices[pick]);
        const auto p = dataset.point(indices[c]);
        centers.emplace_back(p.begin(), p.end());
    }

    const std::size_t dim = dataset.dim();
    std::vector<int> labels(n, 0);
    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        for (PointIndex i = 0; i < n; ++i) {
            labels[i] = static_cast<int>(nearest_center(dataset, i, centers));
        }
        std::vector<std::vector<double>> sums(config.k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(config.k, 0);
        for (PointIndex i = 0; i < n; ++i) {
            const auto p = dataset.point(i);
            auto& sum = sums[static_cast<std::size_t>(labels[i])];
            for (std::size_t l = 0; l < dim; ++l) {
                sum[l] += p[l];
            }
            ++counts[static_cast<std::size_t>(labels[i])];
        }
        double shift = 0.0;
        for (std::size_t c = 0; c < config.k; ++c) {
            if (counts[c] == 0) {
                continue;  // an empty cluster keeps its center
            }
            for (double& s : sums[c]) {
                s /= static_cast<double>(counts[c]);
            }
            shift = std::max(shift, distance(centers[c], sums[c]));
            centers[c] = std::move(sums[c]);
        }
        if (shift < config.tol) {
            break;
        }
    }
    for (PointIndex i = 0; i < n; ++i) {
        labels[i] = static_cast<int>(nearest_center(dataset, i, centers));
    }

    // Compact in center order so surviving labels keep their center index.
    std::vector<bool> used(config.k, false);
    for (int label : labels) {
        used[static_cast<std::size_t>(label)] = true;
    }
    std::vector<int> remap(config.k, kNoiseLabel);
    int next = 0;
    for (std::size_t c = 0; c < config.k; ++c) {
        if (used[c]) {
            remap[c] = next++;
        }
    }
    ClusterAssignment result;
    result.labels.reserve(n);
    for (int label : labels) {
        result.labels.push_back(remap[static_cast<std::size_t>(label)]);
    }
    result.cluster_count = next;
    return result;
}

ClusterAssignment dbscan(const Dataset& dataset, const DbscanConfig& config)
{
    if (!(config.eps > 0.0)) {
        throw std::invalid_argument("dbscan: eps must be positive");
    }
    if (config.min_pts < 1) {
        throw std::invalid_argument("dbscan: min_pts must be at least 1");
    }

    const std::size_t n = dataset.size();
    std::vector<int> labels(n, kUnvisited);
    int cluster = 0;
    for (PointIndex i = 0; i < n; ++i) {
        if (labels[i] != kUnvisited) {
            continue;
        }
        const auto seeds = region_query(dataset, i, config.eps);
        if (seeds.size() < config.min_pts) {
            labels[i] = kNoiseLabel;
            continue;
        }
        labels[i] = cluster;
        std::deque<PointIndex> frontier(seeds.begin(), seeds.end());
        while (!frontier.empty()) {
            const PointIndex j = frontier.front();
            frontier.pop_front();
            if (labels[j] == kNoiseLabel) {
                labels[j] = cluster;  // border point
                continue;
            }
            if (labels[j] != kUnvisited) {
                continue;
            }
            labels[j] = cluster;
            const auto neighbors = region_query(dataset, j, config.eps);
            if (neighbors.size() >= config.min_pts) {
                frontier.insert(frontier.end(), neighbors.begin(), neighbors.end());
            }
        }
        ++cluster;
    }

    ClusterAssignment result;
    result.labels = std::move(labels);
    result.cluster_count = cluster;
    return result;
}

DpeakState dpeak_state(const Dataset& dataset, double dc)
{
    if (!(dc > 0.0)) {
        throw std::invalid_argument("dpeak: dc must be positive");
    }
    const std::size_t n = dataset.size();
    DpeakState state;
    state.rho.assign(n, 0);
    for (PointIndex i = 0; i < n; ++i) {
        const auto p = dataset.point(i);
        std::size_t count = 0;
        for (PointIndex j = 0; j < n; ++j) {
            if (j != i && distance(p, dataset.point(j)) < dc) {
                ++count;
            }
        }
        state.rho[i] = count;
    }

    state.order.resize(n);
    std::iota(state.order.begin(), state.order.end(), PointIndex{0});
    std::stable_sort(state.order.begin(), state.order.end(),
                     [&](PointIndex a, PointIndex b) { return state.rho[a] > state.rho[b]; });

    state.delta.assign(n, 0.0);
    state.nearest_higher.assign(n, 0);
    state.gamma.assign(n, 0.0);
    if (n == 0) {
        return state;
    }

    const PointIndex top = state.order.front();
    state.nearest_higher[top] = top;
    for (PointIndex j = 0; j < n; ++j) {
        if (j != top) {
            state.delta[top] = std::max(state.delta[top], distance(dataset.point(top), dataset.point(j)));
        }
    }
    // delta_i = min over denser j of d(i, j), scanned over all pairs as in
    // the full distance matrix formulation. Equal distances go to the
    // denser point.
    std::vector<std::size_t> rank(n);
    for (std::size_t k = 0; k < n; ++k) {
        rank[state.order[k]] = k;
    }
    for (PointIndex i = 0; i < n; ++i) {
        if (i == top) {
            continue;
        }
        const auto p = dataset.point(i);
        double best = std::numeric_limits<double>::infinity();
        PointIndex nearest = top;
        for (PointIndex j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            const double d = distance(p, dataset.point(j));
            if (rank[j] < rank[i] && (d < best || (d == best && rank[j] < rank[nearest]))) {
                best = d;
                nearest = j;
            }
        }
        state.delta[i] = best;
        state.nearest_higher[i] = nearest;
    }
    for (PointIndex i = 0; i < n; ++i) {
        state.gamma[i] = static_cast<double>(state.rho[i]) * state.delta[i];
    }
    return state;
}

ClusterAssignment dpeak(const Dataset& dataset, const DpeakConfig& config)
{
    const std::size_t n = dataset.size();
    if (config.k < 1 || config.k > n) {
        throw std::invalid_argument("dpeak: k = " + std::to_string(config.k) +
                                    " must be between 1 and the point count " + std::to_string(n));
    }
    const DpeakState state = dpeak_state(dataset, config.dc);

    // The densest point has no denser neighbor to inherit from, so it is
    // always a center.
    std::vector<bool> is_center(n, false);
    is_center[state.order.front()] = true;
    std::vector<PointIndex> ranked(state.order.begin() + 1, state.order.end());
    std::stable_sort(ranked.begin(), ranked.end(), [&](PointIndex a, PointIndex b) {
        if (state.gamma[a] != state.gamma[b]) {
            return state.gamma[a] > state.gamma[b];
        }
        return a < b;
    });
    for (std::size_t c = 0; c + 1 < config.k; ++c) {
        is_center[ranked[c]] = true;
    }

    ClusterAssignment result;
    result.labels.assign(n, kNoiseLabel);
    int next = 0;
    for (PointIndex i : state.order) {
        result.labels[i] =
            is_center[i] ? next++ : result.labels[state.nearest_higher[i]];
    }
    result.cluster_count = next;
    return result;
}

GridSearchResult<DbscanConfig> dbscan_grid_search(const Dataset& dataset,
                                                  std::span<const double> eps_values,
                                                  std::span<const std::size_t> min_pts_values)
{
    const auto& truth = truth_labels(dataset);
    std::optional<GridSearchResult<DbscanConfig>> best;
    for (double eps : eps_values) {
        for (std::size_t min_pts : min_pts_values) {
            DbscanConfig config{eps, min_pts};
            auto assignment = dbscan(dataset, config);
            const double score = rand_index(truth, assignment.labels);
            if (!best || score > best->rand_index) {
                best = GridSearchResult<DbscanConfig>{config, score, std::move(assignment)};
            }
        }
    }
    if (!best) {
        throw std::invalid_argument("dbscan_grid_search: empty grid");
    }
    return *best;
}

GridSearchResult<DpeakConfig> dpeak_grid_search(const Dataset& dataset,
                                                std::span<const double> dc_values, std::size_t k)
{
    const auto& truth = truth_labels(dataset);
    std::optional<GridSearchResult<DpeakConfig>> best;
    for (double dc : dc_values) {
        DpeakConfig config{dc, k};
        auto assignment = dpeak(dataset, config);
        const double score = rand_index(truth, assignment.labels);
        if (!best || score > best->rand_index) {
            best = GridSearchResult<DpeakConfig>{config, score, std::move(assignment)};
        }
    }
    if (!best) {
        throw std::invalid_argument("dpeak_grid_search: empty grid");
    }
    return *best;
}

}  // namespace gbc
