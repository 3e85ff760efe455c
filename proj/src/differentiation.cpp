#include "gbc/differentiation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "gbc/disjoint_set.hpp"
#include "gbc/parallel.hpp"

namespace gbc {

namespace {

bool is_noise(const BallSet& balls, std::size_t k)
{
    return k < balls.noise_ball_flags.size() && balls.noise_ball_flags[k];
}

}  // namespace

std::vector<std::size_t> count_overlaps(const BallSet& balls, std::size_t threads)
{
    const std::size_t m = balls.size();
    std::vector<std::size_t> overlaps(m, 0);
    parallel_for(m, threads, [&](std::size_t i) {
        if (is_noise(balls, i)) {
            return;
        }
        const GranularBall& a = balls.balls[i];
        std::size_t count = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i || is_noise(balls, j)) {
                continue;
            }
            const GranularBall& b = balls.balls[j];
            if (distance(a.center, b.center) < a.radius + b.radius) {
                ++count;
            }
        }
        overlaps[i] = count;
    });
    return overlaps;
}

double tau(double radius_i, double radius_j, std::size_t overlaps_i, std::size_t overlaps_j)
{
    return std::min(radius_i, radius_j) /
           (1.0 + static_cast<double>(std::min(overlaps_i, overlaps_j)));
}

double ball_gap(const GranularBall& a, const GranularBall& b)
{
    return distance(a.center, b.center) - (a.radius + b.radius);
}

bool are_adjacent(const GranularBall& ball_i, const GranularBall& ball_j, std::size_t overlaps_i,
                  std::size_t overlaps_j)
{
    return ball_gap(ball_i, ball_j) < tau(ball_i.radius, ball_j.radius, overlaps_i, overlaps_j);
}

std::vector<int> merge_adjacent(const BallSet& balls, std::size_t threads)
{
    const std::size_t m = balls.size();
    if (balls.overlap_counts.size() != m) {
        throw std::invalid_argument("merge_adjacent: overlap counts missing (" +
                                    std::to_string(balls.overlap_counts.size()) + " for " +
                                    std::to_string(m) + " balls)");
    }

    std::vector<std::vector<std::size_t>> edges(m);
    parallel_for(m, threads, [&](std::size_t i) {
        if (is_noise(balls, i)) {
            return;
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            if (!is_noise(balls, j) &&
                are_adjacent(balls.balls[i], balls.balls[j], balls.overlap_counts[i],
                             balls.overlap_counts[j])) {
                edges[i].push_back(j);
            }
        }
    });

    DisjointSet components(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j : edges[i]) {
            components.unite(i, j);
        }
    }

    std::vector<int> root_label(m, kNoiseLabel);
    std::vector<int> ids(m, kNoiseLabel);
    int next = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (is_noise(balls, i)) {
            continue;
        }
        const std::size_t root = components.find(i);
        if (root_label[root] == kNoiseLabel) {
            root_label[root] = next++;
        }
        ids[i] = root_label[root];
    }
    return ids;
}

ClusterAssignment assign_noise(const Dataset& dataset, const BallSet& balls,
                               std::span<const int> ball_clusters)
{
    if (ball_clusters.size() != balls.size()) {
        throw std::invalid_argument("assign_noise: expected one cluster id per ball");
    }

    ClusterAssignment result;
    result.labels.assign(dataset.size(), kNoiseLabel);

    std::vector<std::size_t> clustered;
    double radius_sum = 0.0;
    int max_id = -1;
    for (std::size_t k = 0; k < balls.size(); ++k) {
        if (is_noise(balls, k)) {
            continue;
        }
        clustered.push_back(k);
        radius_sum += balls.balls[k].radius;
        max_id = std::max(max_id, ball_clusters[k]);
        for (PointIndex i : balls.balls[k].members) {
            result.labels[i] = ball_clusters[k];
        }
    }
    result.cluster_count = max_id + 1;
    if (clustered.empty()) {
        return result;
    }
    const double mean_radius = radius_sum / static_cast<double>(clustered.size());

    for (std::size_t k = 0; k < balls.size(); ++k) {
        if (!is_noise(balls, k)) {
            continue;
        }
        for (PointIndex i : balls.balls[k].members) {
            const auto p = dataset.point(i);
            double best_gap = std::numeric_limits<double>::infinity();
            std::size_t best = clustered.front();
            for (std::size_t c : clustered) {
                const double gap = distance(p, balls.balls[c].center) - balls.balls[c].radius;
                if (gap < best_gap) {
                    best_gap = gap;
                    best = c;
                }
            }
            if (best_gap <= mean_radius) {
                result.labels[i] = ball_clusters[best];
            }
        }
    }
    return result;
}

GbcResult cluster(const Dataset& dataset, const DivisionConfig& config)
{
    GbcResult result;
    result.balls = generate_balls(dataset, config, &result.trace);

    const DistanceTally tally;
    result.balls.overlap_counts = count_overlaps(result.balls, config.threads);
    result.ball_clusters = merge_adjacent(result.balls, config.threads);
    result.assignment = assign_noise(dataset, result.balls, result.ball_clusters);
    result.differentiation_distance_evaluations = tally.count();
    return result;
}

}  // namespace gbc
