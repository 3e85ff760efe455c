#ifndef GBC_BASELINES_HPP
#define GBC_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gbc/core.hpp"

namespace gbc {

struct KMeansConfig {
    std::size_t k = 2;
    std::size_t max_iters = 300;
    double tol = 1e-6;
    std::uint64_t seed = 0;
};

struct DbscanConfig {
    double eps = 0.1;
    std::size_t min_pts = 5;
};

struct DpeakConfig {
    double dc = 0.1;
    std::size_t k = 2;
};

/// Per-point decision-graph quantities. `order` lists points by decreasing
/// density, ties by index; "higher density" means earlier in that order.
struct DpeakState {
    std::vector<std::size_t> rho;
    std::vector<double> delta;
    std::vector<double> gamma;
    /// Nearest earlier point in `order`; the first point maps to itself.
    std::vector<PointIndex> nearest_higher;
    std::vector<PointIndex> order;
};

/// Lloyd's algorithm from k distinct seeded starting points. Labels are the
/// center indices, compacted if a center loses all its points.
ClusterAssignment kmeans(const Dataset& dataset, const KMeansConfig& config);

/// Classic DBSCAN: a point is core when at least min_pts points (itself
/// included) lie within eps. Clusters are numbered in discovery order from
/// the lowest point index; border points join the first cluster that reaches
/// them.
ClusterAssignment dbscan(const Dataset& dataset, const DbscanConfig& config);

/// Cutoff-kernel densities (neighbors strictly within dc) and distances to
/// the nearest denser point.
DpeakState dpeak_state(const Dataset& dataset, double dc);

/// Density peaks: the densest point plus the k-1 other points with the
/// largest rho*delta become centers; every other point takes the label of
/// its nearest denser neighbor.
ClusterAssignment dpeak(const Dataset& dataset, const DpeakConfig& config);

template <typename Config>
struct GridSearchResult {
    Config config;
    double rand_index = 0.0;
    ClusterAssignment assignment;
};

/// Best DBSCAN setting by Rand Index against the dataset's labels over the
/// given grid; ties keep the earliest grid point.
GridSearchResult<DbscanConfig> dbscan_grid_search(const Dataset& dataset,
                                                  std::span<const double> eps_values,
                                                  std::span<const std::size_t> min_pts_values);

GridSearchResult<DpeakConfig> dpeak_grid_search(const Dataset& dataset,
                                                std::span<const double> dc_values,
                                                std::size_t k);

}  // namespace gbc

#endif  // GBC_BASELINES_HPP
