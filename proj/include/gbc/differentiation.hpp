#ifndef GBC_DIFFERENTIATION_HPP
#define GBC_DIFFERENTIATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gbc/core.hpp"
#include "gbc/division.hpp"

namespace gbc {

/// For every non-noise ball, the number of other non-noise balls whose
/// center distance is strictly below the sum of radii. Noise balls get 0.
std::vector<std::size_t> count_overlaps(const BallSet& balls, std::size_t threads = 1);

/// Adjustment coefficient: min(r_i, r_j) / (1 + min(o_i, o_j)).
double tau(double radius_i, double radius_j, std::size_t overlaps_i, std::size_t overlaps_j);

/// Center distance minus the sum of radii; negative when the balls overlap.
double ball_gap(const GranularBall& a, const GranularBall& b);

bool are_adjacent(const GranularBall& ball_i, const GranularBall& ball_j, std::size_t overlaps_i,
                  std::size_t overlaps_j);

/// Connected components of the adjacency graph over non-noise balls, using
/// balls.overlap_counts. Components are numbered 0..K-1 by their smallest
/// ball index; noise balls map to kNoiseLabel.
std::vector<int> merge_adjacent(const BallSet& balls, std::size_t threads = 1);

/// Labels each point with its ball's cluster. A noise ball's point joins the
/// cluster of the non-noise ball with the smallest gap (point-to-center
/// distance minus radius) when that gap is at most the mean non-noise radius,
/// and is labeled noise otherwise.
ClusterAssignment assign_noise(const Dataset& dataset, const BallSet& balls,
                               std::span<const int> ball_clusters);

struct GbcResult {
    ClusterAssignment assignment;
    BallSet balls;
    std::vector<int> ball_clusters;
    DivisionTrace trace;
    /// distance() evaluations spent after division (overlaps, adjacency,
    /// noise assignment).
    std::uint64_t differentiation_distance_evaluations = 0;
};

/// Full pipeline: generate_balls, count_overlaps, merge_adjacent, assign_noise.
GbcResult cluster(const Dataset& dataset, const DivisionConfig& config = {});

}  // namespace gbc

#endif  // GBC_DIFFERENTIATION_HPP
