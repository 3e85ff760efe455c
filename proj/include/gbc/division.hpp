#ifndef GBC_DIVISION_HPP
#define GBC_DIVISION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gbc/core.hpp"

namespace gbc {

struct DivisionConfig {
    /// Cap on oversized-ball refinement rounds.
    std::size_t max_refinement_rounds = 100;
    /// Balls with fewer members are not offered for quality-driven splitting.
    /// Unset means max(2, ceil(sqrt(n))) for a dataset of n points.
    std::optional<std::size_t> min_split_size;
    std::size_t threads = 1;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
    std::size_t resolved_min_split_size(std::size_t n) const;
};

enum class DivisionPhase { quality, refinement };

struct DivisionRound {
    DivisionPhase phase = DivisionPhase::quality;
    std::size_t round = 0;
    std::size_t ball_count = 0;       // balls alive after the round
    std::size_t split_count = 0;      // splits performed in the round
    std::size_t oversized_count = 0;  // refinement only: balls flagged at round start
};

/// One split of the division tree. Node ids are assigned in creation order;
/// the root ball is node 0.
struct SplitRecord {
    std::size_t parent_node = 0;
    std::size_t child_a_node = 0;
    std::size_t child_b_node = 0;
    double parent_avg_distance = 0.0;
    double child_a_avg_distance = 0.0;
    double child_b_avg_distance = 0.0;
    bool forced = false;
};

struct DivisionTrace {
    std::vector<DivisionRound> rounds;
    std::vector<SplitRecord> splits;
    bool round_cap_reached = false;
    bool forced_split_failed = false;
    /// Optional observer called after every round with all live balls.
    std::function<void(const DivisionRound&, std::span<const GranularBall>)> on_round;
};

/// Splits a ball around the midpoints between its center and its farthest
/// pair seeds using a single nearest-seed assignment pass. Returns nullopt
/// when one side would be empty.
std::optional<std::pair<GranularBall, GranularBall>> split_once(const Dataset& dataset,
                                                                const GranularBall& ball);

/// True when both children have a strictly smaller average distance.
bool should_split(const GranularBall& parent, const GranularBall& child_a,
                  const GranularBall& child_b);

/// Radius threshold 2 * max(mean, median) over all given radii.
double oversize_threshold(std::span<const double> radii);

/// Indices of balls whose radius exceeds oversize_threshold of all radii.
std::vector<std::size_t> detect_oversized(std::span<const GranularBall> balls);

/// Divides the dataset into granular balls: quality-driven splitting until no
/// ball improves, then forced splitting of oversized balls. Balls come back
/// ordered by smallest member index; overlap counts are zeroed.
BallSet generate_balls(const Dataset& dataset, const DivisionConfig& config,
                       DivisionTrace* trace = nullptr);

}  // namespace gbc

#endif  // GBC_DIVISION_HPP
