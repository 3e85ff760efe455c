#ifndef GBC_CORE_HPP
#define GBC_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gbc {

using PointIndex = std::size_t;

/// Label given to points that belong to no cluster.
inline constexpr int kNoiseLabel = -1;

/// Row-major point set of fixed dimension with optional ground-truth labels.
class Dataset {
public:
    Dataset() = default;

    /// `coords` holds size()*dim values, point by point. Throws
    /// std::invalid_argument on a ragged buffer, non-finite coordinates or a
    /// label vector of the wrong length.
    Dataset(std::size_t dim, std::vector<double> coords,
            std::optional<std::vector<int>> labels = std::nullopt);

    static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                             std::optional<std::vector<int>> labels = std::nullopt);

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    bool empty() const { return size() == 0; }

    std::span<const double> point(PointIndex i) const
    {
        return {coords_.data() + i * dim_, dim_};
    }

    const std::vector<double>& coords() const { return coords_; }
    const std::optional<std::vector<int>>& labels() const { return labels_; }
    bool has_labels() const { return labels_.has_value(); }

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    std::optional<std::vector<int>> labels_;
};

/// A granular ball: the members it summarizes, their mean, and the
/// max/sum/average of member-to-center distances.
struct GranularBall {
    std::vector<PointIndex> members;  // ascending
    std::vector<double> center;
    double radius = 0.0;
    double sum_radius = 0.0;
    double avg_distance = 0.0;

    std::size_t size() const { return members.size(); }
};

/// Final partition of a dataset into balls.
struct BallSet {
    std::vector<GranularBall> balls;
    std::vector<std::size_t> overlap_counts;
    std::vector<bool> noise_ball_flags;

    std::size_t size() const { return balls.size(); }
};

struct ClusterAssignment {
    std::vector<int> labels;
    int cluster_count = 0;

    std::size_t noise_count() const;
};

/// Euclidean distance. Every call is tallied on the calling thread's
/// distance counter (see DistanceTally).
double distance(std::span<const double> a, std::span<const double> b);

/// Number of distance() evaluations made on this thread so far, including
/// those folded back from parallel_for workers.
std::uint64_t distance_evaluations();
void add_distance_evaluations(std::uint64_t count);

/// Counts distance() calls made between construction and count().
class DistanceTally {
public:
    DistanceTally() : start_(distance_evaluations()) {}
    std::uint64_t count() const { return distance_evaluations() - start_; }

private:
    std::uint64_t start_;
};

GranularBall fit_ball(const Dataset& dataset, std::vector<PointIndex> members);

double average_distance(const GranularBall& ball);

std::pair<PointIndex, PointIndex> farthest_pair_seed(const Dataset& dataset,
                                                     const GranularBall& ball);

/// Relabels `labels` so non-noise labels become 0..K-1 in order of first
/// appearance. Returns K.
int compact_labels(std::vector<int>& labels);

}  // namespace gbc

#endif  // GBC_CORE_HPP
