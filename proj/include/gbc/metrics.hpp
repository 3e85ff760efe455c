#ifndef GBC_METRICS_HPP
#define GBC_METRICS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbc/core.hpp"

namespace gbc {

/// Fraction of point pairs on which two labelings agree (both together or
/// both apart). The noise label is compared like any other label. Throws
/// std::invalid_argument on length mismatch or fewer than two points.
double rand_index(std::span<const int> labels_a, std::span<const int> labels_b);

struct BenchReport {
    std::string algorithm;
    std::string dataset;
    double wall_time = 0.0;  // seconds, median over repetitions
    std::optional<double> rand_index;
    int cluster_count = 0;
    std::size_t noise_count = 0;
    std::vector<double> repetition_times;
    /// True when every repetition produced the same labels.
    bool stable = true;
};

using ClusteringRunner = std::function<ClusterAssignment(const Dataset&)>;

/// Times `repetitions` runs of `runner` on `dataset` and reports the median.
BenchReport benchmark(const std::string& algorithm, const ClusteringRunner& runner,
                      const Dataset& dataset, const std::string& dataset_name,
                      std::size_t repetitions);

/// Column names matching bench_csv_row.
std::string bench_csv_header();
std::string bench_csv_row(const BenchReport& report);

}  // namespace gbc

#endif  // GBC_METRICS_HPP
