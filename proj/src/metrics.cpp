#include "gbc/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "gbc/data.hpp"

namespace gbc {

namespace {

std::uint64_t pairs(std::uint64_t count) { return count * (count - (count > 0 ? 1 : 0)) / 2; }

}  // namespace

double rand_index(std::span<const int> labels_a, std::span<const int> labels_b)
{
    if (labels_a.size() != labels_b.size()) {
        throw std::invalid_argument("rand_index: label vectors differ in length (" +
                                    std::to_string(labels_a.size()) + " vs " +
                                    std::to_string(labels_b.size()) + ")");
    }
    if (labels_a.size() < 2) {
        throw std::invalid_argument("rand_index: at least two points are required");
    }

    std::map<std::pair<int, int>, std::uint64_t> joint;
    std::map<int, std::uint64_t> rows;
    std::map<int, std::uint64_t> columns;
    for (std::size_t i = 0; i < labels_a.size(); ++i) {
        ++joint[{labels_a[i], labels_b[i]}];
        ++rows[labels_a[i]];
        ++columns[labels_b[i]];
    }
    std::uint64_t together_both = 0;
    for (const auto& [key, count] : joint) {
        together_both += pairs(count);
    }
    std::uint64_t together_a = 0;
    for (const auto& [key, count] : rows) {
        together_a += pairs(count);
    }
    std::uint64_t together_b = 0;
    for (const auto& [key, count] : columns) {
        together_b += pairs(count);
    }
    const std::uint64_t total = pairs(labels_a.size());
    const std::uint64_t agreements = total + 2 * together_both - together_a - together_b;
    return static_cast<double>(agreements) / static_cast<double>(total);
}

BenchReport benchmark(const std::string& algorithm, const ClusteringRunner& runner,
                      const Dataset& dataset, const std::string& dataset_name,
                      std::size_t repetitions)
{
    if (repetitions < 1) {
        throw std::invalid_argument("benchmark: repetitions must be at least 1");
    }
    BenchReport report;
    report.algorithm = algorithm;
    report.dataset = dataset_name;

    ClusterAssignment first;
    for (std::size_t r = 0; r < repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        ClusterAssignment result = runner(dataset);
        const auto stop = std::chrono::steady_clock::now();
        report.repetition_times.push_back(std::chrono::duration<double>(stop - start).count());
        if (r == 0) {
            first = std::move(result);
        } else if (result.labels != first.labels) {
            report.stable = false;
        }
    }

    std::vector<double> sorted = report.repetition_times;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    report.wall_time = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    report.cluster_count = first.cluster_count;
    report.noise_count = first.noise_count();
    if (dataset.has_labels() && dataset.size() >= 2) {
        report.rand_index = rand_index(*dataset.labels(), first.labels);
    }
    return report;
}

std::string bench_csv_header()
{
    return "algorithm,dataset,wall_time_seconds,rand_index,cluster_count,noise_count";
}

std::string bench_csv_row(const BenchReport& report)
{
    return report.algorithm + "," + report.dataset + "," + format_real(report.wall_time) + "," +
           (report.rand_index ? format_real(*report.rand_index) : std::string()) + "," +
           std::to_string(report.cluster_count) + "," + std::to_string(report.noise_count);
}

}  // namespace gbc
