#include "gbc/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "gbc/parallel.hpp"

namespace gbc {

namespace {

thread_local std::uint64_t t_distance_evaluations = 0;

}  // namespace

Dataset::Dataset(std::size_t dim, std::vector<double> coords,
                 std::optional<std::vector<int>> labels)
    : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels))
{
    if (dim_ == 0) {
        throw std::invalid_argument("dataset dimension must be positive");
    }
    if (coords_.size() % dim_ != 0) {
        throw std::invalid_argument("coordinate buffer of size " + std::to_string(coords_.size()) +
                                    " is not a multiple of dimension " + std::to_string(dim_));
    }
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (!std::isfinite(coords_[k])) {
            throw std::invalid_argument("non-finite coordinate at point " +
                                        std::to_string(k / dim_) + ", dimension " +
                                        std::to_string(k % dim_));
        }
    }
    if (labels_ && labels_->size() != size()) {
        throw std::invalid_argument("label count " + std::to_string(labels_->size()) +
                                    " does not match point count " + std::to_string(size()));
    }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows,
                           std::optional<std::vector<int>> labels)
{
    if (rows.empty()) {
        throw std::invalid_argument("cannot infer dimension from zero rows");
    }
    const std::size_t dim = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) {
            throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                        std::to_string(rows[i].size()) + " coordinates, expected " +
                                        std::to_string(dim));
        }
        coords.insert(coords.end(), rows[i].begin(), rows[i].end());
    }
    return Dataset(dim, std::move(coords), std::move(labels));
}

std::size_t ClusterAssignment::noise_count() const
{
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoiseLabel));
}

double distance(std::span<const double> a, std::span<const double> b)
{
    ++t_distance_evaluations;
    double sum = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        const double diff = a[l] - b[l];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

std::uint64_t distance_evaluations() { return t_distance_evaluations; }

void add_distance_evaluations(std::uint64_t count) { t_distance_evaluations += count; }

GranularBall fit_ball(const Dataset& dataset, std::vector<PointIndex> members)
{
    if (members.empty()) {
        throw std::invalid_argument("fit_ball: member set is empty");
    }
    if (!std::is_sorted(members.begin(), members.end())) {
        std::sort(members.begin(), members.end());
    }
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw std::invalid_argument("fit_ball: duplicate member index");
    }
    if (members.back() >= dataset.size()) {
        throw std::invalid_argument("fit_ball: member index " + std::to_string(members.back()) +
                                    " out of range for dataset of size " +
                                    std::to_string(dataset.size()));
    }

    const std::size_t dim = dataset.dim();
    GranularBall ball;
    ball.center.assign(dim, 0.0);
    for (PointIndex i : members) {
        const auto p = dataset.point(i);
        for (std::size_t l = 0; l < dim; ++l) {
            ball.center[l] += p[l];
        }
    }
    const double count = static_cast<double>(members.size());
    for (double& c : ball.center) {
        c /= count;
    }

    for (PointIndex i : members) {
        const double d = distance(dataset.point(i), ball.center);
        ball.sum_radius += d;
        ball.radius = std::max(ball.radius, d);
    }
    ball.avg_distance = ball.sum_radius / count;
    ball.members = std::move(members);
    return ball;
}

double average_distance(const GranularBall& ball)
{
    return ball.members.empty() ? 0.0 : ball.sum_radius / static_cast<double>(ball.members.size());
}

std::pair<PointIndex, PointIndex> farthest_pair_seed(const Dataset& dataset,
                                                     const GranularBall& ball)
{
    if (ball.members.size() < 2) {
        throw std::invalid_argument("farthest_pair_seed: ball needs at least 2 members");
    }
    // Members are ascending, so a strict comparison keeps the lowest index on ties.
    auto farthest_from = [&](std::span<const double> origin) {
        PointIndex best = ball.members.front();
        double best_distance = -1.0;
        for (PointIndex i : ball.members) {
            const double d = distance(dataset.point(i), origin);
            if (d > best_distance) {
                best_distance = d;
                best = i;
            }
        }
        return best;
    };
    const PointIndex first = farthest_from(ball.center);
    const PointIndex second = farthest_from(dataset.point(first));
    return {first, second};
}

int compact_labels(std::vector<int>& labels)
{
    std::unordered_map<int, int> remap;
    for (int& label : labels) {
        if (label == kNoiseLabel) {
            continue;
        }
        auto [it, inserted] = remap.try_emplace(label, static_cast<int>(remap.size()));
        label = it->second;
    }
    return static_cast<int>(remap.size());
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body)
{
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::vector<std::uint64_t> evaluations(threads, 0);
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        const std::size_t chunk = (count + threads - 1) / threads;
        for (std::size_t w = 0; w < threads; ++w) {
            workers.emplace_back([&, w] {
                const std::uint64_t start = distance_evaluations();
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(count, begin + chunk);
                try {
                    for (std::size_t i = begin; i < end; ++i) {
                        body(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
                evaluations[w] = distance_evaluations() - start;
            });
        }
    }
    for (std::uint64_t e : evaluations) {
        add_distance_evaluations(e);
    }
    for (const auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
}

std::size_t default_thread_count()
{
    const char* value = std::getenv("GBC_THREADS");
    if (value == nullptr) {
        return 1;
    }
    std::size_t threads = 0;
    const char* end = value + std::strlen(value);
    auto [ptr, ec] = std::from_chars(value, end, threads);
    if (ec != std::errc() || ptr != end || threads == 0) {
        return 1;
    }
    return threads;
}

}  // namespace gbc
