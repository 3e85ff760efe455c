#include "gbc/division.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gbc/parallel.hpp"

namespace gbc {

namespace {

std::vector<double> midpoint(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> mid(a.size());
    for (std::size_t l = 0; l < a.size(); ++l) {
        mid[l] = 0.5 * (a[l] + b[l]);
    }
    return mid;
}

double median_of(std::vector<double> values)
{
    const std::size_t n = values.size();
    const auto upper = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), upper, values.end());
    if (n % 2 == 1) {
        return *upper;
    }
    const double hi = *upper;
    const double lo = *std::max_element(values.begin(), upper);
    return 0.5 * (lo + hi);
}

struct Node {
    GranularBall ball;
    std::size_t id = 0;
};

struct SplitOutcome {
    std::optional<std::pair<GranularBall, GranularBall>> children;
    bool accepted = false;
};

void notify(DivisionTrace& trace, const DivisionRound& round, const std::vector<Node>& a,
            const std::vector<Node>& b)
{
    trace.rounds.push_back(round);
    if (!trace.on_round) {
        return;
    }
    std::vector<GranularBall> live;
    live.reserve(a.size() + b.size());
    for (const auto& node : a) {
        live.push_back(node.ball);
    }
    for (const auto& node : b) {
        live.push_back(node.ball);
    }
    trace.on_round(round, live);
}

}  // namespace

void DivisionConfig::validate() const
{
    if (max_refinement_rounds < 1) {
        throw std::invalid_argument("max_refinement_rounds must be at least 1");
    }
    if (min_split_size && *min_split_size < 2) {
        throw std::invalid_argument("min_split_size must be at least 2, got " +
                                    std::to_string(*min_split_size));
    }
    if (threads < 1) {
        throw std::invalid_argument("threads must be at least 1");
    }
}

std::size_t DivisionConfig::resolved_min_split_size(std::size_t n) const
{
    if (min_split_size) {
        return *min_split_size;
    }
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    return std::max<std::size_t>(2, root);
}

std::optional<std::pair<GranularBall, GranularBall>> split_once(const Dataset& dataset,
                                                                const GranularBall& ball)
{
    if (ball.members.size() < 2) {
        throw std::invalid_argument("split_once: ball needs at least 2 members");
    }
    const auto [p1, p2] = farthest_pair_seed(dataset, ball);
    const std::vector<double> seed_a = midpoint(ball.center, dataset.point(p1));
    const std::vector<double> seed_b = midpoint(ball.center, dataset.point(p2));

    std::vector<PointIndex> group_a;
    std::vector<PointIndex> group_b;
    for (PointIndex i : ball.members) {
        const auto p = dataset.point(i);
        if (distance(p, seed_a) <= distance(p, seed_b)) {
            group_a.push_back(i);
        } else {
            group_b.push_back(i);
        }
    }
    if (group_a.empty() || group_b.empty()) {
        return std::nullopt;
    }
    return std::pair{fit_ball(dataset, std::move(group_a)), fit_ball(dataset, std::move(group_b))};
}

bool should_split(const GranularBall& parent, const GranularBall& child_a,
                  const GranularBall& child_b)
{
    return child_a.avg_distance < parent.avg_distance && child_b.avg_distance < parent.avg_distance;
}

double oversize_threshold(std::span<const double> radii)
{
    if (radii.empty()) {
        throw std::invalid_argument("oversize_threshold: no radii");
    }
    const double mean =
        std::accumulate(radii.begin(), radii.end(), 0.0) / static_cast<double>(radii.size());
    const double median = median_of({radii.begin(), radii.end()});
    return 2.0 * std::max(mean, median);
}

std::vector<std::size_t> detect_oversized(std::span<const GranularBall> balls)
{
    if (balls.empty()) {
        throw std::invalid_argument("detect_oversized: ball sequence is empty");
    }
    std::vector<double> radii;
    radii.reserve(balls.size());
    for (const auto& ball : balls) {
        radii.push_back(ball.radius);
    }
    const double threshold = oversize_threshold(radii);
    std::vector<std::size_t> oversized;
    for (std::size_t k = 0; k < balls.size(); ++k) {
        if (balls[k].radius > threshold) {
            oversized.push_back(k);
        }
    }
    return oversized;
}

BallSet generate_balls(const Dataset& dataset, const DivisionConfig& config,
                       DivisionTrace* trace_out)
{
    if (dataset.empty()) {
        throw std::invalid_argument("generate_balls: dataset is empty");
    }
    config.validate();

    DivisionTrace local;
    DivisionTrace& trace = trace_out != nullptr ? *trace_out : local;
    const std::size_t min_split = config.resolved_min_split_size(dataset.size());
    std::size_t next_id = 0;

    std::vector<PointIndex> all(dataset.size());
    std::iota(all.begin(), all.end(), PointIndex{0});
    std::vector<Node> active;
    active.push_back({fit_ball(dataset, std::move(all)), next_id++});
    std::vector<Node> settled;

    // Quality-driven division.
    for (std::size_t round = 1; !active.empty(); ++round) {
        std::vector<SplitOutcome> outcomes(active.size());
        parallel_for(active.size(), config.threads, [&](std::size_t k) {
            const GranularBall& ball = active[k].ball;
            if (ball.size() < min_split) {
                return;
            }
            auto children = split_once(dataset, ball);
            if (children && should_split(ball, children->first, children->second)) {
                outcomes[k].children = std::move(children);
                outcomes[k].accepted = true;
            }
        });

        std::vector<Node> next;
        std::size_t splits = 0;
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (!outcomes[k].accepted) {
                settled.push_back(std::move(active[k]));
                continue;
            }
            auto& [a, b] = *outcomes[k].children;
            SplitRecord record{active[k].id, next_id, next_id + 1, active[k].ball.avg_distance,
                               a.avg_distance, b.avg_distance, false};
            trace.splits.push_back(record);
            next.push_back({std::move(a), next_id++});
            next.push_back({std::move(b), next_id++});
            ++splits;
        }
        active = std::move(next);
        notify(trace,
               {DivisionPhase::quality, round, settled.size() + active.size(), splits, 0},
               settled, active);
    }

    // Oversized-ball refinement; thresholds are recomputed every round.
    std::vector<Node> balls = std::move(settled);
    const std::vector<Node> none;
    for (std::size_t round = 1;; ++round) {
        std::vector<GranularBall> view;
        view.reserve(balls.size());
        for (const auto& node : balls) {
            view.push_back(node.ball);
        }
        const std::vector<std::size_t> oversized = detect_oversized(view);
        if (oversized.empty()) {
            break;
        }
        if (round > config.max_refinement_rounds) {
            trace.round_cap_reached = true;
            break;
        }

        std::vector<std::optional<std::pair<GranularBall, GranularBall>>> children(oversized.size());
        parallel_for(oversized.size(), config.threads, [&](std::size_t k) {
            children[k] = split_once(dataset, balls[oversized[k]].ball);
        });

        std::vector<Node> next;
        next.reserve(balls.size() + oversized.size());
        std::size_t cursor = 0;
        std::size_t splits = 0;
        for (std::size_t k = 0; k < balls.size(); ++k) {
            if (cursor < oversized.size() && oversized[cursor] == k) {
                auto& split = children[cursor++];
                if (split) {
                    SplitRecord record{balls[k].id, next_id, next_id + 1,
                                       balls[k].ball.avg_distance, split->first.avg_distance,
                                       split->second.avg_distance, true};
                    trace.splits.push_back(record);
                    next.push_back({std::move(split->first), next_id++});
                    next.push_back({std::move(split->second), next_id++});
                    ++splits;
                    continue;
                }
                trace.forced_split_failed = true;
            }
            next.push_back(std::move(balls[k]));
        }
        balls = std::move(next);
        notify(trace,
               {DivisionPhase::refinement, round, balls.size(), splits, oversized.size()},
               balls, none);
        if (trace.forced_split_failed) {
            break;
        }
    }

    std::sort(balls.begin(), balls.end(), [](const Node& a, const Node& b) {
        return a.ball.members.front() < b.ball.members.front();
    });
    BallSet result;
    result.balls.reserve(balls.size());
    for (auto& node : balls) {
        result.noise_ball_flags.push_back(node.ball.size() == 1);
        result.balls.push_back(std::move(node.ball));
    }
    result.overlap_counts.assign(result.balls.size(), 0);
    return result;
}

}  // namespace gbc
