#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gbc/data.hpp"
#include "gbc/differentiation.hpp"
#include "gbc/division.hpp"
#include "support.hpp"

using namespace gbc;

namespace {

GranularBall make_ball(std::vector<PointIndex> members, std::vector<double> center, double radius)
{
    GranularBall ball;
    ball.members = std::move(members);
    ball.center = std::move(center);
    ball.radius = radius;
    return ball;
}

BallSet make_set(std::vector<GranularBall> balls)
{
    BallSet set;
    for (const auto& ball : balls) set.noise_ball_flags.push_back(ball.size() == 1);
    set.balls = std::move(balls);
    set.overlap_counts.assign(set.balls.size(), 0);
    return set;
}

}  // namespace

TEST_CASE("count_overlaps")
{
    CHECK(count_overlaps(make_set({make_ball({0, 1}, {0, 0}, 1), make_ball({2, 3}, {3, 0}, 1)})) ==
          std::vector<std::size_t>{0, 0});
    CHECK(count_overlaps(make_set({make_ball({0, 1}, {0, 0}, 1),
                                   make_ball({2, 3}, {1.5, 0}, 1)})) ==
          std::vector<std::size_t>{1, 1});
    CHECK(count_overlaps(make_set({make_ball({0, 1}, {0, 0}, 1), make_ball({2, 3}, {1, 0}, 1),
                                   make_ball({4, 5}, {0.5, 0.5}, 1)})) ==
          std::vector<std::size_t>{2, 2, 2});
    // Tangent balls do not overlap; noise balls are skipped.
    CHECK(count_overlaps(make_set({make_ball({0, 1}, {0, 0}, 1), make_ball({2, 3}, {2, 0}, 1),
                                   make_ball({4}, {0, 0}, 0)})) ==
          std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("tau")
{
    CHECK(tau(0.5, 0.8, 2, 3) == doctest::Approx(0.5 / 3.0));
    CHECK(tau(0.5, 1.0, 0, 0) == 0.5);
    CHECK(tau(1.0, 1.0, 0, 5) == 1.0);
    CHECK(tau(0.8, 0.5, 3, 2) == tau(0.5, 0.8, 2, 3));
}

TEST_CASE("are_adjacent")
{
    const auto a = make_ball({0, 1}, {0, 0}, 1);
    for (std::size_t o = 0; o < 5; ++o) {
        CHECK(are_adjacent(a, make_ball({2, 3}, {1.5, 0}, 1), o, o + 3));
    }
    // Gap 1 against tau 0.5 (radius 1 with one overlap).
    CHECK_FALSE(are_adjacent(a, make_ball({2, 3}, {3, 0}, 1), 1, 1));
    const auto near = make_ball({2, 3}, {2.3, 0}, 1);
    CHECK(ball_gap(a, near) == doctest::Approx(0.3));
    CHECK(are_adjacent(a, near, 0, 0));
}

TEST_CASE("merge_adjacent")
{
    SUBCASE("chain of overlapping balls is one cluster")
    {
        std::vector<GranularBall> balls;
        for (std::size_t i = 0; i < 5; ++i) {
            balls.push_back(make_ball({2 * i, 2 * i + 1}, {1.5 * static_cast<double>(i), 0}, 1));
        }
        BallSet set = make_set(balls);
        set.overlap_counts = count_overlaps(set);
        CHECK(merge_adjacent(set) == std::vector<int>(5, 0));
    }
    SUBCASE("two far groups")
    {
        BallSet set = make_set({make_ball({0, 1}, {0, 0}, 1), make_ball({2, 3}, {100, 0}, 1),
                                make_ball({4, 5}, {1, 0}, 1), make_ball({6, 7}, {101, 0}, 1)});
        set.overlap_counts = count_overlaps(set);
        CHECK(merge_adjacent(set) == std::vector<int>{0, 1, 0, 1});
    }
    SUBCASE("only noise balls")
    {
        BallSet set = make_set({make_ball({0}, {0, 0}, 0), make_ball({1}, {5, 0}, 0)});
        CHECK(merge_adjacent(set) == std::vector<int>{kNoiseLabel, kNoiseLabel});
        const Dataset d = Dataset::from_rows({{0, 0}, {5, 0}});
        const auto assignment = assign_noise(d, set, merge_adjacent(set));
        CHECK(assignment.cluster_count == 0);
        CHECK(assignment.noise_count() == 2);
    }
    SUBCASE("wrong overlap vector size")
    {
        BallSet set = make_set({make_ball({0, 1}, {0, 0}, 1)});
        set.overlap_counts.clear();
        CHECK_THROWS_AS(merge_adjacent(set), std::invalid_argument);
    }
}

TEST_CASE("merge_adjacent matches transitive closure")
{
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        BallSet set = test::random_ballset(rng, 2 + rng.below(19));
        set.overlap_counts = count_overlaps(set);
        const std::size_t m = set.size();
        std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i != j && !set.noise_ball_flags[i] && !set.noise_ball_flags[j])
                    adj[i][j] = are_adjacent(set.balls[i], set.balls[j], set.overlap_counts[i],
                                             set.overlap_counts[j]);
        const auto reach = test::transitive_closure(adj);
        const auto clusters = merge_adjacent(set);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK((clusters[i] == kNoiseLabel) == static_cast<bool>(set.noise_ball_flags[i]));
            for (std::size_t j = 0; j < m; ++j) {
                if (set.noise_ball_flags[i] || set.noise_ball_flags[j]) continue;
                CHECK((clusters[i] == clusters[j]) == reach[i][j]);
            }
        }
        CHECK(merge_adjacent(set, 3) == clusters);
    }
}

TEST_CASE("assign_noise")
{
    const Dataset d = Dataset::from_rows({{0, 0}, {1, 0}, {0.5, 0.2}, {200, 0}, {-1, 0}});
    BallSet set = make_set({make_ball({0, 1, 4}, {0, 0}, 1), make_ball({2}, {0.5, 0.2}, 0),
                            make_ball({3}, {200, 0}, 0)});
    set.overlap_counts = count_overlaps(set);
    const auto clusters = merge_adjacent(set);
    const auto assignment = assign_noise(d, set, clusters);
    CHECK(assignment.labels == std::vector<int>{0, 0, 0, kNoiseLabel, 0});
    CHECK(assignment.cluster_count == 1);
    CHECK(assignment.noise_count() == 1);

    BallSet plain = make_set({make_ball({0, 1}, {0.5, 0}, 0.5), make_ball({2, 3}, {100, 0}, 0.5)});
    plain.overlap_counts = count_overlaps(plain);
    const Dataset pd = Dataset::from_rows({{0, 0}, {1, 0}, {99.5, 0}, {100.5, 0}});
    CHECK(assign_noise(pd, plain, merge_adjacent(plain)).labels == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("cluster recovers the bundled shapes")
{
    for (const char* name : {"moons", "blobs5", "circles"}) {
        CAPTURE(name);
        const BundledDataset& bundled = bundled_dataset(name);
        const Dataset d = generate(bundled.spec);
        const GbcResult result = cluster(d);
        CHECK(result.assignment.cluster_count == static_cast<int>(bundled.baselines.k));
        CHECK(result.assignment.labels.size() == d.size());
        CHECK(result.ball_clusters.size() == result.balls.size());
    }
}

TEST_CASE("cluster on a single tight blob")
{
    GeneratorSpec spec;
    spec.family = Family::blobs;
    spec.n = 500;
    spec.noise_sigma = 0.3;
    spec.seed = 2;
    spec.blobs = {{{1.0, -1.0}, std::nullopt, 1.0}};
    const GbcResult result = cluster(generate(spec));
    CHECK(result.assignment.cluster_count == 1);
    CHECK(result.assignment.noise_count() <= 5);
}

TEST_CASE("differentiation distance budget")
{
    const Dataset d = generate(bundled_dataset("moons").spec);
    const GbcResult result = cluster(d);
    const double m = static_cast<double>(result.balls.size());
    const double n = static_cast<double>(d.size());
    CHECK(static_cast<double>(result.differentiation_distance_evaluations) < n * n / 10);
    // Overlaps and adjacency are pairwise over balls; noise points scan balls.
    CHECK(static_cast<double>(result.differentiation_distance_evaluations) <= 2 * m * m + n * m);
}
