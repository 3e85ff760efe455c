// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gbc/baselines.hpp"
#include "gbc/cli.hpp"
#include "gbc/data.hpp"
#include "gbc/differentiation.hpp"
#include "gbc/division.hpp"
#include "gbc/metrics.hpp"
#include "support.hpp"

using namespace gbc;

namespace {

struct Verdict {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what)
    {
        pass = pass && ok;
        if (!ok) notes.push_back(what);
    }
};

int cli(const std::vector<std::string>& args, std::string* err_text = nullptr)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    if (err_text) *err_text = err.str();
    return code;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Dataset random_dataset(Rng& rng)
{
    const std::size_t dim = 1 + rng.below(3);
    const std::size_t n = 20 + rng.below(281);
    const std::size_t groups = 1 + rng.below(4);
    std::vector<std::vector<double>> centers(groups, std::vector<double>(dim));
    std::vector<double> sigmas(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        for (double& c : centers[g]) c = rng.uniform() * 20.0 - 10.0;
        sigmas[g] = 0.05 + 2.0 * rng.uniform();
    }
    const bool duplicates = rng.uniform() < 0.2;
    std::vector<double> coords;
    for (std::size_t i = 0; i < n; ++i) {
        if (duplicates && i > 0 && rng.uniform() < 0.3) {
            const std::size_t j = rng.below(i);
            for (std::size_t k = 0; k < dim; ++k) coords.push_back(coords[j * dim + k]);
            continue;
        }
        const std::size_t g = rng.below(groups);
        for (std::size_t k = 0; k < dim; ++k) coords.push_back(centers[g][k] + sigmas[g] * rng.normal());
    }
    return Dataset(dim, std::move(coords));
}

bool is_partition(std::span<const GranularBall> balls, std::size_t n)
{
    std::vector<int> seen(n, 0);
    for (const auto& ball : balls)
        for (PointIndex i : ball.members) {
            if (i >= n) return false;
            ++seen[i];
        }
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

bool close_rel(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------- criteria

Verdict parameter_free(const test::TempDir& dir)
{
    Verdict v;
    for (const auto& bundled : bundled_datasets()) {
        const std::string prefix = (dir / ("c1-" + bundled.name)).string();
        v.check(cli({"run", "--algo", "gbc", "--dataset", bundled.name, "--out", prefix}) == 0,
                "gbc run failed on " + bundled.name);
    }
    for (const std::string flag : {"--k", "--eps", "--min-pts", "--dc", "--max-iters", "--tol"}) {
        std::string err;
        const int code = cli({"run", "--algo", "gbc", "--dataset", "moons", flag, "1"}, &err);
        v.check(code == cli::kUsageError &&
                    err.find("gbc takes no algorithm parameters") != std::string::npos,
                "guard accepted " + flag);
    }
    return v;
}

Verdict shape_recovery(const std::string& name, int clusters, double min_ri, double max_seconds)
{
    Verdict v;
    const Dataset d = generate(bundled_dataset(name).spec);
    const auto start = std::chrono::steady_clock::now();
    const GbcResult result = cluster(d);
    const double elapsed = seconds_since(start);
    const double ri = rand_index(*d.labels(), result.assignment.labels);
    std::ostringstream detail;
    detail << "clusters=" << result.assignment.cluster_count << " rand_index=" << ri
           << " seconds=" << elapsed;
    v.check(result.assignment.cluster_count == clusters, "wrong cluster count: " + detail.str());
    v.check(ri >= min_ri, "rand index too low: " + detail.str());
    v.check(elapsed < max_seconds, "too slow: " + detail.str());
    v.notes.push_back(detail.str());
    return v;
}

Verdict runtime_ordering()
{
    Verdict v;
    const BundledDataset& bundled = bundled_dataset("blobs10k");
    const Dataset d = generate(bundled.spec);
    const auto& p = bundled.baselines;
    const auto gbc_report = benchmark(
        "gbc", [](const Dataset& x) { return cluster(x).assignment; }, d, bundled.name, 3);
    const auto dbscan_report = benchmark(
        "dbscan", [&](const Dataset& x) { return dbscan(x, {p.eps, p.min_pts}); }, d, bundled.name, 3);
    const auto dpeak_report = benchmark(
        "dpeak", [&](const Dataset& x) { return dpeak(x, {p.dc, p.k}); }, d, bundled.name, 3);
    std::ostringstream detail;
    detail << "gbc=" << gbc_report.wall_time << "s dbscan=" << dbscan_report.wall_time
           << "s dpeak=" << dpeak_report.wall_time << "s";
    v.check(gbc_report.wall_time < dbscan_report.wall_time &&
                dbscan_report.wall_time < dpeak_report.wall_time,
            "ordering violated: " + detail.str());
    v.notes.push_back(detail.str());
    return v;
}

Verdict oversize_postcondition()
{
    Verdict v;
    for (const auto& bundled : bundled_datasets()) {
        DivisionTrace trace;
        const BallSet set = generate_balls(generate(bundled.spec), {}, &trace);
        v.check(!trace.round_cap_reached, "round cap reached on " + bundled.name);
        v.check(detect_oversized(set.balls).empty(), "oversized ball left on " + bundled.name);
    }
    return v;
}

Verdict invariant_suites(const test::TempDir& dir)
{
    Verdict v;
    Rng rng(2024);

    // Partition after every round, AD decrease along accepted splits, fixpoint.
    for (int trial = 0; trial < 100; ++trial) {
        const Dataset d = random_dataset(rng);
        DivisionTrace trace;
        bool partition = true;
        trace.on_round = [&](const DivisionRound&, std::span<const GranularBall> balls) {
            partition = partition && is_partition(balls, d.size());
        };
        const BallSet set = generate_balls(d, {}, &trace);
        v.check(partition && is_partition(set.balls, d.size()),
                "partition broken in trial " + std::to_string(trial));

        std::map<std::size_t, double> node_ad;
        node_ad[0] = fit_ball(d, test::all_indices(d.size())).avg_distance;
        bool monotone = true;
        for (const auto& split : trace.splits) {
            const auto parent = node_ad.find(split.parent_node);
            monotone = monotone && parent != node_ad.end() &&
                       parent->second == split.parent_avg_distance;
            node_ad[split.child_a_node] = split.child_a_avg_distance;
            node_ad[split.child_b_node] = split.child_b_avg_distance;
            if (!split.forced) {
                monotone = monotone && split.child_a_avg_distance < split.parent_avg_distance &&
                           split.child_b_avg_distance < split.parent_avg_distance;
            }
        }
        v.check(monotone, "accepted split without AD decrease in trial " + std::to_string(trial));

        for (const auto& ball : set.balls) {
            const GranularBall again = fit_ball(d, ball.members);
            bool same = close_rel(again.radius, ball.radius, 1e-12) &&
                        close_rel(again.sum_radius, ball.sum_radius, 1e-12) &&
                        close_rel(again.avg_distance, ball.avg_distance, 1e-12);
            for (std::size_t k = 0; k < d.dim(); ++k)
                same = same && close_rel(again.center[k], ball.center[k], 1e-12);
            v.check(same, "fit_ball is not a fixpoint in trial " + std::to_string(trial));
        }
    }

    // Adjacency symmetry and overlap implies adjacency.
    for (int pair = 0; pair < 1000; ++pair) {
        BallSet set = test::random_ballset(rng, 2, 4.0);
        const auto& a = set.balls[0];
        const auto& b = set.balls[1];
        const std::size_t oa = rng.below(11);
        const std::size_t ob = rng.below(11);
        v.check(are_adjacent(a, b, oa, ob) == are_adjacent(b, a, ob, oa), "adjacency asymmetric");
        if (distance(a.center, b.center) < a.radius + b.radius) {
            v.check(are_adjacent(a, b, oa, ob), "overlapping balls not adjacent");
        }
    }

    // Tau never grows with min(o) on the full grid.
    for (const auto& [ri, rj] : std::vector<std::pair<double, double>>{{0.5, 0.8}, {1, 1}, {2, 0.1}}) {
        for (std::size_t a = 0; a <= 10; ++a)
            for (std::size_t b = 0; b <= 10; ++b)
                for (std::size_t c = 0; c <= 10; ++c)
                    for (std::size_t e = 0; e <= 10; ++e)
                        if (std::min(c, e) >= std::min(a, b))
                            v.check(tau(ri, rj, c, e) <= tau(ri, rj, a, b), "tau grew with min(o)");
    }

    // Components equal the closure of the adjacency relation.
    for (int trial = 0; trial < 200; ++trial) {
        BallSet set = test::random_ballset(rng, 1 + rng.below(20));
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
        bool same = true;
        for (std::size_t i = 0; i < m; ++i) {
            same = same && (clusters[i] == kNoiseLabel) == set.noise_ball_flags[i];
            for (std::size_t j = 0; j < m; ++j)
                if (!set.noise_ball_flags[i] && !set.noise_ball_flags[j])
                    same = same && (clusters[i] == clusters[j]) == reach[i][j];
        }
        v.check(same, "merge differs from closure in trial " + std::to_string(trial));
    }

    // Every label vector of length 2..8 over labels {0,1,2}, against every
    // labeling of the same length up to renaming (rand index ignores names).
    for (std::size_t n = 2; n <= 8; ++n) {
        std::vector<std::vector<int>> all;
        std::vector<std::vector<int>> canonical;
        std::vector<int> labels(n, 0);
        while (true) {
            all.push_back(labels);
            int next = 0;
            bool restricted = true;
            for (int l : labels) {
                if (l > next) restricted = false;
                if (l == next) ++next;
            }
            if (restricted) canonical.push_back(labels);
            std::size_t k = 0;
            while (k < n && labels[k] == 2) labels[k++] = 0;
            if (k == n) break;
            ++labels[k];
        }
        bool exact = true;
        for (const auto& a : all)
            for (const auto& b : canonical)
                exact = exact && rand_index(a, b) == test::brute_rand_index(a, b);
        v.check(exact, "rand_index differs from the pair oracle at length " + std::to_string(n));
    }

    // Byte-identical outputs from repeated invocations.
    const std::string data = (dir / "det.csv").string();
    const std::string data2 = (dir / "det2.csv").string();
    bool ok = cli({"gen", "--dataset", "moons", "--seed", "13", "--out", data}) == 0 &&
              cli({"gen", "--dataset", "moons", "--seed", "13", "--out", data2}) == 0;
    for (const std::string algo : {"gbc", "kmeans"}) {
        const std::string prefix = (dir / ("det-" + algo)).string();
        std::vector<std::string> args{"run", "--algo", algo, "--in", data, "--out", prefix};
        if (algo == "kmeans") args.insert(args.end(), {"--k", "2", "--seed", "5"});
        std::vector<std::string> first;
        ok = ok && cli(args) == 0;
        for (const std::string suffix : {".points.csv", ".balls.csv", ".summary.json"})
            first.push_back(test::read_file(prefix + suffix));
        // The second gbc run uses more threads; output must not change.
        if (algo == "gbc") args.insert(args.end(), {"--threads", "4"});
        ok = ok && cli(args) == 0;
        std::size_t k = 0;
        for (const std::string suffix : {".points.csv", ".balls.csv", ".summary.json"}) {
            const auto second = test::read_file(prefix + suffix);
            ok = ok && !second.empty() && second == first[k++];
        }
    }
    ok = ok && test::read_file(data) == test::read_file(data2);
    v.check(ok, "repeated runs produced different bytes");
    return v;
}

Verdict tau_values()
{
    Verdict v;
    v.check(std::abs(tau(0.5, 0.8, 2, 3) - 0.1667) <= 1e-3, "tau(0.5, 0.8, 2, 3) off");
    v.check(tau(0.5, 1.0, 0, 0) == 0.5, "tau(0.5, 1.0, 0, 0) is not 0.5");
    return v;
}

Verdict distance_budget()
{
    Verdict v;
    const Dataset d = generate(bundled_dataset("moons").spec);
    const GbcResult result = cluster(d);
    const double n = static_cast<double>(d.size());
    const auto evaluations = result.differentiation_distance_evaluations;
    std::ostringstream detail;
    detail << "evaluations=" << evaluations << " balls=" << result.balls.size()
           << " limit=" << n * n / 10;
    v.check(static_cast<double>(evaluations) < n * n / 10, "budget exceeded: " + detail.str());
    v.notes.push_back(detail.str());
    return v;
}

}  // namespace

int main()
{
    test::TempDir dir;
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 parameter-free runs on every bundled dataset", [&] { return parameter_free(dir); }},
        {"2 two moons: 2 clusters, rand index >= 0.95, < 1 s",
         [] { return shape_recovery("moons", 2, 0.95, 1.0); }},
        {"3 mixed-density blobs: 5 clusters, rand index >= 0.90, < 2 s",
         [] { return shape_recovery("blobs5", 5, 0.90, 2.0); }},
        {"4 runtime ordering gbc < dbscan < dpeak on 10k blobs", runtime_ordering},
        {"5 no oversized balls and no round cap on bundled data", oversize_postcondition},
        {"6 invariant suites", [&] { return invariant_suites(dir); }},
        {"7 tau worked values", tau_values},
        {"8 differentiation distance budget < n^2/10 on two moons", distance_budget},
    };

    bool all = true;
    for (const auto& [name, run] : criteria) {
        Verdict verdict;
        try {
            verdict = run();
        } catch (const std::exception& e) {
            verdict.check(false, std::string("exception: ") + e.what());
        }
        all = all && verdict.pass;
        std::cout << (verdict.pass ? "PASS  " : "FAIL  ") << name << '\n';
        for (const auto& note : verdict.notes) std::cout << "      " << note << '\n';
    }
    std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
    return all ? 0 : 1;
}
