#ifndef GBC_TESTS_SUPPORT_HPP
#define GBC_TESTS_SUPPORT_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gbc/core.hpp"
#include "gbc/differentiation.hpp"
#include "gbc/random.hpp"

namespace gbc::test {

inline Dataset points_on_x(const std::vector<double>& xs)
{
    std::vector<std::vector<double>> rows;
    for (double x : xs) rows.push_back({x, 0.0});
    return Dataset::from_rows(rows);
}

inline std::vector<PointIndex> all_indices(std::size_t n)
{
    std::vector<PointIndex> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = i;
    return members;
}

class TempDir {
public:
    TempDir()
    {
        std::random_device device;
        path_ = std::filesystem::temp_directory_path() /
                ("gbc-test-" + std::to_string(device()) + std::to_string(device()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

/// Agreeing pairs over all pairs, enumerated directly.
inline double brute_rand_index(const std::vector<int>& a, const std::vector<int>& b)
{
    std::size_t agree = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            ++total;
            if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(total);
}

/// Warshall closure of a boolean adjacency matrix (reflexive).
inline std::vector<std::vector<bool>> transitive_closure(std::vector<std::vector<bool>> reach)
{
    const std::size_t n = reach.size();
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    return reach;
}

/// Random non-overlapping member sets; radius 0 singletons act as noise balls.
inline BallSet random_ballset(Rng& rng, std::size_t count, double extent = 10.0)
{
    BallSet set;
    PointIndex next = 0;
    for (std::size_t b = 0; b < count; ++b) {
        GranularBall ball;
        const bool noise = rng.uniform() < 0.15;
        const std::size_t size = noise ? 1 : 2 + rng.below(5);
        for (std::size_t k = 0; k < size; ++k) ball.members.push_back(next++);
        ball.center = {rng.uniform() * extent, rng.uniform() * extent};
        ball.radius = noise ? 0.0 : 0.2 + 1.8 * rng.uniform();
        ball.sum_radius = ball.radius * static_cast<double>(size) * 0.5;
        ball.avg_distance = ball.sum_radius / static_cast<double>(size);
        set.balls.push_back(ball);
        set.noise_ball_flags.push_back(noise);
    }
    set.overlap_counts.assign(count, 0);
    return set;
}

/// True when both labelings induce the same partition of the indices.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    return true;
}

}  // namespace gbc::test

#endif  // GBC_TESTS_SUPPORT_HPP
