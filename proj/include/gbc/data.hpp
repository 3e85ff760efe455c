#ifndef GBC_DATA_HPP
#define GBC_DATA_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gbc/core.hpp"

namespace gbc {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what), path_(path)
    {
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// File contents are malformed. Row and column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::filesystem::path& path, std::size_t row, std::size_t column,
               const std::string& what);
    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

enum class Family { moons, blobs, circles, spirals };

std::string_view to_string(Family family);
/// Throws std::invalid_argument on an unknown name.
Family parse_family(std::string_view name);

struct BlobComponent {
    std::vector<double> center;
    /// Per-blob standard deviation; falls back to GeneratorSpec::noise_sigma.
    std::optional<double> sigma;
    /// Relative share of the n points.
    double weight = 1.0;
};

struct GeneratorSpec {
    Family family = Family::moons;
    std::size_t n = 1000;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    std::vector<BlobComponent> blobs;              // blobs
    std::vector<double> circle_radii{1.0, 2.0};    // circles
    std::size_t spiral_arms = 2;                   // spirals
    double spiral_turns = 1.5;                     // spirals

    /// Throws std::invalid_argument when the family parameters are invalid.
    void validate() const;
};

/// Deterministic synthetic dataset with generating-component labels.
Dataset generate(const GeneratorSpec& spec);

/// Baseline settings that suit a bundled dataset.
struct BaselineDefaults {
    std::size_t k = 2;
    double eps = 0.1;
    std::size_t min_pts = 5;
    double dc = 0.1;
};

struct BundledDataset {
    std::string name;
    std::string description;
    GeneratorSpec spec;
    BaselineDefaults baselines;
};

/// The named datasets shipped with the tool (moons, blobs5, circles, ...).
const std::vector<BundledDataset>& bundled_datasets();
/// Throws std::invalid_argument on an unknown name.
const BundledDataset& bundled_dataset(std::string_view name);

Dataset load_csv(const std::filesystem::path& path, bool has_header,
                 std::optional<std::size_t> label_column = std::nullopt);

/// Writes features plus an optional trailing label column ("label") with a
/// header row x0..x{d-1}.
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

struct ResultPaths {
    std::filesystem::path points;
    std::filesystem::path balls;
};

/// Per-point file: x0..x{d-1},cluster. Per-ball file:
/// c0..c{d-1},radius,cluster,overlaps,size,noise; header only when `balls`
/// is null.
void save_results(const ResultPaths& paths, const Dataset& dataset,
                  const ClusterAssignment& assignment, const BallSet* balls = nullptr,
                  std::span<const int> ball_clusters = {});

/// 17 significant digit decimal rendering used by every CSV writer.
std::string format_real(double value);

}  // namespace gbc

#endif  // GBC_DATA_HPP
