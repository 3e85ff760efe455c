#include "gbc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gbc/random.hpp"

namespace gbc {

namespace {

// Splits n into integer shares proportional to weights (largest remainder,
// ties to the lower index).
std::vector<std::size_t> apportion(std::size_t n, std::span<const double> weights)
{
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<std::size_t> counts(weights.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const double quota = static_cast<double>(n) * weights[k] / total;
        counts[k] = static_cast<std::size_t>(std::floor(quota));
        assigned += counts[k];
        remainders.emplace_back(quota - std::floor(quota), k);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < n; ++r, ++assigned) {
        ++counts[remainders[r % remainders.size()].second];
    }
    return counts;
}

// k/(count-1) spacing over [lo, hi]; a single point sits at lo.
double linspace_at(double lo, double hi, std::size_t k, std::size_t count)
{
    if (count <= 1) {
        return lo;
    }
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
}

class Builder {
public:
    Builder(std::size_t dim, std::size_t n, double noise, std::uint64_t seed)
        : dim_(dim), noise_(noise), rng_(seed)
    {
        coords_.reserve(dim * n);
        labels_.reserve(n);
    }

    void add(std::span<const double> base, double sigma, int label)
    {
        for (std::size_t l = 0; l < dim_; ++l) {
            // Draw even when sigma is zero so streams do not depend on it.
            coords_.push_back(base[l] + sigma * rng_.normal());
        }
        labels_.push_back(label);
    }

    void add(double x, double y, int label)
    {
        const double base[2] = {x, y};
        add(base, noise_, label);
    }

    Dataset finish() { return Dataset(dim_, std::move(coords_), std::move(labels_)); }

private:
    std::size_t dim_;
    double noise_;
    Rng rng_;
    std::vector<double> coords_;
    std::vector<int> labels_;
};

Dataset make_moons(const GeneratorSpec& spec)
{
    Builder out(2, spec.n, spec.noise_sigma, spec.seed);
    const std::size_t outer = spec.n / 2;
    const std::size_t inner = spec.n - outer;
    for (std::size_t k = 0; k < outer; ++k) {
        const double t = linspace_at(0.0, std::numbers::pi, k, outer);
        out.add(std::cos(t), std::sin(t), 0);
    }
    for (std::size_t k = 0; k < inner; ++k) {
        const double t = linspace_at(0.0, std::numbers::pi, k, inner);
        out.add(1.0 - std::cos(t), 0.5 - std::sin(t), 1);
    }
    return out.finish();
}

Dataset make_blobs(const GeneratorSpec& spec)
{
    std::vector<double> weights;
    for (const auto& blob : spec.blobs) {
        weights.push_back(blob.weight);
    }
    const auto counts = apportion(spec.n, weights);
    Builder out(spec.blobs.front().center.size(), spec.n, spec.noise_sigma, spec.seed);
    for (std::size_t b = 0; b < spec.blobs.size(); ++b) {
        const auto& blob = spec.blobs[b];
        const double sigma = blob.sigma.value_or(spec.noise_sigma);
        for (std::size_t k = 0; k < counts[b]; ++k) {
            out.add(blob.center, sigma, static_cast<int>(b));
        }
    }
    return out.finish();
}

Dataset make_circles(const GeneratorSpec& spec)
{
    // Ring populations proportional to circumference keep arc density even.
    const auto counts = apportion(spec.n, spec.circle_radii);
    Builder out(2, spec.n, spec.noise_sigma, spec.seed);
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const double radius = spec.circle_radii[c];
        for (std::size_t k = 0; k < counts[c]; ++k) {
            const double t =
                2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(counts[c]);
            out.add(radius * std::cos(t), radius * std::sin(t), static_cast<int>(c));
        }
    }
    return out.finish();
}

Dataset make_spirals(const GeneratorSpec& spec)
{
    const std::vector<double> equal(spec.spiral_arms, 1.0);
    const auto counts = apportion(spec.n, equal);
    Builder out(2, spec.n, spec.noise_sigma, spec.seed);
    for (std::size_t arm = 0; arm < spec.spiral_arms; ++arm) {
        const double phase =
            2.0 * std::numbers::pi * static_cast<double>(arm) / static_cast<double>(spec.spiral_arms);
        for (std::size_t k = 0; k < counts[arm]; ++k) {
            // Radius grows linearly with the swept angle; start away from the
            // origin where the arms would touch.
            const double r = linspace_at(0.25, 1.0, k, counts[arm]);
            const double angle = 2.0 * std::numbers::pi * spec.spiral_turns * r + phase;
            out.add(r * std::cos(angle), r * std::sin(angle), static_cast<int>(arm));
        }
    }
    return out.finish();
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_real(std::string_view cell)
{
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() ||
        !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::ofstream open_for_write(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path, "cannot open for writing");
    }
    return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) {
        throw IoError(path, "write failed");
    }
    out.close();
}

}  // namespace

ParseError::ParseError(const std::filesystem::path& path, std::size_t row, std::size_t column,
                       const std::string& what)
    : std::runtime_error([&] {
          std::string message = path.string();
          if (row > 0) {
              message += ":" + std::to_string(row);
          }
          if (column > 0) {
              message += ": column " + std::to_string(column);
          }
          return message + ": " + what;
      }()),
      row_(row),
      column_(column)
{
}

std::string_view to_string(Family family)
{
    switch (family) {
    case Family::moons:
        return "moons";
    case Family::blobs:
        return "blobs";
    case Family::circles:
        return "circles";
    case Family::spirals:
        return "spirals";
    }
    return "unknown";
}

Family parse_family(std::string_view name)
{
    for (Family f : {Family::moons, Family::blobs, Family::circles, Family::spirals}) {
        if (name == to_string(f)) {
            return f;
        }
    }
    throw std::invalid_argument("unknown family '" + std::string(name) +
                                "' (expected moons, blobs, circles or spirals)");
}

void GeneratorSpec::validate() const
{
    if (n < 1) {
        throw std::invalid_argument("generator: n must be at least 1");
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw std::invalid_argument("generator: noise sigma must be finite and non-negative");
    }
    switch (family) {
    case Family::moons:
        break;
    case Family::blobs: {
        if (blobs.empty()) {
            throw std::invalid_argument("blobs: at least one blob center is required");
        }
        const std::size_t dim = blobs.front().center.size();
        if (dim == 0) {
            throw std::invalid_argument("blobs: centers must have at least one coordinate");
        }
        for (std::size_t b = 0; b < blobs.size(); ++b) {
            const auto& blob = blobs[b];
            const std::string where = "blobs: blob " + std::to_string(b);
            if (blob.center.size() != dim) {
                throw std::invalid_argument(where + " has dimension " +
                                            std::to_string(blob.center.size()) + ", expected " +
                                            std::to_string(dim));
            }
            if (std::any_of(blob.center.begin(), blob.center.end(),
                            [](double c) { return !std::isfinite(c); })) {
                throw std::invalid_argument(where + " has a non-finite center");
            }
            if (blob.sigma && (!(*blob.sigma >= 0.0) || !std::isfinite(*blob.sigma))) {
                throw std::invalid_argument(where + " has a negative or non-finite sigma");
            }
            if (!(blob.weight > 0.0) || !std::isfinite(blob.weight)) {
                throw std::invalid_argument(where + " needs a positive weight");
            }
        }
        break;
    }
    case Family::circles:
        if (circle_radii.empty()) {
            throw std::invalid_argument("circles: at least one radius is required");
        }
        for (double r : circle_radii) {
            if (!(r > 0.0) || !std::isfinite(r)) {
                throw std::invalid_argument("circles: radii must be positive and finite");
            }
        }
        break;
    case Family::spirals:
        if (spiral_arms < 1) {
            throw std::invalid_argument("spirals: at least one arm is required");
        }
        if (!(spiral_turns > 0.0) || !std::isfinite(spiral_turns)) {
            throw std::invalid_argument("spirals: turns must be positive and finite");
        }
        break;
    }
}

Dataset generate(const GeneratorSpec& spec)
{
    spec.validate();
    switch (spec.family) {
    case Family::moons:
        return make_moons(spec);
    case Family::blobs:
        return make_blobs(spec);
    case Family::circles:
        return make_circles(spec);
    case Family::spirals:
        return make_spirals(spec);
    }
    throw std::invalid_argument("unknown generator family");
}

const std::vector<BundledDataset>& bundled_datasets()
{
    static const std::vector<BundledDataset> datasets = [] {
        std::vector<BundledDataset> all;

        GeneratorSpec moons;
        moons.family = Family::moons;
        moons.n = 1000;
        moons.noise_sigma = 0.05;
        moons.seed = 7;
        all.push_back({"moons", "two interleaved half circles", moons, {2, 0.15, 5, 0.15}});

        // Two sparse blobs on top, three dense ones below.
        GeneratorSpec mixed;
        mixed.family = Family::blobs;
        mixed.n = 2500;
        mixed.seed = 7;
        mixed.blobs = {{{-6.0, 6.0}, 1.2, 1.0},
                       {{6.0, 6.0}, 1.2, 1.0},
                       {{-8.0, -6.0}, 0.5, 1.0},
                       {{0.0, -6.0}, 0.5, 1.0},
                       {{8.0, -6.0}, 0.5, 1.0}};
        all.push_back({"blobs5", "five blobs with mixed density", mixed, {5, 0.6, 5, 1.0}});

        GeneratorSpec circles;
        circles.family = Family::circles;
        circles.n = 1500;
        circles.noise_sigma = 0.03;
        circles.seed = 7;
        circles.circle_radii = {1.0, 2.5, 4.0};
        all.push_back({"circles", "three concentric rings", circles, {3, 0.25, 5, 0.25}});

        GeneratorSpec spirals;
        spirals.family = Family::spirals;
        spirals.n = 2000;
        spirals.noise_sigma = 0.02;
        spirals.seed = 7;
        spirals.spiral_arms = 2;
        spirals.spiral_turns = 1.0;
        all.push_back({"spirals", "two interleaved spiral arms", spirals, {2, 0.06, 4, 0.06}});

        GeneratorSpec big;
        big.family = Family::blobs;
        big.n = 10000;
        big.noise_sigma = 1.0;
        big.seed = 7;
        for (double x : {0.0, 10.0, 20.0}) {
            for (double y : {0.0, 10.0}) {
                big.blobs.push_back({{x, y}, std::nullopt, 1.0});
            }
        }
        all.push_back({"blobs10k", "10,000 points in six Gaussian blobs", big, {6, 0.5, 5, 1.0}});
        return all;
    }();
    return datasets;
}

const BundledDataset& bundled_dataset(std::string_view name)
{
    for (const auto& dataset : bundled_datasets()) {
        if (dataset.name == name) {
            return dataset;
        }
    }
    std::string known;
    for (const auto& dataset : bundled_datasets()) {
        known += (known.empty() ? "" : ", ") + dataset.name;
    }
    throw std::invalid_argument("unknown dataset '" + std::string(name) + "' (bundled: " + known +
                                ")");
}

Dataset load_csv(const std::filesystem::path& path, bool has_header,
                 std::optional<std::size_t> label_column)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path, "cannot open for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError(path, "read failed");
    }
    const std::string text = buffer.str();

    std::vector<std::string_view> lines;
    std::string_view rest(text);
    while (!rest.empty()) {
        const std::size_t newline = rest.find('\n');
        lines.push_back(rest.substr(0, newline));
        if (newline == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(newline + 1);
    }
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }

    const std::size_t first = has_header ? 1 : 0;
    if (lines.size() <= first) {
        throw ParseError(path, 0, 0, "no data rows");
    }

    std::size_t width = 0;
    std::size_t dim = 0;
    std::vector<double> coords;
    std::vector<int> labels;
    for (std::size_t r = first; r < lines.size(); ++r) {
        const std::size_t row = r + 1;
        const auto fields = split_fields(lines[r]);
        if (r == first) {
            width = fields.size();
            if (label_column && *label_column >= width) {
                throw ParseError(path, row, *label_column + 1,
                                 "label column out of range for " + std::to_string(width) +
                                     " columns");
            }
            dim = width - (label_column ? 1 : 0);
            if (dim == 0) {
                throw ParseError(path, row, 0, "no feature columns");
            }
        } else if (fields.size() != width) {
            throw ParseError(path, row, 0,
                             "expected " + std::to_string(width) + " columns, found " +
                                 std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto value = parse_real(fields[c]);
            if (!value) {
                throw ParseError(path, row, c + 1,
                                 "cannot parse '" + std::string(fields[c]) + "' as a finite number");
            }
            if (label_column && c == *label_column) {
                if (*value != std::trunc(*value) || std::abs(*value) > 2147483647.0) {
                    throw ParseError(path, row, c + 1,
                                     "label '" + std::string(fields[c]) + "' is not an integer");
                }
                labels.push_back(static_cast<int>(*value));
            } else {
                coords.push_back(*value);
            }
        }
    }
    std::optional<std::vector<int>> maybe_labels;
    if (label_column) {
        maybe_labels = std::move(labels);
    }
    return Dataset(dim, std::move(coords), std::move(maybe_labels));
}

std::string format_real(double value)
{
    char buffer[64];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
    return std::string(buffer, ptr);
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset)
{
    auto out = open_for_write(path);
    for (std::size_t l = 0; l < dataset.dim(); ++l) {
        out << (l ? "," : "") << 'x' << l;
    }
    if (dataset.has_labels()) {
        out << ",label";
    }
    out << '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto p = dataset.point(i);
        for (std::size_t l = 0; l < p.size(); ++l) {
            out << (l ? "," : "") << format_real(p[l]);
        }
        if (dataset.has_labels()) {
            out << ',' << (*dataset.labels())[i];
        }
        out << '\n';
    }
    close_checked(out, path);
}

void save_results(const ResultPaths& paths, const Dataset& dataset,
                  const ClusterAssignment& assignment, const BallSet* balls,
                  std::span<const int> ball_clusters)
{
    if (assignment.labels.size() != dataset.size()) {
        throw std::invalid_argument("save_results: " + std::to_string(assignment.labels.size()) +
                                    " labels for " + std::to_string(dataset.size()) + " points");
    }
    if (balls != nullptr && ball_clusters.size() != balls->size()) {
        throw std::invalid_argument("save_results: expected one cluster id per ball");
    }

    auto points = open_for_write(paths.points);
    for (std::size_t l = 0; l < dataset.dim(); ++l) {
        points << 'x' << l << ',';
    }
    points << "cluster\n";
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (double c : dataset.point(i)) {
            points << format_real(c) << ',';
        }
        points << assignment.labels[i] << '\n';
    }
    close_checked(points, paths.points);

    auto out = open_for_write(paths.balls);
    for (std::size_t l = 0; l < dataset.dim(); ++l) {
        out << 'c' << l << ',';
    }
    out << "radius,cluster,overlaps,size,noise\n";
    if (balls != nullptr) {
        for (std::size_t k = 0; k < balls->size(); ++k) {
            const auto& ball = balls->balls[k];
            for (double c : ball.center) {
                out << format_real(c) << ',';
            }
            const std::size_t overlaps =
                k < balls->overlap_counts.size() ? balls->overlap_counts[k] : 0;
            const bool noise = k < balls->noise_ball_flags.size() && balls->noise_ball_flags[k];
            out << format_real(ball.radius) << ',' << ball_clusters[k] << ',' << overlaps << ','
                << ball.size() << ',' << (noise ? 1 : 0) << '\n';
        }
    }
    close_checked(out, paths.balls);
}

}  // namespace gbc
