#include "gbc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbc/baselines.hpp"
#include "gbc/data.hpp"
#include "gbc/differentiation.hpp"
#include "gbc/metrics.hpp"
#include "gbc/parallel.hpp"

namespace gbc::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& message, std::string hint)
        : std::runtime_error(message), code_(code), hint_(std::move(hint))
    {
    }
    int code() const { return code_; }
    const std::string& hint() const { return hint_; }

private:
    int code_;
    std::string hint_;
};

[[noreturn]] void usage_error(const std::string& message, const std::string& hint)
{
    throw CliError(kUsageError, message, hint);
}

template <typename T>
std::vector<T> parse_list(std::string_view text, char separator, const std::string& flag)
{
    std::vector<T> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(separator, start), text.size());
        std::string_view cell = text.substr(start, end - start);
        T value{};
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
        if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
            usage_error(flag + ": cannot parse '" + std::string(cell) + "'",
                        "pass numbers separated by '" + std::string(1, separator) + "'");
        }
        values.push_back(value);
        start = end + 1;
    }
    return values;
}

std::vector<std::string> split_names(const std::string& text)
{
    std::vector<std::string> names;
    std::stringstream stream(text);
    std::string name;
    while (std::getline(stream, name, ',')) {
        if (!name.empty()) {
            names.push_back(name);
        }
    }
    return names;
}

// ---------------------------------------------------------------- algorithms

struct AlgoParams {
    std::optional<std::size_t> k;
    std::optional<double> eps;
    std::optional<std::size_t> min_pts;
    std::optional<double> dc;
    std::optional<std::size_t> max_iters;
    std::optional<double> tol;

    std::vector<std::string> given() const
    {
        std::vector<std::string> flags;
        if (k) flags.push_back("--k");
        if (eps) flags.push_back("--eps");
        if (min_pts) flags.push_back("--min-pts");
        if (dc) flags.push_back("--dc");
        if (max_iters) flags.push_back("--max-iters");
        if (tol) flags.push_back("--tol");
        return flags;
    }
};

const std::vector<std::string> kAlgorithms{"gbc", "kmeans", "dbscan", "dpeak"};

void check_params(const std::string& algo, const AlgoParams& params)
{
    const auto given = params.given();
    if (algo == "gbc") {
        if (!given.empty()) {
            usage_error("gbc takes no algorithm parameters (got " + given.front() + ")",
                        "drop " + given.front() + "; granular-ball clustering adapts to the data");
        }
        return;
    }
    std::vector<std::string> allowed;
    std::vector<std::pair<bool, std::string>> required;
    if (algo == "kmeans") {
        allowed = {"--k", "--max-iters", "--tol"};
        required = {{params.k.has_value(), "--k"}};
    } else if (algo == "dbscan") {
        allowed = {"--eps", "--min-pts"};
        required = {{params.eps.has_value(), "--eps"}, {params.min_pts.has_value(), "--min-pts"}};
    } else if (algo == "dpeak") {
        allowed = {"--dc", "--k"};
        required = {{params.dc.has_value(), "--dc"}, {params.k.has_value(), "--k"}};
    }
    for (const auto& flag : given) {
        if (std::find(allowed.begin(), allowed.end(), flag) == allowed.end()) {
            usage_error(algo + " does not accept " + flag,
                        algo + " accepts only: " + [&] {
                            std::string list;
                            for (const auto& a : allowed) list += (list.empty() ? "" : " ") + a;
                            return list;
                        }());
        }
    }
    for (const auto& [present, flag] : required) {
        if (!present) {
            usage_error(algo + " requires " + flag, "add " + flag + " <value>");
        }
    }
}

struct AlgoRun {
    ClusterAssignment assignment;
    std::optional<GbcResult> gbc;
    double seconds = 0.0;
};

AlgoRun run_algorithm(const std::string& algo, const AlgoParams& params, std::uint64_t seed,
                      std::size_t threads, const Dataset& dataset)
{
    AlgoRun run;
    const auto start = std::chrono::steady_clock::now();
    if (algo == "gbc") {
        DivisionConfig config;
        config.threads = threads;
        run.gbc = cluster(dataset, config);
        run.assignment = run.gbc->assignment;
    } else if (algo == "kmeans") {
        KMeansConfig config;
        config.k = *params.k;
        config.max_iters = params.max_iters.value_or(config.max_iters);
        config.tol = params.tol.value_or(config.tol);
        config.seed = seed;
        run.assignment = kmeans(dataset, config);
    } else if (algo == "dbscan") {
        run.assignment = dbscan(dataset, {*params.eps, *params.min_pts});
    } else {
        run.assignment = dpeak(dataset, {*params.dc, *params.k});
    }
    run.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

// ---------------------------------------------------------------- input

// A header column named "label" is picked up as ground truth when no label
// column is given explicitly.
std::optional<std::size_t> detect_label_column(const fs::path& path)
{
    std::ifstream in(path);
    std::string header;
    if (!in || !std::getline(in, header)) {
        return std::nullopt;
    }
    if (!header.empty() && header.back() == '\r') {
        header.pop_back();
    }
    const auto names = split_names(header);
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (names[c] == "label") {
            return c;
        }
    }
    return std::nullopt;
}

Dataset load_input(const fs::path& path, bool header, std::optional<std::size_t> label_column)
{
    if (!fs::exists(path)) {
        throw IoError(path, "no such file");
    }
    if (header && !label_column) {
        label_column = detect_label_column(path);
    }
    return load_csv(path, header, label_column);
}

void print_trace(const DivisionTrace& trace, std::ostream& err)
{
    for (const auto& round : trace.rounds) {
        err << "division " << (round.phase == DivisionPhase::quality ? "quality" : "refine")
            << " round=" << round.round << " balls=" << round.ball_count
            << " splits=" << round.split_count << " oversized=" << round.oversized_count << '\n';
    }
}

void warn_round_cap(const GbcResult& result, std::ostream& err)
{
    if (result.trace.round_cap_reached) {
        err << "warning: oversized-ball refinement stopped at the round cap; some balls may "
               "still exceed 2*max(mean, median) radius\n";
    }
}

void write_json(const fs::path& path, const Json& json)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path, "cannot open for writing");
    }
    out << json.dump(2) << '\n';
    if (!out) {
        throw IoError(path, "write failed");
    }
}

// ---------------------------------------------------------------- gen

struct GenOptions {
    std::string family;
    std::string dataset;
    std::optional<std::size_t> n;
    std::optional<double> noise;
    std::optional<std::uint64_t> seed;
    std::string centers;
    std::string sigmas;
    std::string weights;
    std::string radii;
    std::optional<std::size_t> arms;
    std::optional<double> turns;
    std::string out;
};

std::vector<std::vector<double>> parse_centers(const std::string& text)
{
    std::vector<std::vector<double>> centers;
    std::stringstream stream(text);
    std::string group;
    while (std::getline(stream, group, ';')) {
        centers.push_back(parse_list<double>(group, ',', "--centers"));
    }
    if (centers.empty()) {
        usage_error("--centers is empty", "pass centers like '0,0;5,5'");
    }
    return centers;
}

GeneratorSpec make_gen_spec(const GenOptions& options)
{
    if (options.family.empty() == options.dataset.empty()) {
        usage_error("gen needs exactly one of --family or --dataset",
                    "use --family moons|blobs|circles|spirals or --dataset <bundled name>");
    }
    GeneratorSpec spec;
    if (!options.dataset.empty()) {
        spec = bundled_dataset(options.dataset).spec;
    } else {
        spec.family = parse_family(options.family);
        spec.seed = 0;
    }
    if (options.n) spec.n = *options.n;
    if (options.noise) spec.noise_sigma = *options.noise;
    if (options.seed) spec.seed = *options.seed;

    auto family_only = [&](bool given, Family family, const std::string& flag) {
        if (given && spec.family != family) {
            usage_error(flag + " applies to the " + std::string(to_string(family)) +
                            " family only",
                        "drop " + flag);
        }
    };
    family_only(!options.centers.empty(), Family::blobs, "--centers");
    family_only(!options.sigmas.empty(), Family::blobs, "--sigmas");
    family_only(!options.weights.empty(), Family::blobs, "--weights");
    family_only(!options.radii.empty(), Family::circles, "--radii");
    family_only(options.arms.has_value(), Family::spirals, "--arms");
    family_only(options.turns.has_value(), Family::spirals, "--turns");

    if (spec.family == Family::blobs) {
        if (!options.centers.empty()) {
            spec.blobs.clear();
            for (auto& center : parse_centers(options.centers)) {
                spec.blobs.push_back({std::move(center), std::nullopt, 1.0});
            }
        } else if (spec.blobs.empty()) {
            usage_error("the blobs family needs --centers", "pass centers like '0,0;5,5'");
        }
        if (!options.sigmas.empty()) {
            const auto sigmas = parse_list<double>(options.sigmas, ',', "--sigmas");
            if (sigmas.size() != spec.blobs.size()) {
                usage_error("--sigmas has " + std::to_string(sigmas.size()) + " values for " +
                                std::to_string(spec.blobs.size()) + " blobs",
                            "give one sigma per center");
            }
            for (std::size_t b = 0; b < sigmas.size(); ++b) spec.blobs[b].sigma = sigmas[b];
        }
        if (!options.weights.empty()) {
            const auto weights = parse_list<double>(options.weights, ',', "--weights");
            if (weights.size() != spec.blobs.size()) {
                usage_error("--weights has " + std::to_string(weights.size()) + " values for " +
                                std::to_string(spec.blobs.size()) + " blobs",
                            "give one weight per center");
            }
            for (std::size_t b = 0; b < weights.size(); ++b) spec.blobs[b].weight = weights[b];
        }
    }
    if (!options.radii.empty()) spec.circle_radii = parse_list<double>(options.radii, ',', "--radii");
    if (options.arms) spec.spiral_arms = *options.arms;
    if (options.turns) spec.spiral_turns = *options.turns;
    return spec;
}

int cmd_gen(const GenOptions& options, std::ostream& out)
{
    const GeneratorSpec spec = make_gen_spec(options);
    const Dataset dataset = generate(spec);
    save_dataset(options.out, dataset);
    out << "wrote " << dataset.size() << " points (" << to_string(spec.family) << ", seed "
        << spec.seed << ") to " << options.out << '\n';
    return kSuccess;
}

// ---------------------------------------------------------------- run

struct RunOptions {
    std::string algo;
    std::string in;
    std::string dataset;
    bool no_header = false;
    std::optional<std::size_t> label_col;
    std::string out;
    AlgoParams params;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    bool timing = false;
    bool verbose = false;
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err)
{
    check_params(options.algo, options.params);
    if (options.in.empty() == options.dataset.empty()) {
        usage_error("run needs exactly one of --in or --dataset",
                    "pass --in <file.csv> or --dataset <bundled name>");
    }

    Dataset dataset;
    fs::path prefix;
    if (!options.in.empty()) {
        dataset = load_input(options.in, !options.no_header, options.label_col);
        prefix = fs::path(options.in).replace_extension();
    } else {
        dataset = generate(bundled_dataset(options.dataset).spec);
        prefix = options.dataset;
    }
    if (!options.out.empty()) {
        prefix = options.out;
    } else {
        prefix += "." + options.algo;
    }

    const AlgoRun run =
        run_algorithm(options.algo, options.params, options.seed, options.threads, dataset);
    const ResultPaths paths{prefix.string() + ".points.csv", prefix.string() + ".balls.csv"};
    if (run.gbc) {
        save_results(paths, dataset, run.assignment, &run.gbc->balls, run.gbc->ball_clusters);
    } else {
        save_results(paths, dataset, run.assignment);
    }

    std::map<int, std::size_t> sizes;
    for (int label : run.assignment.labels) {
        if (label != kNoiseLabel) ++sizes[label];
    }
    Json summary;
    summary["algorithm"] = options.algo;
    summary["input"] = options.in.empty() ? options.dataset : options.in;
    summary["points"] = dataset.size();
    summary["dim"] = dataset.dim();
    summary["cluster_count"] = run.assignment.cluster_count;
    summary["noise_count"] = run.assignment.noise_count();
    Json size_list = Json::array();
    for (const auto& [label, count] : sizes) size_list.push_back(count);
    summary["cluster_sizes"] = size_list;
    std::optional<double> score;
    if (dataset.has_labels() && dataset.size() >= 2) {
        score = rand_index(*dataset.labels(), run.assignment.labels);
        summary["rand_index"] = *score;
    } else {
        summary["rand_index"] = nullptr;
    }
    Json parameters = Json::object();
    if (options.params.k) parameters["k"] = *options.params.k;
    if (options.params.eps) parameters["eps"] = *options.params.eps;
    if (options.params.min_pts) parameters["min_pts"] = *options.params.min_pts;
    if (options.params.dc) parameters["dc"] = *options.params.dc;
    if (options.params.max_iters) parameters["max_iters"] = *options.params.max_iters;
    if (options.params.tol) parameters["tol"] = *options.params.tol;
    if (options.algo == "kmeans") parameters["seed"] = options.seed;
    summary["parameters"] = parameters;
    if (run.gbc) {
        const auto& balls = run.gbc->balls;
        const auto noise_balls = static_cast<std::size_t>(
            std::count(balls.noise_ball_flags.begin(), balls.noise_ball_flags.end(), true));
        Json gbc;
        gbc["ball_count"] = balls.size();
        gbc["noise_balls"] = noise_balls;
        gbc["min_split_size"] = DivisionConfig{}.resolved_min_split_size(dataset.size());
        gbc["division_rounds"] = run.gbc->trace.rounds.size();
        gbc["round_cap_reached"] = run.gbc->trace.round_cap_reached;
        summary["gbc"] = gbc;
    }
    if (options.timing) {
        summary["wall_time_seconds"] = run.seconds;
    }
    summary["files"] = {{"points", paths.points.string()}, {"balls", paths.balls.string()}};
    const fs::path summary_path = prefix.string() + ".summary.json";
    write_json(summary_path, summary);

    if (run.gbc) {
        if (options.verbose) print_trace(run.gbc->trace, err);
        warn_round_cap(*run.gbc, err);
    }
    out << options.algo << ": " << run.assignment.cluster_count << " clusters, "
        << run.assignment.noise_count() << " noise points";
    if (run.gbc) out << ", " << run.gbc->balls.size() << " balls";
    if (score) out << ", rand index " << std::setprecision(6) << *score;
    out << '\n'
        << "wrote " << paths.points.string() << ", " << paths.balls.string() << ", "
        << summary_path.string() << '\n';
    return kSuccess;
}

// ---------------------------------------------------------------- eval

struct EvalOptions {
    std::string truth;
    std::optional<std::size_t> truth_col;
    bool truth_no_header = false;
    std::string pred;
    std::optional<std::size_t> pred_col;
};

std::vector<int> read_label_column(const fs::path& path, bool header,
                                   std::optional<std::size_t> column, const std::string& flag,
                                   std::string_view fallback_name)
{
    if (!fs::exists(path)) {
        throw IoError(path, "no such file");
    }
    if (!column && header) {
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto names = split_names(line);
        for (std::size_t c = 0; c < names.size(); ++c) {
            if (names[c] == fallback_name) column = c;
        }
    }
    if (!column) {
        usage_error("cannot tell which column of " + path.string() + " holds labels",
                    "pass " + flag + " <0-based column index>");
    }
    const Dataset data = load_csv(path, header, column);
    return *data.labels();
}

int cmd_eval(const EvalOptions& options, std::ostream& out)
{
    const auto truth =
        read_label_column(options.truth, !options.truth_no_header, options.truth_col,
                          "--truth-col", "label");
    const auto pred =
        read_label_column(options.pred, true, options.pred_col, "--pred-col", "cluster");
    if (truth.size() != pred.size()) {
        throw std::invalid_argument("truth has " + std::to_string(truth.size()) +
                                    " rows but predictions have " + std::to_string(pred.size()));
    }
    out << "rand_index " << format_real(rand_index(truth, pred)) << '\n';
    return kSuccess;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
    std::string algos;
    std::string data;
    std::size_t reps = 3;
    std::string out;
    std::string json;
    std::optional<std::uint64_t> seed;
    std::size_t threads = 1;
};

int cmd_bench(const BenchOptions& options, std::ostream& out)
{
    const auto algos = split_names(options.algos);
    const auto names = split_names(options.data);
    if (algos.empty() || names.empty()) {
        usage_error("bench needs at least one algorithm and one dataset",
                    "e.g. --algos gbc,dbscan,dpeak --data blobs10k");
    }
    for (const auto& algo : algos) {
        if (std::find(kAlgorithms.begin(), kAlgorithms.end(), algo) == kAlgorithms.end()) {
            usage_error("unknown algorithm '" + algo + "' in --algos",
                        "choose from gbc, kmeans, dbscan, dpeak");
        }
    }
    if (options.reps < 1) {
        usage_error("--reps must be at least 1", "pass --reps 1 or more");
    }

    std::vector<BenchReport> reports;
    for (const auto& name : names) {
        const BundledDataset& bundled = bundled_dataset(name);
        GeneratorSpec spec = bundled.spec;
        if (options.seed) spec.seed = *options.seed;
        const Dataset dataset = generate(spec);
        const BaselineDefaults& d = bundled.baselines;
        for (const auto& algo : algos) {
            AlgoParams params;
            if (algo == "kmeans") params.k = d.k;
            if (algo == "dbscan") {
                params.eps = d.eps;
                params.min_pts = d.min_pts;
            }
            if (algo == "dpeak") {
                params.dc = d.dc;
                params.k = d.k;
            }
            const std::uint64_t seed = options.seed.value_or(0);
            const std::size_t threads = options.threads;
            reports.push_back(benchmark(
                algo,
                [&](const Dataset& x) {
                    return run_algorithm(algo, params, seed, threads, x).assignment;
                },
                dataset, name, options.reps));
        }
    }

    out << std::left << std::setw(8) << "algo" << std::setw(10) << "dataset" << std::right
        << std::setw(14) << "wall_time_s" << std::setw(12) << "rand_index" << std::setw(10)
        << "clusters" << std::setw(8) << "noise" << '\n';
    for (const auto& r : reports) {
        std::ostringstream ri;
        if (r.rand_index) ri << std::fixed << std::setprecision(4) << *r.rand_index;
        out << std::left << std::setw(8) << r.algorithm << std::setw(10) << r.dataset
            << std::right << std::setw(14) << std::fixed << std::setprecision(6) << r.wall_time
            << std::setw(12) << (r.rand_index ? ri.str() : "-") << std::setw(10)
            << r.cluster_count << std::setw(8) << r.noise_count << '\n';
    }
    out.unsetf(std::ios::floatfield);

    if (!options.out.empty()) {
        std::ofstream csv(options.out, std::ios::binary | std::ios::trunc);
        if (!csv) throw IoError(options.out, "cannot open for writing");
        csv << bench_csv_header() << '\n';
        for (const auto& r : reports) csv << bench_csv_row(r) << '\n';
        if (!csv) throw IoError(options.out, "write failed");
    }
    if (!options.json.empty()) {
        Json rows = Json::array();
        for (const auto& r : reports) {
            Json row;
            row["algorithm"] = r.algorithm;
            row["dataset"] = r.dataset;
            row["wall_time_seconds"] = r.wall_time;
            row["rand_index"] = r.rand_index ? Json(*r.rand_index) : Json(nullptr);
            row["cluster_count"] = r.cluster_count;
            row["noise_count"] = r.noise_count;
            row["repetition_times"] = r.repetition_times;
            rows.push_back(row);
        }
        write_json(options.json, Json{{"reports", rows}});
    }
    return kSuccess;
}

void add_algo_params(CLI::App* app, AlgoParams& params)
{
    app->add_option("--k", params.k, "kmeans/dpeak: number of clusters")->check(CLI::PositiveNumber);
    app->add_option("--eps", params.eps, "dbscan: neighborhood radius")->check(CLI::PositiveNumber);
    app->add_option("--min-pts", params.min_pts, "dbscan: core point threshold (self included)")
        ->check(CLI::PositiveNumber);
    app->add_option("--dc", params.dc, "dpeak: cutoff distance")->check(CLI::PositiveNumber);
    app->add_option("--max-iters", params.max_iters, "kmeans: iteration cap")
        ->check(CLI::PositiveNumber);
    app->add_option("--tol", params.tol, "kmeans: center shift tolerance")
        ->check(CLI::NonNegativeNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Granular-ball clustering and baseline comparison tool", "gbc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "gbc 1.0.0");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "write a synthetic dataset as CSV");
    gen_cmd->add_option("--family", gen.family, "moons, blobs, circles or spirals");
    gen_cmd->add_option("--dataset", gen.dataset, "start from a bundled dataset");
    gen_cmd->add_option("--n", gen.n, "number of points")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--noise", gen.noise, "Gaussian noise sigma")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", gen.seed, "random seed");
    gen_cmd->add_option("--centers", gen.centers, "blobs: centers, e.g. '0,0;5,5'");
    gen_cmd->add_option("--sigmas", gen.sigmas, "blobs: per-blob sigma, e.g. '0.5,1.5'");
    gen_cmd->add_option("--weights", gen.weights, "blobs: per-blob share of n");
    gen_cmd->add_option("--radii", gen.radii, "circles: ring radii, e.g. '1,2.5'");
    gen_cmd->add_option("--arms", gen.arms, "spirals: arm count")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--turns", gen.turns, "spirals: turns per arm")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--out", gen.out, "output CSV path")->required();

    const std::size_t env_threads = default_thread_count();

    RunOptions run_opts;
    run_opts.threads = env_threads;
    auto* run_cmd = app.add_subcommand("run", "cluster a dataset and write result files");
    run_cmd->add_option("--algo", run_opts.algo, "gbc, kmeans, dbscan or dpeak")
        ->required()
        ->check(CLI::IsMember(kAlgorithms));
    run_cmd->add_option("--in", run_opts.in, "input CSV");
    run_cmd->add_option("--dataset", run_opts.dataset, "bundled dataset instead of --in");
    run_cmd->add_flag("--no-header", run_opts.no_header, "input has no header row");
    run_cmd->add_option("--label-col", run_opts.label_col,
                        "0-based ground-truth column (default: a column named 'label')");
    run_cmd->add_option("--out", run_opts.out, "output prefix (default: <input>.<algo>)");
    add_algo_params(run_cmd, run_opts.params);
    run_cmd->add_option("--seed", run_opts.seed, "kmeans initialization seed");
    run_cmd->add_option("--threads", run_opts.threads, "worker threads (default: $GBC_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    run_cmd->add_flag("--timing", run_opts.timing, "record wall time in the JSON summary");
    run_cmd->add_flag("-v,--verbose", run_opts.verbose, "print the division trace");

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Rand Index of predictions against ground truth");
    eval_cmd->add_option("--truth", eval.truth, "CSV holding ground-truth labels")->required();
    eval_cmd->add_option("--truth-col", eval.truth_col,
                         "0-based label column (default: a column named 'label')");
    eval_cmd->add_flag("--truth-no-header", eval.truth_no_header, "truth file has no header");
    eval_cmd->add_option("--pred", eval.pred, "points file written by `gbc run`")->required();
    eval_cmd->add_option("--pred-col", eval.pred_col,
                         "0-based prediction column (default: 'cluster')");

    BenchOptions bench;
    bench.threads = env_threads;
    auto* bench_cmd = app.add_subcommand("bench", "time algorithms on bundled datasets");
    bench_cmd->add_option("--algos", bench.algos, "comma-separated algorithms")
        ->default_val("gbc,dbscan,dpeak");
    bench_cmd->add_option("--data", bench.data, "comma-separated bundled dataset names")
        ->default_val("blobs10k");
    bench_cmd->add_option("--reps", bench.reps, "repetitions per measurement (median reported)")
        ->default_val(3);
    bench_cmd->add_option("--out", bench.out, "write the report as CSV");
    bench_cmd->add_option("--json", bench.json, "write the report as JSON");
    bench_cmd->add_option("--seed", bench.seed, "override dataset and kmeans seeds");
    bench_cmd->add_option("--threads", bench.threads, "worker threads for gbc")
        ->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*run_cmd) return cmd_run(run_opts, out, err);
        if (*eval_cmd) return cmd_eval(eval, out);
        if (*bench_cmd) return cmd_bench(bench, out);
    } catch (const CliError& e) {
        err << "error: " << e.what() << "\nhint: " << e.hint() << '\n';
        return e.code();
    } catch (const IoError& e) {
        err << "error: " << e.what()
            << "\nhint: check that the path exists and that its directory is writable\n";
        return kIoError;
    } catch (const ParseError& e) {
        err << "error: " << e.what()
            << "\nhint: files are comma-separated numbers; check --no-header and the label "
               "column flags\n";
        return kValidationError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\nhint: see `gbc <command> --help` for valid values\n";
        return kValidationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }
    return kUsageError;
}

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace gbc::cli
