#include "sla/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sla/covariance.hpp"
#include "sla/rng.hpp"

namespace sla {

namespace {

std::string fmt_real(double x) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return buffer;
}

} // namespace

std::string variant_name(Variant v) {
    return v == Variant::DA ? "DA" : "SS";
}

VariantChoice parse_variant(const std::string& text) {
    if (text == "DA" || text == "da") return VariantChoice::DA;
    if (text == "SS" || text == "ss") return VariantChoice::SS;
    if (text == "both" || text == "BOTH") return VariantChoice::Both;
    throw ConfigError("variant must be DA, SS or both, got '" + text + "'");
}

namespace {

RealVector scene_freqs(const ExperimentConfig& config) {
    if (config.freqs.size() > 0) return config.freqs;
    return benchmark_scene(0.0).freqs;
}

SourceScene make_scene(const ExperimentConfig& config, double sigma, double delta) {
    RealVector f = scene_freqs(config);
    if (delta != kNoDelta) {
        // Separation sweep: the last source sits delta above its neighbor.
        if (f.size() < 2) throw ConfigError("delta sweep needs at least two sources");
        f(f.size() - 1) = f(f.size() - 2) + delta;
    }
    if (config.powers.size() > 0) {
        if (config.powers.size() != f.size()) {
            throw ConfigError("powers list length does not match the frequency list");
        }
        return SourceScene(f, config.powers, sigma * sigma);
    }
    return SourceScene(f, sigma * sigma);
}

std::vector<Variant> expand_variants(VariantChoice choice) {
    switch (choice) {
        case VariantChoice::DA: return {Variant::DA};
        case VariantChoice::SS: return {Variant::SS};
        case VariantChoice::Both: return {Variant::DA, Variant::SS};
    }
    return {};
}

} // namespace

void validate_config(const ExperimentConfig& config) {
    if (config.trials < 1) throw ConfigError("trials must be >= 1");
    if (config.l_grid.empty()) throw ConfigError("l_grid must not be empty");
    if (config.sigma_grid.empty()) throw ConfigError("sigma_grid must not be empty");
    for (Index l : config.l_grid) {
        if (l < 1) throw ConfigError("snapshot counts must be >= 1");
    }
    for (double s : config.sigma_grid) {
        if (s < 0.0) throw ConfigError("noise std must be >= 0");
    }
    const Index m = coarray(config.geometry).m_contig;
    const Index k = scene_freqs(config).size();
    if (k > m - 1) {
        throw ConfigError("K = " + std::to_string(k) + " exceeds M-1 = " + std::to_string(m - 1) +
                          " for this geometry");
    }
    // Scene construction validates frequencies, powers and deltas.
    for (double s : config.sigma_grid) {
        if (config.delta_grid.empty()) {
            make_scene(config, s, kNoDelta);
        } else {
            for (double d : config.delta_grid) make_scene(config, s, d);
        }
    }
}

std::vector<TrialPoint> expand_grid(const ExperimentConfig& config) {
    std::vector<TrialPoint> points;
    const std::vector<double> deltas =
        config.delta_grid.empty() ? std::vector<double>{kNoDelta} : config.delta_grid;
    for (Variant variant : expand_variants(config.variant)) {
        for (double sigma : config.sigma_grid) {
            for (double delta : deltas) {
                for (Index l : config.l_grid) {
                    TrialPoint point{config.experiment_id,
                                     config.geometry,
                                     make_scene(config, sigma, delta),
                                     variant,
                                     l,
                                     delta,
                                     config.base_seed};
                    points.push_back(std::move(point));
                }
            }
        }
    }
    return points;
}

TrialResult run_trial(const TrialPoint& point, int trial_index) {
    TrialResult row;
    row.experiment_id = point.experiment_id;
    row.variant = point.variant;
    row.n_snapshots = point.n_snapshots;
    row.sigma2 = point.scene.noise_power;
    row.delta = point.delta;
    row.trial_index = trial_index;
    row.seed = derive_seed(point.base_seed, static_cast<std::uint64_t>(trial_index));

    const auto start = std::chrono::steady_clock::now();
    const Index k = point.scene.n_sources();
    row.md_bound = md_bound(bound_ingredients(point.geometry, point.scene, point.n_snapshots));
    try {
        const Snapshots y = sample_snapshots(point.geometry, point.scene, point.n_snapshots,
                                             row.seed);
        const Index m = coarray(point.geometry).m_contig;
        const ComplexMatrix r_omega = sample_covariance(y);
        const ComplexMatrix r_da = da_toeplitz(da_lags(r_omega, point.geometry, m));
        const HermitianEig eig = hermitian_eig(r_da);
        row.da_ss_equal = da_ss_same_subspace(eig.eigenvalues, k);
        const ComplexMatrix subspace = point.variant == Variant::DA
                                           ? ComplexMatrix(eig.eigenvectors.leftCols(k))
                                           : signal_subspace(ss_covariance(r_da, m), k);
        const FrequencyEstimate est = esprit_freqs(subspace);
        row.md = matched_distance(est.freqs, point.scene.freqs);
    } catch (const std::runtime_error&) {
        // Rank collapse or a degenerate rotation eigenvalue: score the trial
        // at the worst possible matched distance instead of dropping it.
        row.md = 0.5;
        row.error_flag = true;
    }
    row.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return row;
}

namespace {

AggregateRow aggregate_point(const TrialPoint& point,
                             const std::vector<TrialResult>& rows, std::size_t begin,
                             std::size_t count) {
    AggregateRow agg;
    agg.experiment_id = point.experiment_id;
    agg.variant = point.variant;
    agg.n_snapshots = point.n_snapshots;
    agg.sigma2 = point.scene.noise_power;
    agg.delta = point.delta;
    agg.trials = static_cast<int>(count);
    agg.md_bound = rows[begin].md_bound;

    std::vector<double> mds(count);
    double sum = 0.0;
    int errors = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const TrialResult& row = rows[begin + i];
        mds[i] = row.md;
        sum += row.md;
        errors += row.error_flag ? 1 : 0;
    }
    std::sort(mds.begin(), mds.end());
    agg.mean_md = sum / static_cast<double>(count);
    agg.median_md = count % 2 == 1 ? mds[count / 2]
                                   : 0.5 * (mds[count / 2 - 1] + mds[count / 2]);
    agg.error_rate = static_cast<double>(errors) / static_cast<double>(count);
    return agg;
}

void write_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << trial_csv_header() << '\n';
    for (const TrialResult& row : result.trials) out << trial_csv_row(row) << '\n';
    out << '\n';
    out << "# aggregate\n";
    out << aggregate_csv_header() << '\n';
    for (const AggregateRow& agg : result.aggregates) out << aggregate_csv_row(agg) << '\n';
    if (!out) throw ConfigError("failed while writing '" + path + "'");
}

std::string plot_stem(const std::string& csv_path) {
    const auto dot = csv_path.rfind(".csv");
    return dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
}

void emit_plot_files(const ExperimentConfig& config, const SweepResult& result) {
    // One file per curve. L is the x axis when it varies; otherwise sigma^2.
    const bool x_is_l = config.l_grid.size() > 1 || config.sigma_grid.size() == 1;
    const std::string stem = plot_stem(result.csv_path);
    std::map<std::string, std::vector<std::pair<double, double>>> curves;
    for (const AggregateRow& agg : result.aggregates) {
        std::string key = stem + "_" + variant_name(agg.variant);
        if (x_is_l) {
            key += "_sigma2_" + fmt_real(agg.sigma2);
            if (agg.delta != kNoDelta) key += "_delta_" + fmt_real(agg.delta);
        } else {
            key += "_L" + std::to_string(agg.n_snapshots);
            if (agg.delta != kNoDelta) key += "_delta_" + fmt_real(agg.delta);
        }
        const double x = x_is_l ? static_cast<double>(agg.n_snapshots) : agg.sigma2;
        curves[key].emplace_back(x, agg.mean_md);
    }
    for (auto& [key, pts] : curves) {
        std::sort(pts.begin(), pts.end());
        const std::string path = key + ".dat";
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot open plot file '" + path + "'");
        for (const auto& [x, y] : pts) out << fmt_real(x) << ' ' << fmt_real(y) << '\n';
    }
}

} // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
    validate_config(config);

    SweepResult result;
    result.points = expand_grid(config);
    const std::size_t trials = static_cast<std::size_t>(config.trials);
    const std::size_t n_tasks = result.points.size() * trials;
    result.trials.resize(n_tasks);

    unsigned workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_tasks));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto drain = [&] {
        while (true) {
            const std::size_t task = next.fetch_add(1);
            if (task >= n_tasks) break;
            try {
                result.trials[task] = run_trial(result.points[task / trials],
                                                static_cast<int>(task % trials));
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    result.aggregates.reserve(result.points.size());
    for (std::size_t p = 0; p < result.points.size(); ++p) {
        result.aggregates.push_back(
            aggregate_point(result.points[p], result.trials, p * trials, trials));
    }

    result.csv_path = resolve_output_path(config);
    write_csv(result, result.csv_path);
    if (config.emit_plot_data) emit_plot_files(config, result);
    return result;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw PreconditionError("fit_loglog_slope: need at least 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [l, md] : points) {
        if (!(md > 0.0) || !(l > 0.0)) {
            throw PreconditionError("fit_loglog_slope: points must be positive");
        }
        const double x = std::log10(l);
        const double y = std::log10(md);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw PreconditionError("fit_loglog_slope: degenerate x values");
    return (n * sxy - sx * sy) / denom;
}

std::string trial_csv_header() {
    return "experiment_id,variant,L,sigma2,delta,trial,seed,md,md_bound,da_ss_equal,"
           "error_flag,elapsed_ms";
}

std::string trial_csv_row(const TrialResult& row) {
    std::ostringstream out;
    out << row.experiment_id << ',' << variant_name(row.variant) << ',' << row.n_snapshots
        << ',' << fmt_real(row.sigma2) << ',' << fmt_real(row.delta) << ',' << row.trial_index
        << ',' << row.seed << ',' << fmt_real(row.md) << ',' << fmt_real(row.md_bound) << ','
        << (row.da_ss_equal ? 1 : 0) << ',' << (row.error_flag ? 1 : 0) << ','
        << fmt_real(row.elapsed_ms);
    return out.str();
}

std::string aggregate_csv_header() {
    return "experiment_id,variant,L,sigma2,delta,trials,mean_md,median_md,md_bound,error_rate";
}

std::string aggregate_csv_row(const AggregateRow& row) {
    std::ostringstream out;
    out << row.experiment_id << ',' << variant_name(row.variant) << ',' << row.n_snapshots
        << ',' << fmt_real(row.sigma2) << ',' << fmt_real(row.delta) << ',' << row.trials << ','
        << fmt_real(row.mean_md) << ',' << fmt_real(row.median_md) << ','
        << fmt_real(row.md_bound) << ',' << fmt_real(row.error_rate);
    return out.str();
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r");
        if (begin == std::string::npos) return std::string();
        const auto end = s.find_last_not_of(" \t\r");
        return s.substr(begin, end - begin + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        entries[key] = value;
    }
    return entries;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            std::size_t used = 0;
            const double value = std::stod(token, &used);
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) {
                ++used;
            }
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(value);
        } catch (const std::exception&) {
            throw ConfigError(what + ": cannot parse '" + token + "'");
        }
    }
    if (out.empty()) throw ConfigError(what + ": empty list");
    return out;
}

namespace {

std::vector<Index> parse_count_list(const std::string& text, const std::string& what) {
    std::vector<Index> out;
    for (double value : parse_real_list(text, what)) {
        const auto rounded = static_cast<Index>(std::llround(value));
        if (rounded < 1) throw ConfigError(what + ": entries must be >= 1");
        out.push_back(rounded);
    }
    return out;
}

RealVector to_vector(const std::vector<double>& values) {
    RealVector v(static_cast<Index>(values.size()));
    for (Index i = 0; i < v.size(); ++i) v(i) = values[static_cast<std::size_t>(i)];
    return v;
}

} // namespace

void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, std::string>& entries) {
    int n_virtual = 0;
    std::vector<int> omega;
    auto parse_int = [](const std::string& value, const std::string& what) {
        try {
            return std::stoi(value);
        } catch (const std::exception&) {
            throw ConfigError(what + ": cannot parse '" + value + "'");
        }
    };
    for (const auto& [key, value] : entries) {
        if (key == "omega") {
            omega = parse_index_list(value);
        } else if (key == "n_virtual") {
            n_virtual = parse_int(value, "n_virtual");
        } else if (key == "freqs") {
            config.freqs = to_vector(parse_real_list(value, "freqs"));
        } else if (key == "powers") {
            config.powers = to_vector(parse_real_list(value, "powers"));
        } else if (key == "variant") {
            config.variant = parse_variant(value);
        } else if (key == "l_grid") {
            config.l_grid = parse_count_list(value, "l_grid");
        } else if (key == "sigma_grid") {
            config.sigma_grid = parse_real_list(value, "sigma_grid");
        } else if (key == "delta_grid") {
            config.delta_grid = parse_real_list(value, "delta_grid");
        } else if (key == "trials") {
            config.trials = parse_int(value, "trials");
        } else if (key == "base_seed") {
            try {
                config.base_seed = std::stoull(value);
            } catch (const std::exception&) {
                throw ConfigError("base_seed: cannot parse '" + value + "'");
            }
        } else if (key == "output") {
            config.output_path = value;
        } else if (key == "workers") {
            config.workers = parse_int(value, "workers");
        } else if (key == "experiment_id") {
            config.experiment_id = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (!omega.empty()) config.geometry = Geometry(omega, n_virtual);
    if (omega.empty() && n_virtual > 0) {
        config.geometry = Geometry(config.geometry.omega, n_virtual);
    }
}

std::string resolve_output_path(const ExperimentConfig& config) {
    std::string path = config.output_path.empty() ? config.experiment_id + ".csv"
                                                  : config.output_path;
    if (!path.empty() && path.front() == '/') return path;
    const char* outdir = std::getenv("SLA_ESPRIT_OUTDIR");
    if (outdir != nullptr && outdir[0] != '\0') {
        std::string dir(outdir);
        if (dir.back() != '/') dir += '/';
        return dir + path;
    }
    return path;
}

namespace {

std::vector<Index> half_decade_grid(double lo_exp, double hi_exp) {
    std::vector<Index> grid;
    for (double e = lo_exp; e <= hi_exp + 1e-9; e += 0.5) {
        grid.push_back(static_cast<Index>(std::llround(std::pow(10.0, e))));
    }
    return grid;
}

} // namespace

ExperimentConfig experiment1_preset() {
    ExperimentConfig config;
    config.experiment_id = "exp1";
    config.variant = VariantChoice::DA;
    config.l_grid = half_decade_grid(1.0, 4.0);
    config.sigma_grid = {0.0, 0.3, 1.0, 3.0};
    config.trials = 200;
    return config;
}

ExperimentConfig experiment2_preset() {
    ExperimentConfig config;
    config.experiment_id = "exp2";
    config.variant = VariantChoice::DA;
    config.l_grid = {100, 1000, 10000};
    config.sigma_grid.clear();
    for (double e = -2.0; e <= 2.0 + 1e-9; e += 0.5) {
        config.sigma_grid.push_back(std::sqrt(std::pow(10.0, e)));
    }
    config.trials = 200;
    return config;
}

ExperimentConfig experiment3_preset() {
    ExperimentConfig config;
    config.experiment_id = "exp3";
    config.variant = VariantChoice::DA;
    config.l_grid = half_decade_grid(1.0, 4.0);
    config.sigma_grid = {1.0};
    config.delta_grid = {0.018, 0.036, 0.071, 0.143};
    config.trials = 200;
    return config;
}

} // namespace sla
