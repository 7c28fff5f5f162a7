#include "sla/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "sla/analysis.hpp"
#include "sla/covariance.hpp"
#include "sla/esprit.hpp"
#include "sla/harness.hpp"

namespace sla {

namespace {

struct SceneFlags {
    std::string omega = "0,1,6,9,11,13";
    int n_virtual = 0;
    std::string freqs;
    std::string powers;
    double sigma = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--omega", omega, "sensor positions, comma-separated integers")
            ->capture_default_str();
        cmd->add_option("--n_virtual", n_virtual, "virtual ULA size (default: max position + 1)");
        cmd->add_option("--freqs", freqs, "source frequencies in [0,1), comma-separated");
        cmd->add_option("--powers", powers, "source powers, comma-separated (default: all 1)");
        cmd->add_option("--sigma", sigma, "noise standard deviation")->capture_default_str();
    }

    Geometry geometry() const {
        return Geometry(parse_index_list(omega), n_virtual);
    }

    SourceScene scene() const {
        const double sigma2 = sigma * sigma;
        RealVector f;
        if (!freqs.empty()) {
            const std::vector<double> values = parse_real_list(freqs, "freqs");
            f.resize(static_cast<Index>(values.size()));
            for (Index i = 0; i < f.size(); ++i) f(i) = values[static_cast<std::size_t>(i)];
        } else {
            f = benchmark_scene(0.0).freqs;
        }
        if (!powers.empty()) {
            const std::vector<double> values = parse_real_list(powers, "powers");
            RealVector p(static_cast<Index>(values.size()));
            for (Index i = 0; i < p.size(); ++i) p(i) = values[static_cast<std::size_t>(i)];
            return SourceScene(f, p, sigma2);
        }
        return SourceScene(f, sigma2);
    }
};

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

std::string join_freqs(const RealVector& values) {
    std::ostringstream out;
    for (Index i = 0; i < values.size(); ++i) {
        if (i > 0) out << ' ';
        out << values(i);
    }
    return out.str();
}

void run_geometry(const SceneFlags& flags, std::ostream& out) {
    const Geometry geom = flags.geometry();
    const Coarray ca = coarray(geom);
    const SourceScene scene = flags.scene();
    const BoundIngredients in = bound_ingredients(geom, scene, 1);
    out << "omega = " << join_ints(geom.omega) << "\n"
        << "N_S = " << geom.n_sensors() << "\n"
        << "N = " << geom.n_virtual << "\n"
        << "coarray = " << join_ints(ca.differences) << "\n"
        << "M = " << ca.m_contig << "\n"
        << "K = " << scene.n_sources() << "\n"
        << "sigma_K_A_M = " << in.sigma_k_a_m << "\n"
        << "norm_A_Omega = " << in.norm_a_omega << "\n";
}

void run_simulate(const SceneFlags& flags, Index n_snapshots, std::uint64_t seed,
                  const std::string& variant_text, const std::string& dump_path,
                  std::ostream& out) {
    const Geometry geom = flags.geometry();
    const SourceScene scene = flags.scene();
    const Index k = scene.n_sources();
    const Snapshots y = sample_snapshots(geom, scene, n_snapshots, seed);
    const CovarianceSet set = covariance_set(y);

    out << "omega = " << join_ints(geom.omega) << "\n"
        << "L = " << n_snapshots << ", sigma2 = " << scene.noise_power << ", seed = " << seed
        << ", K = " << k << "\n"
        << "truth = " << join_freqs(scene.freqs) << "\n";

    const HermitianEig eig = hermitian_eig(set.r_da);
    out << "da_ss_equal = " << (da_ss_same_subspace(eig.eigenvalues, k) ? 1 : 0) << "\n";

    const VariantChoice choice = parse_variant(variant_text);
    for (Variant variant : choice == VariantChoice::Both
                               ? std::vector<Variant>{Variant::DA, Variant::SS}
                               : std::vector<Variant>{choice == VariantChoice::DA
                                                          ? Variant::DA
                                                          : Variant::SS}) {
        const FrequencyEstimate est =
            esprit_from_ula_cov(set.r_da, k, variant);
        out << variant_name(variant) << " = " << join_freqs(est.freqs) << "\n"
            << variant_name(variant)
            << "_md = " << matched_distance(est.freqs, scene.freqs) << "\n";
    }

    if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        if (!dump) throw ConfigError("cannot open dump file '" + dump_path + "'");
        dump_covariance_set(set, dump);
        out << "covariance dump written to " << dump_path << "\n";
    }
}

void print_aggregates(const SweepResult& result, std::ostream& out) {
    out << aggregate_csv_header() << "\n";
    for (const AggregateRow& agg : result.aggregates) out << aggregate_csv_row(agg) << "\n";
    out << "trial rows written to " << result.csv_path << "\n";
}

// Sweep-style subcommands share the config-file keys as flags; flags set on
// the command line win over the file, the file wins over preset defaults.
struct SweepFlags {
    std::string config_path;
    std::map<std::string, std::string> values;
    bool emit_plot_data = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key = value config file");
        add_key(cmd, "experiment_id", "label written into every CSV row");
        add_key(cmd, "omega", "sensor positions, comma-separated integers");
        add_key(cmd, "n_virtual", "virtual ULA size");
        add_key(cmd, "freqs", "source frequencies in [0,1)");
        add_key(cmd, "powers", "source powers (default: all 1)");
        add_key(cmd, "variant", "DA, SS or both");
        add_key(cmd, "l_grid", "snapshot counts, comma-separated");
        add_key(cmd, "sigma_grid", "noise std values, comma-separated");
        add_key(cmd, "delta_grid", "separation sweep: last source sits delta above its neighbor");
        add_key(cmd, "trials", "Monte Carlo trials per grid point");
        add_key(cmd, "base_seed", "base RNG seed");
        add_key(cmd, "output", "CSV output path");
        add_key(cmd, "workers", "worker threads (0 = all cores)");
        cmd->add_flag("--emit-plot-data", emit_plot_data,
                      "write per-curve (x, mean md) text files next to the CSV");
    }

    void add_key(CLI::App* cmd, const std::string& key, const std::string& help) {
        cmd->add_option_function<std::string>(
               "--" + key,
               [this, key](const std::string& value) { values[key] = value; }, help)
            ->type_name("TEXT");
    }

    ExperimentConfig resolve(ExperimentConfig base) const {
        if (!config_path.empty()) apply_config_entries(base, parse_config_file(config_path));
        apply_config_entries(base, values);
        if (emit_plot_data) base.emit_plot_data = true;
        return base;
    }
};

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"DA/SS-ESPRIT direction-of-arrival estimation with sparse linear arrays"};
    app.require_subcommand(1);

    // geometry
    auto* geometry_cmd = app.add_subcommand("geometry", "inspect a sparse-array geometry");
    auto geometry_flags = std::make_shared<SceneFlags>();
    geometry_flags->attach(geometry_cmd);

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "run a single trial and print estimates");
    auto simulate_flags = std::make_shared<SceneFlags>();
    simulate_flags->attach(simulate_cmd);
    auto simulate_l = std::make_shared<Index>(1000);
    auto simulate_seed = std::make_shared<std::uint64_t>(0);
    auto simulate_variant = std::make_shared<std::string>("both");
    auto simulate_dump = std::make_shared<std::string>();
    simulate_cmd->add_option("-L,--snapshots", *simulate_l, "snapshot count")
        ->capture_default_str();
    simulate_cmd->add_option("--seed", *simulate_seed, "RNG seed")->capture_default_str();
    simulate_cmd->add_option("--variant", *simulate_variant, "DA, SS or both")
        ->capture_default_str();
    simulate_cmd->add_option("--dump-cov", *simulate_dump, "write the covariance chain to a file");

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "evaluate the nonasymptotic error bounds");
    auto bound_flags = std::make_shared<SceneFlags>();
    bound_flags->attach(bound_cmd);
    auto bound_l = std::make_shared<Index>(10000);
    bound_cmd->add_option("-L,--snapshots", *bound_l, "snapshot count")->capture_default_str();

    // sweep + presets
    auto* sweep_cmd = app.add_subcommand("sweep", "run a Monte Carlo sweep from a config");
    auto sweep_flags = std::make_shared<SweepFlags>();
    sweep_flags->attach(sweep_cmd);

    auto* exp1_cmd = app.add_subcommand("exp1", "matched distance vs snapshot count");
    auto exp1_flags = std::make_shared<SweepFlags>();
    exp1_flags->attach(exp1_cmd);

    auto* exp2_cmd = app.add_subcommand("exp2", "matched distance vs noise power");
    auto exp2_flags = std::make_shared<SweepFlags>();
    exp2_flags->attach(exp2_cmd);

    auto* exp3_cmd = app.add_subcommand("exp3", "matched distance vs source separation");
    auto exp3_flags = std::make_shared<SweepFlags>();
    exp3_flags->attach(exp3_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (geometry_cmd->parsed()) {
            run_geometry(*geometry_flags, out);
        } else if (simulate_cmd->parsed()) {
            run_simulate(*simulate_flags, *simulate_l, *simulate_seed, *simulate_variant,
                         *simulate_dump, out);
        } else if (bound_cmd->parsed()) {
            const BoundReport report =
                bound_report(bound_flags->geometry(), bound_flags->scene(), *bound_l);
            print_bound_report(report, out);
        } else if (sweep_cmd->parsed()) {
            print_aggregates(run_sweep(sweep_flags->resolve(ExperimentConfig{})), out);
        } else if (exp1_cmd->parsed()) {
            print_aggregates(run_sweep(exp1_flags->resolve(experiment1_preset())), out);
        } else if (exp2_cmd->parsed()) {
            print_aggregates(run_sweep(exp2_flags->resolve(experiment2_preset())), out);
        } else if (exp3_cmd->parsed()) {
            print_aggregates(run_sweep(exp3_flags->resolve(experiment3_preset())), out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_main(args, std::cout, std::cerr);
}

} // namespace sla
