#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alsvm/al_engine.hpp"
#include "alsvm/error.hpp"
#include "alsvm/experiment.hpp"
#include "alsvm/kernels.hpp"
#include "alsvm/proportion.hpp"
#include "alsvm/svmlight.hpp"
#include "alsvm/synthetic.hpp"
#include "alsvm/trace_io.hpp"

#ifndef ALSVM_VERSION
#define ALSVM_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using namespace alsvm;

namespace {

// Overrides shared by `run` and `skew`.
struct ArmOverrides {
    std::optional<std::size_t> batch_size;
    std::optional<std::size_t> seed_size;
    std::optional<std::size_t> rounds;
    std::vector<std::string> policies;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--batch-size", batch_size, "Points queried per round")->check(CLI::PositiveNumber);
        cmd.add_option("--seed-size", seed_size, "Size of the random initial labeled set");
        cmd.add_option("--rounds", rounds, "Maximum number of selection rounds");
    }

    void apply(ALConfig& c) const {
        if (batch_size) c.batch_size = *batch_size;
        if (seed_size) c.seed_size = *seed_size;
        if (rounds) c.max_rounds = *rounds;
    }
};

nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

Protocol parse_protocol(const std::string& s) {
    if (s == "holdout") return Protocol::Holdout;
    if (s == "kfold") return Protocol::KFold;
    throw ConfigError("unknown protocol '" + s + "' (expected holdout or kfold)");
}

// ---------------------------------------------------------------- run

struct RunArgs {
    std::optional<fs::path> config;
    std::optional<fs::path> train;
    std::optional<fs::path> test;
    std::optional<std::string> protocol;
    std::optional<std::size_t> folds;
    std::optional<std::uint64_t> seed;
    std::optional<fs::path> out;
    std::optional<std::size_t> threads;
    ArmOverrides arm;
};

ExperimentSpec build_spec(const RunArgs& a) {
    ExperimentSpec spec;
    if (a.config) {
        spec = load_experiment_spec(read_json_file(*a.config), a.config->parent_path());
    } else if (!a.train) {
        throw ArgumentError("run: give a config file or --train");
    }
    if (a.train) spec.train_path = *a.train;
    if (a.test) spec.test_path = *a.test;
    if (a.protocol) spec.protocol = parse_protocol(*a.protocol);
    if (a.folds) spec.folds = *a.folds;
    if (a.seed) spec.rng_seed = *a.seed;
    if (a.out) spec.output_dir = *a.out;
    if (a.threads) spec.threads = *a.threads;

    if (!a.arm.policies.empty()) {
        const ALConfig base = spec.arms.empty() ? ALConfig{} : spec.arms.front().config;
        spec.arms.clear();
        for (const auto& p : a.arm.policies) {
            ALConfig c = base;
            c.sampling_policy = CostPolicy::parse(p);
            c.prediction_policy.reset();
            spec.arms.push_back({default_arm_name(c.sampling_policy), c});
        }
    }
    if (spec.arms.empty()) spec.arms.push_back({default_arm_name(ALConfig{}.sampling_policy), ALConfig{}});
    for (auto& arm : spec.arms) a.arm.apply(arm.config);
    spec.validate();
    return spec;
}

int cmd_run(const RunArgs& a) {
    const auto spec = build_spec(a);
    const auto bundle = run_experiment(spec);
    nlohmann::json meta = to_json(spec);
    meta["tool"] = "alsvm";
    meta["version"] = ALSVM_VERSION;
    meta["kernels"] = std::string(simd::isa_name(simd::active_kernels().isa));
    write_results(spec.output_dir, bundle, meta);
    for (const auto& w : bundle.warnings) std::cerr << "warning: " << w << '\n';
    std::size_t traces = 0;
    for (const auto& arm : bundle.arms) traces += arm.folds.size();
    std::cout << "wrote " << traces << " traces for " << bundle.arms.size() << " arms to " << spec.output_dir.string()
              << '\n';
    return 0;
}

// ---------------------------------------------------------------- skew

struct SkewArgs {
    std::optional<fs::path> data;
    std::optional<fs::path> config;
    SyntheticSpec synthetic;
    std::optional<std::uint64_t> seed;
    std::optional<fs::path> out;
    ArmOverrides arm;
    std::string policy;
};

int cmd_skew(const SkewArgs& a) {
    ALConfig cfg;
    if (a.config) cfg = config_from_json(read_json_file(*a.config));
    if (!a.policy.empty()) {
        cfg.sampling_policy = CostPolicy::parse(a.policy);
        cfg.prediction_policy.reset();
    }
    if (a.seed) cfg.rng_seed = *a.seed;
    a.arm.apply(cfg);
    cfg.eval_stride = std::max<std::size_t>(cfg.eval_stride, 1);

    const Dataset pool = a.data ? read_svmlight_file(*a.data) : generate_gaussians(a.synthetic);
    const auto trace = run_al(pool, cfg);

    std::ofstream file;
    if (a.out) {
        file.open(*a.out);
        if (!file) throw Error("cannot write " + a.out->string());
    }
    std::ostream& os = a.out ? file : std::cout;
    os << "round,labeled_size,pos_fraction\n";
    for (const auto& r : trace.rounds) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", r.labeled_pos_fraction);
        os << r.round << ',' << r.labeled_size << ',' << buf << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- samplesize

struct SampleSizeArgs {
    double margin = 0.0;
    double confidence = 0.95;
    std::optional<std::size_t> population;
    double p_guess = 0.5;
};

int cmd_samplesize(const SampleSizeArgs& a) {
    const auto n = required_sample_size(a.margin, a.confidence, a.population, a.p_guess);
    const double achieved = proportion_margin(n, a.confidence, a.population, a.p_guess);
    std::printf("n %zu\nmargin %.6f\n", n, achieved);
    return 0;
}

// ---------------------------------------------------------------- gen

int cmd_gen(const SyntheticSpec& s, const std::optional<fs::path>& out) {
    const auto data = generate_gaussians(s);
    if (out)
        write_svmlight_file(*out, data);
    else
        write_svmlight(std::cout, data);
    return 0;
}

// ---------------------------------------------------------------- curves

int cmd_curves(const fs::path& dir, const std::optional<fs::path>& out) {
    const auto bundle = load_results(dir);
    const auto table = curve_table(bundle);
    const fs::path target = out ? *out : dir / "curves.csv";
    std::ofstream file(target);
    if (!file) throw Error("cannot write " + target.string());
    write_curve_csv(file, table);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "wrote " << table.rows.size() << " rows to " << target.string() << '\n';
    return 0;
}

void add_synthetic_options(CLI::App& cmd, SyntheticSpec& s, const std::string& seed_flag) {
    cmd.add_option("--n", s.n, "Number of points")->capture_default_str();
    cmd.add_option("--dim", s.dimension, "Dimension")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--pos-fraction", s.positive_fraction, "Fraction of positives")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--separation", s.separation, "Distance between the class means")->capture_default_str();
    cmd.add_option(seed_flag, s.seed, "Generator seed")->capture_default_str();
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-weighted linear SVM active learning"};
    app.set_version_flag("--version", ALSVM_VERSION);
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON spec and write results");
    run_cmd->add_option("config", run.config, "Experiment JSON file")->check(CLI::ExistingFile);
    run_cmd->add_option("--train", run.train, "Training pool (SVM-light)");
    run_cmd->add_option("--test", run.test, "Test set (SVM-light)");
    run_cmd->add_option("--protocol", run.protocol, "holdout or kfold");
    run_cmd->add_option("--folds", run.folds, "Number of folds for kfold");
    run_cmd->add_option("--policy", run.arm.policies,
                        "Policy arm: initpa, currentpa, balanced, oversample or fixed:<pa> (repeatable)");
    run_cmd->add_option("--seed", run.seed, "Experiment seed");
    run_cmd->add_option("--out", run.out, "Output directory");
    run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all cores)");
    run.arm.add_to(*run_cmd);

    // Defaults reproduce the documented skew run.
    SkewArgs skew;
    skew.synthetic.dimension = 100;
    skew.synthetic.separation = 4.0;
    skew.synthetic.seed = 100;
    skew.seed = 100;
    skew.arm.rounds = 20;
    skew.policy = "currentpa";
    auto* skew_cmd = app.add_subcommand("skew", "Print the labeled positive fraction per round as CSV");
    skew_cmd->add_option("--data", skew.data, "Pool with labels (SVM-light); synthetic if omitted")
        ->check(CLI::ExistingFile);
    skew_cmd->add_option("--config", skew.config, "Arm configuration JSON")->check(CLI::ExistingFile);
    skew_cmd->add_option("--policy", skew.policy, "Sampling policy")->capture_default_str();
    skew_cmd->add_option("--seed", skew.seed, "Seed for the initial labeled set")->capture_default_str();
    skew_cmd->add_option("--out", skew.out, "Output CSV (stdout if omitted)");
    skew.arm.add_to(*skew_cmd);
    add_synthetic_options(*skew_cmd, skew.synthetic, "--data-seed");

    SampleSizeArgs ss;
    auto* ss_cmd = app.add_subcommand("samplesize", "Sample size needed to estimate a class proportion");
    ss_cmd->add_option("--margin", ss.margin, "Half-width of the interval")->required();
    ss_cmd->add_option("--confidence", ss.confidence, "Confidence level")->capture_default_str();
    ss_cmd->add_option("--population", ss.population, "Population size (infinite if omitted)");
    ss_cmd->add_option("--p-guess", ss.p_guess, "Prior guess of the proportion")->capture_default_str();

    SyntheticSpec gen;
    std::optional<fs::path> gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic two-Gaussian dataset in SVM-light format");
    add_synthetic_options(*gen_cmd, gen, "--seed");
    gen_cmd->add_option("--out", gen_out, "Output file (stdout if omitted)");

    fs::path curves_dir;
    std::optional<fs::path> curves_out;
    auto* curves_cmd = app.add_subcommand("curves", "Re-aggregate traces under a results directory");
    curves_cmd->add_option("dir", curves_dir, "Results directory")->required()->check(CLI::ExistingDirectory);
    curves_cmd->add_option("--out", curves_out, "Output CSV (default <dir>/curves.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "alsvm: error: " << one_line(e.what()) << '\n';
        return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*skew_cmd) return cmd_skew(skew);
        if (*ss_cmd) return cmd_samplesize(ss);
        if (*gen_cmd) return cmd_gen(gen, gen_out);
        if (*curves_cmd) return cmd_curves(curves_dir, curves_out);
    } catch (const std::exception& e) {
        std::cerr << "alsvm: error: " << one_line(e.what()) << '\n';
        return 1;
    }
    return 1;
}
