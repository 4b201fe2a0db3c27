#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alsvm/al_engine.hpp"

namespace alsvm {

struct NamedArm {
    std::string name;
    ALConfig config;
};

enum class Protocol { Holdout, KFold };

struct ExperimentSpec {
    std::filesystem::path train_path;
    std::optional<std::filesystem::path> test_path;
    Protocol protocol = Protocol::Holdout;
    std::size_t folds = 10;               // KFold only, >= 2
    double holdout_fraction = 0.3;        // Holdout without a test file
    std::vector<NamedArm> arms;
    std::uint64_t rng_seed = 0;
    std::filesystem::path output_dir = "results";
    std::size_t threads = 0;              // 0 = hardware concurrency

    // Throws ConfigError.
    void validate() const;
};

// Arm name derived from a policy string, e.g. "fixed-3" for fixed:3.
std::string default_arm_name(const CostPolicy& policy);

// Reads the JSON experiment document. Relative data paths resolve against
// `base_dir`.
ExperimentSpec load_experiment_spec(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json to_json(const ExperimentSpec& spec);

struct CurvePoint {
    std::size_t labeled_size = 0;
    double mean_f1 = 0.0;
    double stddev_f1 = 0.0;  // sample standard deviation across folds, 0 for one fold
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    double mean_pos_fraction = 0.0;
};

struct ArmResult {
    std::string name;
    std::vector<std::string> fold_names;  // parallel to folds
    std::vector<ALTrace> folds;
    std::vector<CurvePoint> curve;
};

struct ResultBundle {
    std::vector<ArmResult> arms;
    std::vector<std::string> warnings;
};

// Per-arm learning curve over the labeled sizes evaluated in every fold.
std::vector<CurvePoint> aggregate_curve(const std::vector<ALTrace>& folds);

// Stratified fold assignment: fold id per example, seeded.
std::vector<std::size_t> stratified_folds(const Dataset& data, std::size_t folds, std::uint64_t rng_seed);

// Runs every arm on every fold, possibly in parallel. Pure function of `spec`
// and the data; does not write files.
ResultBundle run_experiment(const ExperimentSpec& spec, const Dataset& train,
                            const Dataset* test = nullptr);
// Loads the datasets named in `spec` first.
ResultBundle run_experiment(const ExperimentSpec& spec);

struct CurveTable {
    std::vector<std::string> header;  // labeled_size, then <arm>_f1_mean, <arm>_f1_sd per arm
    std::vector<std::vector<double>> rows;
    std::vector<std::string> warnings;
};

// One row per labeled size shared by all arms. Throws ArgumentError on an
// empty bundle.
CurveTable curve_table(const ResultBundle& bundle);
void write_curve_csv(std::ostream& out, const CurveTable& table);

// <out>/<arm>/<fold>/{trace.json,trace.csv,model.txt}, <out>/curves.csv, <out>/meta.json
void write_results(const std::filesystem::path& out_dir, const ResultBundle& bundle,
                   const nlohmann::json& meta);

// Reloads <dir>/<arm>/<fold>/trace.json into a bundle. Arms follow the order in
// <dir>/meta.json when present, then name order; folds are sorted by name.
ResultBundle load_results(const std::filesystem::path& dir);

}  // namespace alsvm
