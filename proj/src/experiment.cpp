#include "alsvm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "alsvm/error.hpp"
#include "alsvm/model_io.hpp"
#include "alsvm/svmlight.hpp"
#include "alsvm/trace_io.hpp"

namespace alsvm {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::string num(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

bool valid_arm_name(const std::string& name) {
    return !name.empty() && name != "." && name != ".." &&
           std::all_of(name.begin(), name.end(), [](char c) {
               return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
           });
}

struct FoldData {
    std::string name;
    Dataset pool;
    Dataset test;
};

std::vector<FoldData> make_folds(const ExperimentSpec& spec, const Dataset& train, const Dataset* test) {
    std::vector<FoldData> folds;
    if (spec.protocol == Protocol::KFold) {
        auto assignment = stratified_folds(train, spec.folds, spec.rng_seed);
        for (std::size_t f = 0; f < spec.folds; ++f) {
            FoldData fd;
            char name[32];
            std::snprintf(name, sizeof name, "fold%02zu", f);
            fd.name = name;
            for (std::size_t i = 0; i < train.size(); ++i) (assignment[i] == f ? fd.test : fd.pool).push_back(train[i]);
            folds.push_back(std::move(fd));
        }
        return folds;
    }
    FoldData fd;
    fd.name = "holdout";
    if (test != nullptr) {
        fd.pool = train;
        fd.test = *test;
    } else {
        // Stratified holdout: the first round(fraction * n_class) of each shuffled class.
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < train.size(); ++i) (train[i].label == Label::Positive ? pos : neg).push_back(i);
        std::mt19937_64 rng(mix_seed(spec.rng_seed, 0xf01d));
        std::shuffle(pos.begin(), pos.end(), rng);
        std::shuffle(neg.begin(), neg.end(), rng);
        std::vector<bool> in_test(train.size(), false);
        for (auto* cls : {&pos, &neg}) {
            auto take = static_cast<std::size_t>(std::llround(spec.holdout_fraction * static_cast<double>(cls->size())));
            for (std::size_t k = 0; k < take; ++k) in_test[(*cls)[k]] = true;
        }
        for (std::size_t i = 0; i < train.size(); ++i) (in_test[i] ? fd.test : fd.pool).push_back(train[i]);
    }
    folds.push_back(std::move(fd));
    return folds;
}

}  // namespace

void ExperimentSpec::validate() const {
    if (arms.empty()) throw ConfigError("experiment needs at least one arm");
    if (protocol == Protocol::KFold && folds < 2) throw ConfigError("kfold needs folds >= 2");
    if (protocol == Protocol::Holdout && !test_path && !(holdout_fraction > 0.0 && holdout_fraction < 1.0))
        throw ConfigError("holdout_fraction must lie in (0, 1)");
    std::set<std::string> names;
    for (const auto& arm : arms) {
        if (!valid_arm_name(arm.name)) throw ConfigError("invalid arm name '" + arm.name + "'");
        if (!names.insert(arm.name).second) throw ConfigError("duplicate arm name '" + arm.name + "'");
        arm.config.validate();
    }
}

std::string default_arm_name(const CostPolicy& policy) {
    std::string name = policy.to_string();
    std::replace(name.begin(), name.end(), ':', '-');
    return name;
}

ExperimentSpec load_experiment_spec(const json& j, const fs::path& base_dir) {
    ExperimentSpec spec;
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };
    try {
        if (auto it = j.find("train"); it != j.end()) spec.train_path = resolve(it->get<std::string>());
        if (auto it = j.find("test"); it != j.end() && !it->is_null()) spec.test_path = resolve(it->get<std::string>());
        if (auto it = j.find("protocol"); it != j.end()) {
            auto p = it->get<std::string>();
            if (p == "holdout")
                spec.protocol = Protocol::Holdout;
            else if (p == "kfold")
                spec.protocol = Protocol::KFold;
            else
                throw ConfigError("protocol must be 'holdout' or 'kfold'");
        }
        if (auto it = j.find("folds"); it != j.end()) spec.folds = it->get<std::size_t>();
        if (auto it = j.find("holdout_fraction"); it != j.end()) spec.holdout_fraction = it->get<double>();
        if (auto it = j.find("rng_seed"); it != j.end()) spec.rng_seed = it->get<std::uint64_t>();
        if (auto it = j.find("output_dir"); it != j.end()) spec.output_dir = it->get<std::string>();
        if (auto it = j.find("threads"); it != j.end()) spec.threads = it->get<std::size_t>();
        ALConfig defaults;
        if (auto it = j.find("defaults"); it != j.end()) defaults = config_from_json(*it);
        if (auto it = j.find("arms"); it != j.end()) {
            for (const auto& ja : *it) {
                NamedArm arm;
                arm.config = config_from_json(ja, defaults);
                arm.name = ja.contains("name") ? ja.at("name").get<std::string>() : default_arm_name(arm.config.sampling_policy);
                spec.arms.push_back(std::move(arm));
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad experiment spec: ") + e.what());
    }
    return spec;
}

json to_json(const ExperimentSpec& spec) {
    json arms = json::array();
    for (const auto& a : spec.arms) {
        json ja = to_json(a.config);
        ja["name"] = a.name;
        arms.push_back(std::move(ja));
    }
    return {{"train", spec.train_path.string()},
            {"test", spec.test_path ? json(spec.test_path->string()) : json(nullptr)},
            {"protocol", spec.protocol == Protocol::KFold ? "kfold" : "holdout"},
            {"folds", spec.folds},
            {"holdout_fraction", spec.holdout_fraction},
            {"rng_seed", spec.rng_seed},
            {"output_dir", spec.output_dir.string()},
            {"arms", std::move(arms)}};
}

std::vector<std::size_t> stratified_folds(const Dataset& data, std::size_t folds, std::uint64_t rng_seed) {
    if (folds < 2) throw ArgumentError("stratified_folds: need at least 2 folds");
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < data.size(); ++i) (data[i].label == Label::Positive ? pos : neg).push_back(i);
    std::mt19937_64 rng(mix_seed(rng_seed, 0xf01d5));
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);
    std::vector<std::size_t> assignment(data.size(), 0);
    std::size_t slot = 0;
    for (auto* cls : {&pos, &neg})
        for (std::size_t id : *cls) assignment[id] = slot++ % folds;
    return assignment;
}

std::vector<CurvePoint> aggregate_curve(const std::vector<ALTrace>& folds) {
    if (folds.empty()) return {};
    // labeled size -> first evaluated record, per fold
    std::vector<std::map<std::size_t, const RoundRecord*>> by_size(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f)
        for (const auto& r : folds[f].rounds)
            if (r.metrics) by_size[f].try_emplace(r.labeled_size, &r);

    std::vector<CurvePoint> curve;
    for (const auto& [size, _] : by_size[0]) {
        bool everywhere = std::all_of(by_size.begin(), by_size.end(), [&](const auto& m) { return m.count(size) > 0; });
        if (!everywhere) continue;
        CurvePoint pt;
        pt.labeled_size = size;
        const double n = static_cast<double>(folds.size());
        for (const auto& m : by_size) {
            const RoundRecord* r = m.at(size);
            pt.mean_f1 += r->metrics->f1 / n;
            pt.mean_precision += r->metrics->precision / n;
            pt.mean_recall += r->metrics->recall / n;
            pt.mean_pos_fraction += r->labeled_pos_fraction / n;
        }
        if (folds.size() > 1) {
            double ss = 0.0;
            for (const auto& m : by_size) {
                double d = m.at(size)->metrics->f1 - pt.mean_f1;
                ss += d * d;
            }
            pt.stddev_f1 = std::sqrt(ss / (n - 1.0));
        }
        curve.push_back(pt);
    }
    return curve;
}

ResultBundle run_experiment(const ExperimentSpec& spec, const Dataset& train, const Dataset* test) {
    spec.validate();
    const auto folds = make_folds(spec, train, test);

    struct Job {
        std::size_t arm;
        std::size_t fold;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < spec.arms.size(); ++a)
        for (std::size_t f = 0; f < folds.size(); ++f) jobs.push_back({a, f});

    std::vector<ALTrace> traces(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            try {
                // Arms share the seed split within a fold so they start from the same labeled set.
                ALConfig cfg = spec.arms[jobs[j].arm].config;
                cfg.rng_seed = mix_seed(spec.rng_seed, jobs[j].fold);
                traces[j] = run_al(folds[jobs[j].fold].pool, cfg, &folds[jobs[j].fold].test);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };
    std::size_t threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (!errors[j]) continue;
        try {
            std::rethrow_exception(errors[j]);
        } catch (const std::exception& e) {
            throw Error("arm '" + spec.arms[jobs[j].arm].name + "', " + folds[jobs[j].fold].name + ": " + e.what());
        }
    }

    ResultBundle bundle;
    for (std::size_t a = 0; a < spec.arms.size(); ++a) {
        ArmResult arm;
        arm.name = spec.arms[a].name;
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (jobs[j].arm == a) {
                arm.fold_names.push_back(folds[jobs[j].fold].name);
                arm.folds.push_back(std::move(traces[j]));
            }
        arm.curve = aggregate_curve(arm.folds);
        bundle.arms.push_back(std::move(arm));
    }
    return bundle;
}

ResultBundle run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    Dataset train = read_svmlight_file(spec.train_path);
    if (spec.test_path) {
        Dataset test = read_svmlight_file(*spec.test_path);
        return run_experiment(spec, train, &test);
    }
    return run_experiment(spec, train, nullptr);
}

CurveTable curve_table(const ResultBundle& bundle) {
    if (bundle.arms.empty()) throw ArgumentError("curve_table: empty result bundle");
    CurveTable table;
    table.header.push_back("labeled_size");
    std::set<std::size_t> common;
    for (const auto& p : bundle.arms[0].curve) common.insert(p.labeled_size);
    for (const auto& arm : bundle.arms) {
        table.header.push_back(arm.name + "_f1_mean");
        table.header.push_back(arm.name + "_f1_sd");
        std::set<std::size_t> sizes;
        for (const auto& p : arm.curve) sizes.insert(p.labeled_size);
        std::set<std::size_t> kept;
        std::set_intersection(common.begin(), common.end(), sizes.begin(), sizes.end(),
                              std::inserter(kept, kept.begin()));
        common = std::move(kept);
    }
    for (const auto& arm : bundle.arms) {
        if (arm.curve.size() != common.size())
            table.warnings.push_back("arm '" + arm.name + "': " + std::to_string(arm.curve.size()) +
                                     " curve points truncated to the " + std::to_string(common.size()) +
                                     " shared by all arms");
    }
    for (std::size_t size : common) {
        std::vector<double> row{static_cast<double>(size)};
        for (const auto& arm : bundle.arms) {
            auto it = std::find_if(arm.curve.begin(), arm.curve.end(),
                                   [&](const CurvePoint& p) { return p.labeled_size == size; });
            row.push_back(it->mean_f1);
            row.push_back(it->stddev_f1);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_curve_csv(std::ostream& out, const CurveTable& table) {
    for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            if (c == 0)
                out << static_cast<std::size_t>(row[c]);
            else
                out << num(row[c]);
        }
        out << '\n';
    }
}

void write_results(const fs::path& out_dir, const ResultBundle& bundle, const json& meta) {
    auto table = curve_table(bundle);
    for (const auto& arm : bundle.arms) {
        for (std::size_t f = 0; f < arm.folds.size(); ++f) {
            const auto& trace = arm.folds[f];
            fs::path dir = out_dir / arm.name / arm.fold_names.at(f);
            fs::create_directories(dir);
            write_trace_json(dir / "trace.json", trace);
            std::ofstream csv(dir / "trace.csv");
            write_trace_csv(csv, trace);
            if (trace.final_model) write_model_file(dir / "model.txt", *trace.final_model);
        }
    }
    fs::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "curves.csv");
        if (!out) throw Error("cannot write " + (out_dir / "curves.csv").string());
        write_curve_csv(out, table);
    }
    json m = meta;
    m["curve_metric"] = "f1";
    m["curve_metric_note"] = "learning-curve metric assumed to be F1 on the positive class";
    m["warnings"] = table.warnings;
    std::ofstream out(out_dir / "meta.json");
    out << m.dump(2) << '\n';
}

ResultBundle load_results(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
    std::vector<fs::path> arm_dirs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_directory()) arm_dirs.push_back(entry.path());
    std::sort(arm_dirs.begin(), arm_dirs.end());

    // Arms listed in meta.json come first, in their original order.
    std::vector<std::string> listed;
    if (std::ifstream meta(dir / "meta.json"); meta) {
        try {
            const json j = json::parse(meta);
            for (const auto& a : j.at("arms")) listed.push_back(a.at("name").get<std::string>());
        } catch (const json::exception&) {
            listed.clear();
        }
    }
    auto rank = [&](const fs::path& p) {
        auto it = std::find(listed.begin(), listed.end(), p.filename().string());
        return static_cast<std::size_t>(it - listed.begin());
    };
    std::stable_sort(arm_dirs.begin(), arm_dirs.end(),
                     [&](const fs::path& a, const fs::path& b) { return rank(a) < rank(b); });

    ResultBundle bundle;
    for (const auto& arm_dir : arm_dirs) {
        std::vector<fs::path> fold_dirs;
        for (const auto& entry : fs::directory_iterator(arm_dir))
            if (entry.is_directory() && fs::exists(entry.path() / "trace.json")) fold_dirs.push_back(entry.path());
        if (fold_dirs.empty()) continue;
        std::sort(fold_dirs.begin(), fold_dirs.end());
        ArmResult arm;
        arm.name = arm_dir.filename().string();
        for (const auto& fd : fold_dirs) {
            arm.fold_names.push_back(fd.filename().string());
            arm.folds.push_back(read_trace_json(fd / "trace.json"));
        }
        arm.curve = aggregate_curve(arm.folds);
        bundle.arms.push_back(std::move(arm));
    }
    if (bundle.arms.empty()) throw Error("no traces found under " + dir.string());
    return bundle;
}

}  // namespace alsvm
