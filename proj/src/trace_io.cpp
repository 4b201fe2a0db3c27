#include "alsvm/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "alsvm/error.hpp"

namespace alsvm {

using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

json to_json(const SolverDiagnostics& d) {
    return {{"epochs", d.epochs},
            {"converged", d.converged},
            {"duality_gap", d.duality_gap},
            {"relative_gap", d.relative_gap},
            {"kkt_violation", d.kkt_violation}};
}

SolverDiagnostics diagnostics_from_json(const json& j) {
    SolverDiagnostics d;
    d.epochs = j.at("epochs").get<std::size_t>();
    d.converged = j.at("converged").get<bool>();
    d.duality_gap = j.at("duality_gap").get<double>();
    d.relative_gap = j.at("relative_gap").get<double>();
    d.kkt_violation = j.at("kkt_violation").get<double>();
    return d;
}

EvalMetrics metrics_from_json(const json& j) {
    EvalMetrics m = metrics_from_counts(j.at("tp").get<std::size_t>(), j.at("fp").get<std::size_t>(),
                                        j.at("fn").get<std::size_t>(), j.at("tn").get<std::size_t>());
    return m;
}

template <class T>
void read_if(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

}  // namespace

json to_json(const ALConfig& c) {
    return {{"batch_size", c.batch_size},
            {"seed_size", c.seed_size},
            {"max_rounds", c.max_rounds ? json(*c.max_rounds) : json(nullptr)},
            {"stop_when_pool_empty", c.stop_when_pool_empty},
            {"sampling_policy", c.sampling_policy.to_string()},
            {"prediction_policy", c.effective_prediction_policy().to_string()},
            {"rng_seed", c.rng_seed},
            {"cost_neg", c.cost_neg ? json(*c.cost_neg) : json(nullptr)},
            {"eval_stride", c.eval_stride},
            {"keep_round_models", c.keep_round_models},
            {"solver",
             {{"tolerance", c.solver.tolerance},
              {"kkt_tolerance", c.solver.kkt_tolerance},
              {"max_epochs", c.solver.max_epochs},
              {"shuffle_seed", c.solver.shuffle_seed}}}};
}

ALConfig config_from_json(const json& j, const ALConfig& defaults) {
    if (!j.is_object()) throw ConfigError("arm configuration must be a JSON object");
    ALConfig c = defaults;
    try {
        read_if(j, "batch_size", c.batch_size);
        read_if(j, "seed_size", c.seed_size);
        if (auto it = j.find("max_rounds"); it != j.end())
            c.max_rounds = it->is_null() ? std::nullopt : std::optional<std::size_t>(it->get<std::size_t>());
        read_if(j, "stop_when_pool_empty", c.stop_when_pool_empty);
        for (const char* key : {"policy", "sampling_policy"})
            if (auto it = j.find(key); it != j.end()) c.sampling_policy = CostPolicy::parse(it->get<std::string>());
        if (auto it = j.find("prediction_policy"); it != j.end())
            c.prediction_policy = it->is_null() ? std::nullopt
                                                : std::optional<CostPolicy>(CostPolicy::parse(it->get<std::string>()));
        read_if(j, "rng_seed", c.rng_seed);
        if (auto it = j.find("cost_neg"); it != j.end())
            c.cost_neg = it->is_null() ? std::nullopt : std::optional<double>(it->get<double>());
        read_if(j, "eval_stride", c.eval_stride);
        read_if(j, "keep_round_models", c.keep_round_models);
        if (auto it = j.find("solver"); it != j.end()) {
            read_if(*it, "tolerance", c.solver.tolerance);
            read_if(*it, "kkt_tolerance", c.solver.kkt_tolerance);
            read_if(*it, "max_epochs", c.solver.max_epochs);
            read_if(*it, "shuffle_seed", c.solver.shuffle_seed);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad arm configuration: ") + e.what());
    }
    return c;
}

json to_json(const EvalMetrics& m) {
    return {{"tp", m.tp},           {"fp", m.fp},         {"fn", m.fn}, {"tn", m.tn},
            {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

json to_json(const RoundRecord& r) {
    return {{"round", r.round},
            {"labeled_size", r.labeled_size},
            {"n_pos_labeled", r.n_pos_labeled},
            {"n_neg_labeled", r.n_neg_labeled},
            {"labeled_pos_fraction", r.labeled_pos_fraction},
            {"pa_sampling", r.pa_sampling},
            {"pa_prediction", r.pa_prediction},
            {"cost_neg", r.cost_neg},
            {"pa_fallback", r.pa_fallback},
            {"selected", r.selected},
            {"metrics", r.metrics ? to_json(*r.metrics) : json(nullptr)},
            {"sampling_solver", to_json(r.sampling_solver)},
            {"prediction_solver", to_json(r.prediction_solver)}};
}

json to_json(const ALTrace& t) {
    json rounds = json::array();
    for (const auto& r : t.rounds) rounds.push_back(to_json(r));
    return {{"config", to_json(t.config)}, {"seed_ids", t.seed_ids}, {"rounds", std::move(rounds)}};
}

ALTrace trace_from_json(const json& j) {
    ALTrace t;
    try {
        t.config = config_from_json(j.at("config"));
        t.seed_ids = j.at("seed_ids").get<std::vector<std::size_t>>();
        for (const auto& jr : j.at("rounds")) {
            RoundRecord r;
            r.round = jr.at("round").get<std::size_t>();
            r.labeled_size = jr.at("labeled_size").get<std::size_t>();
            r.n_pos_labeled = jr.at("n_pos_labeled").get<std::size_t>();
            r.n_neg_labeled = jr.at("n_neg_labeled").get<std::size_t>();
            r.labeled_pos_fraction = jr.at("labeled_pos_fraction").get<double>();
            r.pa_sampling = jr.at("pa_sampling").get<double>();
            r.pa_prediction = jr.at("pa_prediction").get<double>();
            r.cost_neg = jr.at("cost_neg").get<double>();
            r.pa_fallback = jr.at("pa_fallback").get<bool>();
            r.selected = jr.at("selected").get<std::vector<std::size_t>>();
            if (!jr.at("metrics").is_null()) r.metrics = metrics_from_json(jr.at("metrics"));
            r.sampling_solver = diagnostics_from_json(jr.at("sampling_solver"));
            r.prediction_solver = diagnostics_from_json(jr.at("prediction_solver"));
            t.rounds.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed trace: ") + e.what(), 0);
    }
    return t;
}

std::string dump_trace(const ALTrace& trace) { return to_json(trace).dump(2) + "\n"; }

void write_trace_json(const std::filesystem::path& path, const ALTrace& trace) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << dump_trace(trace);
}

ALTrace read_trace_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw FormatError(e.what(), 0, path.string());
    }
    try {
        return trace_from_json(j);
    } catch (const FormatError& e) {
        throw FormatError(e.message(), 0, path.string());
    }
}

void write_trace_csv(std::ostream& out, const ALTrace& trace) {
    out << "round,labeled_size,pa_sampling,pa_prediction,pos_fraction,precision,recall,f1\n";
    for (const auto& r : trace.rounds) {
        out << r.round << ',' << r.labeled_size << ',' << num(r.pa_sampling) << ',' << num(r.pa_prediction) << ','
            << num(r.labeled_pos_fraction) << ',';
        if (r.metrics)
            out << num(r.metrics->precision) << ',' << num(r.metrics->recall) << ',' << num(r.metrics->f1);
        else
            out << ",,";
        out << '\n';
    }
}

}  // namespace alsvm
