#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "alsvm/al_engine.hpp"

namespace alsvm {

nlohmann::json to_json(const ALConfig& config);
ALConfig config_from_json(const nlohmann::json& j, const ALConfig& defaults = {});

nlohmann::json to_json(const EvalMetrics& m);
nlohmann::json to_json(const RoundRecord& r);
nlohmann::json to_json(const ALTrace& trace);

// Rebuilds config and rounds; the model pointers stay empty.
ALTrace trace_from_json(const nlohmann::json& j);

std::string dump_trace(const ALTrace& trace);
void write_trace_json(const std::filesystem::path& path, const ALTrace& trace);
ALTrace read_trace_json(const std::filesystem::path& path);

// round,labeled_size,pa_sampling,pa_prediction,pos_fraction,precision,recall,f1
// Metric columns are empty for rounds that were not evaluated.
void write_trace_csv(std::ostream& out, const ALTrace& trace);

}  // namespace alsvm
