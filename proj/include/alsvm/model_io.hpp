#pragma once

#include <filesystem>
#include <iosfwd>

#include "alsvm/svm.hpp"

namespace alsvm {

// Text dump: `bias <value>` on the first line, then `index value` for every
// nonzero weight in ascending index order. Duals and diagnostics are not kept.
void write_model(std::ostream& out, const LinearModel& model);
void write_model_file(const std::filesystem::path& path, const LinearModel& model);

// Inverse of write_model. Throws FormatError on malformed input.
LinearModel read_model(std::istream& in);

}  // namespace alsvm
