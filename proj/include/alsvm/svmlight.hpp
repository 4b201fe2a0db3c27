#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "alsvm/dataset.hpp"

namespace alsvm {

// SVM-light text format: one `<label> <idx>:<val> ...` line per example.
// Blank lines and lines starting with `#` are skipped; a trailing `# ...`
// comment on a data line is ignored. Labels accept `+1`, `1` and `-1`.
// Throws FormatError (with the 1-based line number) on malformed input.
Dataset parse_svmlight(std::istream& in);
Dataset parse_svmlight(std::string_view text);
Dataset read_svmlight_file(const std::filesystem::path& path);

// Emits `+1`/`-1` labels and shortest round-trip decimal values.
void write_svmlight(std::ostream& out, const Dataset& data);
std::string write_svmlight(const Dataset& data);
void write_svmlight_file(const std::filesystem::path& path, const Dataset& data);

}  // namespace alsvm
