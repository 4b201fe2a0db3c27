#include "alsvm/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "alsvm/error.hpp"

namespace alsvm {
namespace {

std::string shortest(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

double parse_double(std::string_view s, std::size_t line) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw FormatError("bad number '" + std::string(s) + "'", line);
    return v;
}

}  // namespace

void write_model(std::ostream& out, const LinearModel& model) {
    out << "bias " << shortest(model.bias) << '\n';
    for (std::size_t j = 0; j < model.weights.size(); ++j)
        if (model.weights[j] != 0.0) out << (j + 1) << ' ' << shortest(model.weights[j]) << '\n';
}

void write_model_file(const std::filesystem::path& path, const LinearModel& model) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_model(out, model);
}

LinearModel read_model(std::istream& in) {
    LinearModel model;
    std::string line;
    std::size_t lineno = 0;
    bool have_bias = false;
    FeatureIndex last = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a)) continue;
        if (!(fields >> b) || (fields >> extra)) throw FormatError("expected two fields", lineno);
        if (!have_bias) {
            if (a != "bias") throw FormatError("first line must be 'bias <value>'", lineno);
            model.bias = parse_double(b, lineno);
            have_bias = true;
            continue;
        }
        std::uint64_t idx = 0;
        auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), idx);
        if (ec != std::errc{} || p != a.data() + a.size() || idx == 0 || idx > kMaxFeatureIndex)
            throw FormatError("bad feature index '" + a + "'", lineno);
        if (idx <= last) throw FormatError("feature indices must ascend", lineno);
        last = static_cast<FeatureIndex>(idx);
        model.weights.resize(idx, 0.0);
        model.weights[idx - 1] = parse_double(b, lineno);
    }
    if (!have_bias) throw FormatError("missing bias line", 0);
    return model;
}

}  // namespace alsvm
