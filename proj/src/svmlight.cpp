#include "alsvm/svmlight.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "alsvm/error.hpp"

namespace alsvm {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Next whitespace-delimited token, or empty at end of line.
std::string_view next_token(std::string_view& rest) {
    std::size_t b = 0;
    while (b < rest.size() && is_space(rest[b])) ++b;
    std::size_t e = b;
    while (e < rest.size() && !is_space(rest[e])) ++e;
    auto tok = rest.substr(b, e - b);
    rest.remove_prefix(e);
    return tok;
}

Label parse_label(std::string_view tok, std::size_t line) {
    if (tok == "+1" || tok == "1") return Label::Positive;
    if (tok == "-1") return Label::Negative;
    throw FormatError("malformed label '" + std::string(tok) + "'", line);
}

double parse_value(std::string_view s, std::size_t line) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty() || !std::isfinite(v))
        throw FormatError("non-numeric feature value '" + std::string(s) + "'", line);
    return v;
}

FeatureIndex parse_index(std::string_view s, std::size_t line) {
    std::uint64_t idx = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), idx);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw FormatError("malformed feature index '" + std::string(s) + "'", line);
    if (idx == 0 || idx > kMaxFeatureIndex)
        throw FormatError("feature index " + std::string(s) + " out of range", line);
    return static_cast<FeatureIndex>(idx);
}

LabeledExample parse_line(std::string_view text, std::size_t line) {
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    LabeledExample ex;
    ex.label = parse_label(next_token(text), line);
    std::vector<FeatureIndex> idx;
    std::vector<double> val;
    for (auto tok = next_token(text); !tok.empty(); tok = next_token(text)) {
        auto colon = tok.find(':');
        if (colon == std::string_view::npos)
            throw FormatError("expected index:value, got '" + std::string(tok) + "'", line);
        FeatureIndex i = parse_index(tok.substr(0, colon), line);
        double v = parse_value(tok.substr(colon + 1), line);
        if (!idx.empty() && i <= idx.back())
            throw FormatError(i == idx.back() ? "duplicate feature index " + std::to_string(i)
                                              : "non-ascending feature index " + std::to_string(i),
                              line);
        // explicit zeros still take part in the ordering check; SparseVector drops them
        idx.push_back(i);
        val.push_back(v);
    }
    ex.features = SparseVector(std::move(idx), std::move(val));
    return ex;
}

bool is_blank_or_comment(std::string_view s) {
    std::size_t b = 0;
    while (b < s.size() && is_space(s[b])) ++b;
    return b == s.size() || s[b] == '#';
}

}  // namespace

Dataset parse_svmlight(std::istream& in) {
    Dataset data;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        data.push_back(parse_line(line, lineno));
    }
    if (in.bad()) throw FormatError("read error", lineno);
    return data;
}

Dataset parse_svmlight(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_svmlight(in);
}

Dataset read_svmlight_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return parse_svmlight(in);
    } catch (const FormatError& e) {
        throw FormatError(e.message(), e.line(), path.string());
    }
}

void write_svmlight(std::ostream& out, const Dataset& data) {
    char buf[64];
    for (const auto& ex : data.examples()) {
        out << (ex.label == Label::Positive ? "+1" : "-1");
        auto idx = ex.features.indices();
        auto val = ex.features.values();
        for (std::size_t k = 0; k < idx.size(); ++k) {
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, val[k]);
            out << ' ' << idx[k] << ':' << std::string_view(buf, static_cast<std::size_t>(p - buf));
        }
        out << '\n';
    }
}

std::string write_svmlight(const Dataset& data) {
    std::ostringstream out;
    write_svmlight(out, data);
    return out.str();
}

void write_svmlight_file(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_svmlight(out, data);
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace alsvm
