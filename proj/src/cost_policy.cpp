#include "alsvm/cost_policy.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <vector>

#include "alsvm/error.hpp"

namespace alsvm {

double morik_pa(std::size_t n_neg, std::size_t n_pos) {
    if (n_pos == 0 || n_neg == 0)
        throw UndefinedRatioError("PA undefined: " + std::to_string(n_neg) + " negatives, " +
                                  std::to_string(n_pos) + " positives");
    return static_cast<double>(n_neg) / static_cast<double>(n_pos);
}

CostPolicy CostPolicy::fixed_pa(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) throw ArgumentError("fixed PA must be finite and > 0");
    CostPolicy p(PolicyKind::FixedPA);
    p.fixed_ = value;
    return p;
}

CostPolicy CostPolicy::parse(std::string_view text) {
    if (text == "initpa") return init_pa();
    if (text == "currentpa") return current_pa();
    if (text == "balanced") return balanced();
    if (text == "oversample") return oversample_duplicate();
    constexpr std::string_view prefix = "fixed:";
    if (text.starts_with(prefix)) {
        auto num = text.substr(prefix.size());
        double v = 0.0;
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
        if (ec == std::errc{} && p == num.data() + num.size() && !num.empty()) return fixed_pa(v);
    }
    throw ConfigError("unknown cost policy '" + std::string(text) +
                      "' (expected initpa, currentpa, balanced, oversample or fixed:<pa>)");
}

std::string CostPolicy::to_string() const {
    switch (kind_) {
        case PolicyKind::InitPA: return "initpa";
        case PolicyKind::CurrentPA: return "currentpa";
        case PolicyKind::Balanced: return "balanced";
        case PolicyKind::OversampleDuplicate: return "oversample";
        case PolicyKind::FixedPA: {
            char buf[64];
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, fixed_);
            return "fixed:" + std::string(buf, p);
        }
    }
    return "unknown";
}

CostPolicy CostPolicy::initialized(const Dataset& seed) const {
    if (kind_ != PolicyKind::InitPA) return *this;
    auto c = class_counts(seed);
    if (c.n_pos == 0 || c.n_neg == 0)
        throw ConfigError("InitPA needs both classes in the seed set (" + std::to_string(c.n_pos) +
                          " pos, " + std::to_string(c.n_neg) + " neg)");
    CostPolicy p = *this;
    p.frozen_ = morik_pa(c.n_neg, c.n_pos);
    return p;
}

PaDecision policy_pa(const CostPolicy& policy, ClassCounts labeled, std::size_t round,
                     std::optional<double> previous) {
    switch (policy.kind()) {
        case PolicyKind::InitPA:
            if (!policy.frozen_pa()) throw ConfigError("InitPA used before initialization");
            return {*policy.frozen_pa(), false};
        case PolicyKind::CurrentPA:
            if (labeled.n_pos > 0 && labeled.n_neg > 0) return {morik_pa(labeled.n_neg, labeled.n_pos), false};
            if (previous) return {*previous, true};
            throw ConfigError("CurrentPA: single-class labeled set in round " + std::to_string(round) +
                              " with no previous PA");
        case PolicyKind::FixedPA:
            return {policy.fixed_value(), false};
        case PolicyKind::Balanced:
        case PolicyKind::OversampleDuplicate:
            return {1.0, false};
    }
    throw ConfigError("unknown policy kind");
}

Dataset oversample_duplicate(const Dataset& labeled, std::uint64_t rng_seed) {
    auto c = class_counts(labeled);
    if (c.n_pos == 0 || c.n_neg == 0) throw ArgumentError("oversample_duplicate: single-class input");
    if (c.n_pos >= c.n_neg) return labeled;

    std::vector<std::size_t> positives;
    positives.reserve(c.n_pos);
    for (std::size_t i = 0; i < labeled.size(); ++i)
        if (labeled[i].label == Label::Positive) positives.push_back(i);

    const std::size_t base_copies = c.n_neg / c.n_pos - 1;
    const std::size_t remainder = c.n_neg % c.n_pos;

    // Choose which positives get the remainder copy: partial Fisher-Yates.
    std::vector<std::size_t> slots(c.n_pos);
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
    std::mt19937_64 rng(rng_seed);
    std::vector<bool> bonus(c.n_pos, false);
    for (std::size_t i = 0; i < remainder; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, slots.size() - 1);
        std::swap(slots[i], slots[pick(rng)]);
        bonus[slots[i]] = true;
    }

    Dataset out = labeled;
    out.reserve(c.n_neg * 2);
    for (std::size_t p = 0; p < positives.size(); ++p) {
        std::size_t copies = base_copies + (bonus[p] ? 1 : 0);
        for (std::size_t r = 0; r < copies; ++r) out.push_back(labeled[positives[p]]);
    }
    return out;
}

}  // namespace alsvm
