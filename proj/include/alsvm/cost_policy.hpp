#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "alsvm/dataset.hpp"

namespace alsvm {

// n_neg / n_pos. Throws UndefinedRatioError if either count is zero.
double morik_pa(std::size_t n_neg, std::size_t n_pos);

enum class PolicyKind { InitPA, CurrentPA, FixedPA, Balanced, OversampleDuplicate };

// How the positive amplification PA = C+/C- is chosen in each round.
//
// InitPA must be frozen with initialized() on the unbiased seed set before it
// can produce a PA; the other kinds ignore initialization.
class CostPolicy {
public:
    static CostPolicy init_pa() { return CostPolicy(PolicyKind::InitPA); }
    static CostPolicy current_pa() { return CostPolicy(PolicyKind::CurrentPA); }
    static CostPolicy fixed_pa(double value);
    static CostPolicy balanced() { return CostPolicy(PolicyKind::Balanced); }
    static CostPolicy oversample_duplicate() { return CostPolicy(PolicyKind::OversampleDuplicate); }

    // Accepts initpa, currentpa, balanced, oversample and fixed:<value>.
    static CostPolicy parse(std::string_view text);
    std::string to_string() const;

    PolicyKind kind() const noexcept { return kind_; }
    double fixed_value() const noexcept { return fixed_; }
    const std::optional<double>& frozen_pa() const noexcept { return frozen_; }

    // Copy with InitPA frozen at morik_pa over `seed`. Other kinds are returned
    // unchanged. Throws ConfigError if the seed lacks a class.
    CostPolicy initialized(const Dataset& seed) const;

    friend bool operator==(const CostPolicy&, const CostPolicy&) = default;

private:
    explicit CostPolicy(PolicyKind kind) : kind_(kind) {}

    PolicyKind kind_;
    double fixed_ = 0.0;
    std::optional<double> frozen_;
};

struct PaDecision {
    double pa = 1.0;
    bool fallback = false;  // CurrentPA reused the previous PA on a single-class set
};

// PA for `round` given the current labeled counts.
//
// CurrentPA on a single-class labeled set falls back to `previous`; with no
// previous value (round 0) that is a ConfigError. InitPA without a frozen value
// is a ConfigError.
PaDecision policy_pa(const CostPolicy& policy, ClassCounts labeled, std::size_t round,
                     std::optional<double> previous = std::nullopt);
inline PaDecision policy_pa(const CostPolicy& policy, const Dataset& labeled, std::size_t round,
                            std::optional<double> previous = std::nullopt) {
    return policy_pa(policy, class_counts(labeled), round, previous);
}

// Duplicates positives until the classes are balanced.
//
// Each positive gets floor(n_neg/n_pos) - 1 extra copies and (n_neg mod n_pos)
// positives, drawn without replacement from rng_seed, get one more. Negatives
// are untouched and the original order is kept with copies appended. When
// positives are already the majority the input is returned unchanged.
// Throws ArgumentError on single-class input.
Dataset oversample_duplicate(const Dataset& labeled, std::uint64_t rng_seed);

}  // namespace alsvm
