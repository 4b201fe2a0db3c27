#pragma once

#include <cstddef>
#include <optional>

namespace alsvm {

// Two-sided standard-normal critical value z with P(|Z| <= z) = confidence.
double z_critical(double confidence);

// Sample size for estimating a proportion within +-margin at the given
// confidence, Wald interval with optional finite-population correction:
//   n0 = ceil(z^2 p(1-p) / margin^2),  n = ceil(n0 / (1 + (n0-1)/N)),
// capped at N and clamped to at least 1. Throws ArgumentError on margin or
// confidence outside (0,1), p_guess outside [0,1] or N == 0.
std::size_t required_sample_size(double margin, double confidence,
                                 std::optional<std::size_t> population, double p_guess);

// Half-width z sqrt(p(1-p)/n), times sqrt((N-n)/(N-1)) for finite N.
// Throws ArgumentError if n == 0, n > N or the other arguments are out of range.
double proportion_margin(std::size_t n, double confidence, std::optional<std::size_t> population,
                         double p_hat);

struct ProportionEstimate {
    std::size_t n = 0;
    double p_hat = 0.0;
    double confidence = 0.95;
    std::optional<std::size_t> population;
    double margin = 0.0;
};

ProportionEstimate estimate_proportion(std::size_t n_pos, std::size_t n, double confidence,
                                       std::optional<std::size_t> population = std::nullopt);

}  // namespace alsvm
