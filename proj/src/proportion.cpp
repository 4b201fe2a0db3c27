#include "alsvm/proportion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "alsvm/error.hpp"

namespace alsvm {
namespace {

void check_unit_open(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0)) throw ArgumentError(std::string(what) + " must lie in (0, 1)");
}

void check_unit_closed(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

double z_critical(double confidence) {
    check_unit_open(confidence, "confidence");
    boost::math::normal_distribution<double> standard;
    return boost::math::quantile(standard, 0.5 * (1.0 + confidence));
}

std::size_t required_sample_size(double margin, double confidence, std::optional<std::size_t> population,
                                 double p_guess) {
    check_unit_open(margin, "margin");
    check_unit_closed(p_guess, "p_guess");
    if (population && *population == 0) throw ArgumentError("population must be >= 1");
    const double z = z_critical(confidence);

    double n0 = std::ceil(z * z * p_guess * (1.0 - p_guess) / (margin * margin));
    if (n0 < 1.0) return 1;  // degenerate p_guess
    double n = n0;
    if (population) {
        const double big_n = static_cast<double>(*population);
        n = std::ceil(n0 / (1.0 + (n0 - 1.0) / big_n));
        n = std::min(n, big_n);
    }
    return static_cast<std::size_t>(std::max(n, 1.0));
}

double proportion_margin(std::size_t n, double confidence, std::optional<std::size_t> population,
                         double p_hat) {
    if (n == 0) throw ArgumentError("sample size must be >= 1");
    check_unit_closed(p_hat, "p_hat");
    if (population && n > *population) throw ArgumentError("sample size exceeds population");
    const double z = z_critical(confidence);
    double e = z * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
    if (population) {
        if (n == *population) return 0.0;
        const double big_n = static_cast<double>(*population);
        e *= std::sqrt((big_n - static_cast<double>(n)) / (big_n - 1.0));
    }
    return e;
}

ProportionEstimate estimate_proportion(std::size_t n_pos, std::size_t n, double confidence,
                                       std::optional<std::size_t> population) {
    if (n == 0 || n_pos > n) throw ArgumentError("estimate_proportion: need 0 <= n_pos <= n, n >= 1");
    ProportionEstimate est;
    est.n = n;
    est.p_hat = static_cast<double>(n_pos) / static_cast<double>(n);
    est.confidence = confidence;
    est.population = population;
    est.margin = proportion_margin(n, confidence, population, est.p_hat);
    return est;
}

}  // namespace alsvm
