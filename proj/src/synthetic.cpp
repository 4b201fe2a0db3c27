#include "alsvm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "alsvm/error.hpp"

namespace alsvm {

Dataset generate_gaussians(const SyntheticSpec& spec) {
    if (spec.dimension == 0) throw ArgumentError("generate_gaussians: dimension must be >= 1");
    if (!(spec.positive_fraction >= 0.0 && spec.positive_fraction <= 1.0))
        throw ArgumentError("generate_gaussians: positive_fraction must lie in [0, 1]");

    const auto n_pos = static_cast<std::size_t>(std::llround(static_cast<double>(spec.n) * spec.positive_fraction));
    std::vector<Label> labels(spec.n, Label::Negative);
    std::fill_n(labels.begin(), n_pos, Label::Positive);

    std::mt19937_64 rng(spec.seed);
    std::shuffle(labels.begin(), labels.end(), rng);

    const double half = 0.5 * spec.separation / std::sqrt(static_cast<double>(spec.dimension));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Dataset data;
    data.reserve(spec.n);
    for (Label y : labels) {
        SparseVector x;
        for (FeatureIndex j = 1; j <= spec.dimension; ++j)
            x.push_back(j, gauss(rng) + (y == Label::Positive ? half : -half));
        data.push_back({std::move(x), y});
    }
    return data;
}

}  // namespace alsvm
