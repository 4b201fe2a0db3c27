#pragma once

#include <cstddef>
#include <cstdint>

#include "alsvm/dataset.hpp"

namespace alsvm {

// Two spherical unit-variance Gaussians in `dimension` dimensions, centered at
// -m and +m on the all-ones diagonal with |2m| = `separation`. Positives use +m.
// Exactly round(n * positive_fraction) positives, shuffled.
struct SyntheticSpec {
    std::size_t n = 2000;
    FeatureIndex dimension = 10;
    double positive_fraction = 0.1;
    double separation = 2.0;
    std::uint64_t seed = 1;
};

Dataset generate_gaussians(const SyntheticSpec& spec);

}  // namespace alsvm
