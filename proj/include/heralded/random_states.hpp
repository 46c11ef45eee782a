#pragma once

// Seeded generators for the property and verification suites.

#include "heralded/fock.hpp"
#include "heralded/gaussian.hpp"

#include <cstddef>
#include <random>

namespace heralded::random_states {

using Rng = std::mt19937_64;

// Ginibre matrix with row n scaled by decay^n, so populations fall like
// decay^{2n}. rank = 0 picks a random rank in [1, cutoff + 1].
fock::FockDensityMatrix random_density(Rng& rng, std::size_t cutoff, double decay, std::size_t rank = 0);

// Displaced squeezed thermal state with thermal occupation <= max_thermal,
// squeezing <= max_squeeze, |alpha| <= max_alpha and a random orientation.
gaussian::GaussianState random_gaussian(Rng& rng, double max_thermal, double max_squeeze, double max_alpha);

}  // namespace heralded::random_states
