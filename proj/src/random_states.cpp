#include "heralded/random_states.hpp"

#include <cmath>
#include <numbers>

namespace heralded::random_states {

fock::FockDensityMatrix random_density(Rng& rng, std::size_t cutoff, double decay, std::size_t rank) {
    const auto dim = static_cast<Eigen::Index>(cutoff + 1);
    if (rank == 0) rank = std::uniform_int_distribution<std::size_t>(1, cutoff + 1)(rng);
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd g(dim, static_cast<Eigen::Index>(rank));
    double scale = 1.0;
    for (Eigen::Index n = 0; n < dim; ++n, scale *= decay)
        for (Eigen::Index k = 0; k < g.cols(); ++k) g(n, k) = scale * std::complex<double>(normal(rng), normal(rng));
    return fock::FockDensityMatrix::normalized(g * g.adjoint());
}

gaussian::GaussianState random_gaussian(Rng& rng, double max_thermal, double max_squeeze, double max_alpha) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double nbar = max_thermal * unit(rng);
    const double r = max_squeeze * unit(rng);
    const double theta = std::numbers::pi * unit(rng);
    const double radius = max_alpha * std::sqrt(unit(rng));
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    const double scale = 2.0 * nbar + 1.0;
    return gaussian::GaussianState::from_variances(0.5 * scale * std::exp(-2.0 * r), 0.5 * scale * std::exp(2.0 * r), theta,
                                                   std::polar(radius, phase));
}

}  // namespace heralded::random_states
