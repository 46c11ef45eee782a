#pragma once

// Single-mode Gaussian states under the filter g^n.
// Conventions: vacuum covariance = identity, quadrature variance of vacuum = 1/2,
// displacement d = (<x>, <p>) = (sqrt2 Re alpha, sqrt2 Im alpha).

#include "heralded/fock.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace heralded::gaussian {

using cplx = std::complex<double>;

class GaussianState {
public:
    // Throws InvalidArgument unless gamma is symmetric with gamma + i Omega >= 0.
    GaussianState(const Eigen::Matrix2d& gamma, const Eigen::Vector2d& d);

    static GaussianState vacuum();
    static GaussianState coherent(cplx alpha);
    // gamma = diag(e^{-2s}, e^{2s}), displaced by alpha
    static GaussianState squeezed(double s, cplx alpha = 0.0);
    static GaussianState thermal(double mean_photons, cplx alpha = 0.0);
    // gamma = diag(2 vx, 2 vp) rotated by angle theta in phase space
    static GaussianState from_variances(double vx, double vp, double theta, cplx alpha);

    const Eigen::Matrix2d& covariance() const { return gamma_; }
    const Eigen::Vector2d& displacement() const { return d_; }
    cplx mean_field() const;
    double mean_photon_number() const;

private:
    Eigen::Matrix2d gamma_;
    Eigen::Vector2d d_;
};

struct QuadratureVariances {
    double vx;
    double vp;
};

// Principal-axis variances (eigenvalues of gamma / 2), ascending.
QuadratureVariances principal_variances(const GaussianState& state);

// Largest quadrature variance allowed for amplification by g > 1.
double amplifiability_bound(double gain);

bool is_amplifiable(const GaussianState& state, double gain);

// 2g / [(1 + g^2) + 2V(1 - g^2)]; UnphysicalOutput if the denominator is <= 0.
double effective_gain(double variance, double gain);

// Rotates to principal axes, applies the per-quadrature maps, rotates back.
GaussianState transform_gaussian(const GaussianState& state, double gain);

// Literal matrix route:
//   gamma' = [g^2 (gamma + I)^{-1} - (g^2 - 1)/2 I]^{-1} - I
//   d'     = 2g [(g^2 + 1) I - (g^2 - 1) gamma]^{-1} d
// Used to cross-check transform_gaussian. SingularMatrix near the bound.
GaussianState transform_gaussian_direct(const GaussianState& state, double gain);

// Fock-space density of the state, built by exponentiating displacement and
// squeeze generators in a work space of `work_dim` levels and cutting to `cutoff`.
fock::FockDensityMatrix to_fock(const GaussianState& state, std::size_t cutoff, std::size_t work_dim = 160);

// First and second moments of an arbitrary state (exact for its Fock matrix).
// The covariance is not validated, so this also works for non-Gaussian input.
struct Moments {
    Eigen::Matrix2d gamma;
    Eigen::Vector2d d;
};
Moments moments(const fock::FockDensityMatrix& rho);

}  // namespace heralded::gaussian
