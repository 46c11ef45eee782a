#pragma once

// Closed-form effective gains of the non-Gaussian example families and the
// displaced photon-added coherent state (a^dag + delta)|alpha>.

#include "heralded/fock.hpp"

#include <complex>
#include <cstddef>

namespace heralded::nongaussian {

using cplx = std::complex<double>;

// c0|0> + c1|1>, c0 = sqrt(1 - c1^2)
struct Psi1Params {
    double c1;
    void validate() const;
};

// c0|0> + c1|1> + c2|2>, real, unit norm
struct Psi2Params {
    double c0;
    double c1;
    double c2;
    void validate() const;
};

// p|alpha><alpha| + (1-p)|beta><beta|
struct MixtureParams {
    cplx alpha;
    cplx beta;
    double p;
    void validate() const;
};

// (a^dag + delta)|alpha> / sqrt(N), N = 1 + (alpha + delta)^2, real parameters
struct SpacsParams {
    double alpha;
    double delta;
    double norm() const { return 1.0 + (alpha + delta) * (alpha + delta); }
};

double amplitude_psi1(const Psi1Params& params);
double filtered_amplitude_psi1(const Psi1Params& params, double gain);
double gain_psi1(const Psi1Params& params, double gain);

// Input amplitude c1 (c0 + sqrt2 c2).
double amplitude_psi2(const Psi2Params& params);
double filtered_amplitude_psi2(const Psi2Params& params, double gain);
// ZeroInputAmplitude when the input amplitude vanishes.
double gain_psi2(const Psi2Params& params, double gain);

cplx amplitude_mixture(const MixtureParams& params);
// Weight of |g alpha> after filtering.
double filtered_mixture_weight(const MixtureParams& params, double gain);
cplx filtered_amplitude_mixture(const MixtureParams& params, double gain);
cplx gain_mixture(const MixtureParams& params, double gain);

double spacs_amplitude(const SpacsParams& params);
// Amplitude after nu^n: same family with alpha -> nu alpha, delta -> delta / nu.
double spacs_attenuated_amplitude(const SpacsParams& params, double nu);

// --- Fock constructions used as oracles ------------------------------------

fock::FockState build_psi1(const Psi1Params& params, std::size_t cutoff);
fock::FockState build_psi2(const Psi2Params& params, std::size_t cutoff);
fock::FockDensityMatrix build_mixture(const MixtureParams& params, std::size_t cutoff);
// Applies a^dag + delta to the truncated coherent vector and normalizes.
// CutoffUnfaithful when the result has tail mass above tol::kTail.
fock::FockState build_spacs(const SpacsParams& params, std::size_t cutoff);

// Gain measured on a Fock state: mean field after the filter over mean field
// before. ZeroInputAmplitude when the input mean field vanishes.
cplx fock_gain(const fock::FockDensityMatrix& rho, double gain);

}  // namespace heralded::nongaussian
