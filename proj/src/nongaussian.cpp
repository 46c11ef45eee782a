#include "heralded/nongaussian.hpp"

#include "heralded/error.hpp"
#include "heralded/tolerances.hpp"

#include <array>
#include <cmath>
#include <string>

namespace heralded::nongaussian {

namespace {

constexpr double kZeroAmplitude = 1e-14;

void check_gain(double gain) {
    if (!(gain > 0.0) || !std::isfinite(gain)) throw Error(ErrorKind::InvalidGain, "gain must be positive");
}

}  // namespace

void Psi1Params::validate() const {
    if (!(c1 >= 0.0 && c1 <= 1.0)) throw Error(ErrorKind::InvalidArgument, "c1 must lie in [0, 1]");
}

void Psi2Params::validate() const {
    const double n = c0 * c0 + c1 * c1 + c2 * c2;
    if (std::abs(n - 1.0) > tol::kNorm)
        throw Error(ErrorKind::InvalidArgument, "Psi2 amplitudes are not normalized (" + num(n) + ")");
}

void MixtureParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "mixture weight p must lie in [0, 1]");
}

double amplitude_psi1(const Psi1Params& params) {
    params.validate();
    return params.c1 * std::sqrt(1.0 - params.c1 * params.c1);
}

double filtered_amplitude_psi1(const Psi1Params& params, double gain) {
    check_gain(gain);
    return gain * amplitude_psi1(params) / (1.0 + (gain * gain - 1.0) * params.c1 * params.c1);
}

double gain_psi1(const Psi1Params& params, double gain) {
    params.validate();
    check_gain(gain);
    return gain / (1.0 + (gain * gain - 1.0) * params.c1 * params.c1);
}

double amplitude_psi2(const Psi2Params& params) {
    return params.c1 * (params.c0 + std::sqrt(2.0) * params.c2);
}

double filtered_amplitude_psi2(const Psi2Params& params, double gain) {
    params.validate();
    check_gain(gain);
    const auto [c0, c1, c2] = std::array{params.c0, params.c1, params.c2};
    const double g2 = gain * gain;
    return gain * c1 * (c0 + std::sqrt(2.0) * g2 * c2) / (c0 * c0 + g2 * c1 * c1 + g2 * g2 * c2 * c2);
}

double gain_psi2(const Psi2Params& params, double gain) {
    params.validate();
    check_gain(gain);
    if (std::abs(amplitude_psi2(params)) < kZeroAmplitude)
        throw Error(ErrorKind::ZeroInputAmplitude, "Psi2 input amplitude vanishes");
    const auto [c0, c1, c2] = std::array{params.c0, params.c1, params.c2};
    const double g2 = gain * gain;
    return gain * (c0 + std::sqrt(2.0) * g2 * c2) /
           ((c0 * c0 + g2 * c1 * c1 + g2 * g2 * c2 * c2) * (c0 + std::sqrt(2.0) * c2));
}

cplx amplitude_mixture(const MixtureParams& params) {
    return params.p * params.alpha + (1.0 - params.p) * params.beta;
}

double filtered_mixture_weight(const MixtureParams& params, double gain) {
    params.validate();
    check_gain(gain);
    // p' = p e^{k|a|^2} / (p e^{k|a|^2} + (1-p) e^{k|b|^2}), written as a logistic
    // of the exponent difference so large |alpha| cannot overflow.
    if (params.p == 0.0 || params.p == 1.0) return params.p;
    const double k = gain * gain - 1.0;
    const double x = std::log(params.p / (1.0 - params.p)) + k * (std::norm(params.alpha) - std::norm(params.beta));
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

cplx filtered_amplitude_mixture(const MixtureParams& params, double gain) {
    const double pp = filtered_mixture_weight(params, gain);
    return gain * (pp * params.alpha + (1.0 - pp) * params.beta);
}

cplx gain_mixture(const MixtureParams& params, double gain) {
    const double pp = filtered_mixture_weight(params, gain);
    const cplx a_in = amplitude_mixture(params);
    if (std::abs(a_in) < kZeroAmplitude)
        throw Error(ErrorKind::ZeroInputAmplitude, "mixture input amplitude vanishes");
    return gain * (pp * params.alpha + (1.0 - pp) * params.beta) / a_in;
}

double spacs_amplitude(const SpacsParams& params) {
    const double s = params.alpha + params.delta;
    return params.alpha + s / (1.0 + s * s);
}

double spacs_attenuated_amplitude(const SpacsParams& params, double nu) {
    if (!(nu > 0.0 && nu <= 1.0)) throw Error(ErrorKind::InvalidGain, "attenuation factor must lie in (0, 1]");
    const double a = nu * params.alpha;
    const double s = a + params.delta / nu;
    return a + s / (1.0 + s * s);
}

fock::FockState build_psi1(const Psi1Params& params, std::size_t cutoff) {
    params.validate();
    const std::array<cplx, 2> c{std::sqrt(1.0 - params.c1 * params.c1), params.c1};
    return fock::superposition(c, cutoff);
}

fock::FockState build_psi2(const Psi2Params& params, std::size_t cutoff) {
    params.validate();
    const std::array<cplx, 3> c{params.c0, params.c1, params.c2};
    return fock::superposition(c, cutoff);
}

fock::FockDensityMatrix build_mixture(const MixtureParams& params, std::size_t cutoff) {
    params.validate();
    const std::array states{fock::coherent(params.alpha, cutoff).density(), fock::coherent(params.beta, cutoff).density()};
    const std::array weights{params.p, 1.0 - params.p};
    return fock::mixture(states, weights);
}

fock::FockState build_spacs(const SpacsParams& params, std::size_t cutoff) {
    const fock::FockState coh = fock::coherent(params.alpha, cutoff);
    const auto dim = static_cast<Eigen::Index>(coh.dim());
    Eigen::VectorXcd v = params.delta * coh.amplitudes();
    for (Eigen::Index n = 1; n < dim; ++n) v[n] += std::sqrt(static_cast<double>(n)) * coh.amplitudes()[n - 1];
    fock::FockState out = fock::FockState::from_amplitudes(std::move(v));
    if (out.tail_mass() > tol::kTail)
        throw Error(ErrorKind::CutoffUnfaithful, "photon-added state is not contained in cutoff " + std::to_string(cutoff));
    return out;
}

cplx fock_gain(const fock::FockDensityMatrix& rho, double gain) {
    const cplx before = fock::mean_field(rho);
    if (std::abs(before) < kZeroAmplitude) throw Error(ErrorKind::ZeroInputAmplitude, "input mean field vanishes");
    return fock::mean_field(fock::apply_filter(rho, gain).state) / before;
}

}  // namespace heralded::nongaussian
