#include "heralded/fock.hpp"

#include "heralded/error.hpp"
#include "heralded/simd/kernels.hpp"
#include "heralded/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace heralded::fock {

namespace {

using Eigen::Index;


void check_gain(double gain) {
    if (!(gain > 0.0) || !std::isfinite(gain))
        throw Error(ErrorKind::InvalidGain, "gain must be positive and finite, got " + num(gain));
}

// g^{2n} rho_nn, with the cutoff faithfulness check for g > 1.
std::vector<double> weighted_populations(const FockDensityMatrix& rho, double gain) {
    check_gain(gain);
    const std::size_t dim = rho.dim();
    std::vector<double> t(dim);
    double g2n = 1.0;
    for (std::size_t n = 0; n < dim; ++n) {
        t[n] = g2n * std::max(rho.population(n), 0.0);
        g2n *= gain * gain;
    }
    double total = 0.0;
    for (double v : t) total += v;
    if (!std::isfinite(total) || total <= 0.0)
        throw Error(ErrorKind::DivergentAmplification, "heralding weight is not finite");
    if (gain > 1.0) {
        const std::size_t k = std::min(tol::kTailLevels, dim - 1);
        double tail = 0.0;
        for (std::size_t n = dim - k; n < dim; ++n) tail += t[n];
        if (k > 0 && tail > tol::kTail * total)
            throw Error(ErrorKind::DivergentAmplification,
                        "amplified populations do not decay over the last " + std::to_string(k) +
                            " Fock levels (tail fraction " + num(tail / total) + ")");
    }
    return t;
}

}  // namespace

// --- FockState -------------------------------------------------------------

FockState FockState::from_amplitudes(Eigen::VectorXcd amps) {
    if (amps.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty amplitude vector");
    const double norm = amps.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw Error(ErrorKind::InvalidArgument, "amplitude vector has zero or non-finite norm");
    amps /= norm;
    return FockState(std::move(amps));
}

double FockState::tail_mass(std::size_t levels) const {
    double tail = 0.0;
    const std::size_t d = dim();
    for (std::size_t n = d - std::min(levels, d); n < d; ++n) tail += std::norm(amps_[static_cast<Index>(n)]);
    return tail;
}

FockDensityMatrix FockState::density() const {
    return FockDensityMatrix::from_matrix(amps_ * amps_.adjoint());
}

// --- FockDensityMatrix -----------------------------------------------------

FockDensityMatrix FockDensityMatrix::from_matrix(Eigen::MatrixXcd rho) {
    if (rho.rows() == 0 || rho.rows() != rho.cols())
        throw Error(ErrorKind::InvalidArgument, "density matrix must be square and non-empty");
    if (!rho.allFinite()) throw Error(ErrorKind::InvalidArgument, "density matrix has non-finite entries");
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::kNorm)
        throw Error(ErrorKind::InvalidArgument, "density matrix is not Hermitian (" + num(herm) + ")");
    const double trace_err = std::abs(rho.trace() - cplx(1.0, 0.0));
    if (trace_err > tol::kNorm)
        throw Error(ErrorKind::InvalidArgument, "density matrix trace differs from 1 by " + num(trace_err));
    // Symmetrize so downstream eigen solvers see an exactly Hermitian matrix.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < -tol::kPsd)
        throw Error(ErrorKind::InvalidArgument, "density matrix is not positive (eigenvalue " + num(lmin) + ")");
    return FockDensityMatrix(std::move(rho));
}

FockDensityMatrix FockDensityMatrix::normalized(Eigen::MatrixXcd rho) {
    const double tr = rho.trace().real();
    if (!(tr > 0.0) || !std::isfinite(tr)) throw Error(ErrorKind::InvalidArgument, "trace must be positive");
    rho /= tr;
    return from_matrix(std::move(rho));
}

FockDensityMatrix FockDensityMatrix::with_cutoff(std::size_t cutoff) const {
    const Index d = static_cast<Index>(cutoff + 1);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    const Index k = std::min(d, rho_.rows());
    out.topLeftCorner(k, k) = rho_.topLeftCorner(k, k);
    return normalized(std::move(out));
}

// --- builders ---------------------------------------------------------------

FockState vacuum(std::size_t cutoff) { return number_state(0, cutoff); }

FockState number_state(std::size_t n, std::size_t cutoff) {
    if (n > cutoff) throw Error(ErrorKind::CutoffUnfaithful, "Fock level above cutoff");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Index>(cutoff + 1));
    v[static_cast<Index>(n)] = 1.0;
    return FockState::from_amplitudes(std::move(v));
}

FockState coherent(cplx alpha, std::size_t cutoff) {
    const double mean = std::norm(alpha);
    Eigen::VectorXcd v(static_cast<Index>(cutoff + 1));
    cplx c = std::exp(-0.5 * mean);
    double kept = 0.0;  // Poisson mass of levels 0..cutoff-2
    for (std::size_t n = 0; n <= cutoff; ++n) {
        if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
        v[static_cast<Index>(n)] = c;
        if (n + 2 <= cutoff) kept += std::norm(c);
    }
    const double tail = cutoff >= 2 ? 1.0 - kept : 1.0 - std::exp(-mean);
    if (tail > tol::kTail)
        throw Error(ErrorKind::CutoffUnfaithful, "coherent amplitude too large for cutoff " + std::to_string(cutoff) +
                                                     " (tail " + num(tail) + ")");
    return FockState::from_amplitudes(std::move(v));
}

FockState superposition(std::span<const cplx> coefficients, std::size_t cutoff) {
    if (coefficients.size() > cutoff + 1) throw Error(ErrorKind::CutoffUnfaithful, "more coefficients than levels");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Index>(cutoff + 1));
    for (std::size_t n = 0; n < coefficients.size(); ++n) v[static_cast<Index>(n)] = coefficients[n];
    return FockState::from_amplitudes(std::move(v));
}

FockDensityMatrix thermal(double mean_photons, std::size_t cutoff) {
    if (!(mean_photons >= 0.0)) throw Error(ErrorKind::InvalidArgument, "mean photon number must be >= 0");
    const double q = mean_photons / (1.0 + mean_photons);
    // P(n >= cutoff-1) = q^(cutoff-1)
    const double tail = cutoff >= 1 ? std::pow(q, static_cast<double>(cutoff - 1)) : 1.0;
    if (mean_photons > 0.0 && tail > tol::kTail)
        throw Error(ErrorKind::CutoffUnfaithful, "thermal state too hot for cutoff " + std::to_string(cutoff));
    const Index d = static_cast<Index>(cutoff + 1);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    double p = 1.0 - q;
    for (Index n = 0; n < d; ++n, p *= q) rho(n, n) = p;
    return FockDensityMatrix::normalized(std::move(rho));
}

FockDensityMatrix mixture(std::span<const FockDensityMatrix> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size())
        throw Error(ErrorKind::InvalidArgument, "mixture needs one weight per state");
    const Index d = static_cast<Index>(states.front().dim());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (static_cast<Index>(states[i].dim()) != d) throw Error(ErrorKind::InvalidArgument, "cutoff mismatch in mixture");
        if (weights[i] < 0.0) throw Error(ErrorKind::InvalidArgument, "negative mixture weight");
        rho += weights[i] * states[i].matrix();
    }
    return FockDensityMatrix::normalized(std::move(rho));
}

FockDensityMatrix phase_rotate(const FockDensityMatrix& rho, double phi) {
    const Index d = static_cast<Index>(rho.dim());
    Eigen::VectorXcd u(d);
    for (Index n = 0; n < d; ++n) u[n] = std::polar(1.0, phi * static_cast<double>(n));
    Eigen::MatrixXcd out = u.asDiagonal() * rho.matrix() * u.conjugate().asDiagonal();
    return FockDensityMatrix::from_matrix(std::move(out));
}

// --- filter -------------------------------------------------------------------

double filter_weight(const FockDensityMatrix& rho, double gain) {
    const auto t = weighted_populations(rho, gain);
    double total = 0.0;
    for (double v : t) total += v;
    return total;
}

HeraldedOutcome apply_filter(const FockDensityMatrix& rho, double gain) {
    const double weight = filter_weight(rho, gain);
    const std::size_t dim = rho.dim();
    std::vector<double> w(dim);
    double gn = 1.0;
    for (std::size_t n = 0; n < dim; ++n, gn *= gain) w[n] = gn;
    Eigen::MatrixXcd out = rho.matrix();
    // Symmetric scaling, so Eigen's column-major storage is irrelevant.
    simd::active().scale_outer(w.data(), out.data(), dim);
    out /= weight;
    return {FockDensityMatrix::from_matrix(std::move(out)), weight};
}

// --- observables ----------------------------------------------------------------

cplx mean_field(const FockDensityMatrix& rho) {
    // Tr(rho a) = sum_n sqrt(n+1) rho_{n+1,n}
    cplx acc = 0.0;
    for (std::size_t n = 0; n + 1 < rho.dim(); ++n) acc += std::sqrt(static_cast<double>(n + 1)) * rho(n + 1, n);
    return acc;
}

cplx mean_field(const FockState& psi) {
    cplx acc = 0.0;
    for (std::size_t n = 0; n + 1 < psi.dim(); ++n)
        acc += std::sqrt(static_cast<double>(n + 1)) * std::conj(psi[n]) * psi[n + 1];
    return acc;
}

cplx second_moment(const FockDensityMatrix& rho) {
    // Tr(rho a^2) = sum_n sqrt((n+1)(n+2)) rho_{n+2,n}
    cplx acc = 0.0;
    for (std::size_t n = 0; n + 2 < rho.dim(); ++n)
        acc += std::sqrt(static_cast<double>((n + 1) * (n + 2))) * rho(n + 2, n);
    return acc;
}

double mean_photon_number(const FockDensityMatrix& rho) {
    double acc = 0.0;
    for (std::size_t n = 0; n < rho.dim(); ++n) acc += static_cast<double>(n) * rho.population(n);
    return acc;
}

double filtered_mean_photon_number(const FockDensityMatrix& rho, double gain) {
    const auto t = weighted_populations(rho, gain);
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) {
        num += static_cast<double>(n) * t[n];
        den += t[n];
    }
    return num / den;
}

double mean_photon_derivative(const FockDensityMatrix& rho, double gain, double h) {
    if (!(h > 0.0) || !(gain - h > 0.0)) throw Error(ErrorKind::InvalidGain, "finite-difference stencil leaves g > 0");
    return (filtered_mean_photon_number(rho, gain + h) - filtered_mean_photon_number(rho, gain - h)) / (2.0 * h);
}

double fidelity(const FockState& psi, const FockDensityMatrix& rho) {
    if (psi.dim() != rho.dim()) throw Error(ErrorKind::InvalidArgument, "cutoff mismatch");
    return (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0, 0).real();
}

}  // namespace heralded::fock
