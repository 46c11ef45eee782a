#pragma once

// Truncated single-mode Fock space: pure and mixed states, the heralded
// filter g^n, and the observables the rest of the library is built on.
// Convention: a|n> = sqrt(n)|n-1>, basis |0>..|cutoff>.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>

namespace heralded::fock {

using cplx = std::complex<double>;

class FockDensityMatrix;

class FockState {
public:
    // Normalizes the vector; throws InvalidArgument if it is zero or empty.
    static FockState from_amplitudes(Eigen::VectorXcd amps);

    std::size_t cutoff() const { return static_cast<std::size_t>(amps_.size()) - 1; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    cplx operator[](std::size_t n) const { return amps_[static_cast<Eigen::Index>(n)]; }

    // Population of the top `levels` Fock levels.
    double tail_mass(std::size_t levels = 2) const;

    FockDensityMatrix density() const;

private:
    explicit FockState(Eigen::VectorXcd amps) : amps_(std::move(amps)) {}
    Eigen::VectorXcd amps_;
};

class FockDensityMatrix {
public:
    // Validates hermiticity, unit trace and positivity (tol::kNorm / tol::kPsd).
    static FockDensityMatrix from_matrix(Eigen::MatrixXcd rho);
    // Divides by the trace first, then validates.
    static FockDensityMatrix normalized(Eigen::MatrixXcd rho);

    std::size_t cutoff() const { return static_cast<std::size_t>(rho_.rows()) - 1; }
    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return rho_; }
    cplx operator()(std::size_t m, std::size_t n) const {
        return rho_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    }
    double population(std::size_t n) const { return (*this)(n, n).real(); }

    // Same state embedded in (or cut down to) another cutoff; cutting renormalizes.
    FockDensityMatrix with_cutoff(std::size_t cutoff) const;

private:
    explicit FockDensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {}
    Eigen::MatrixXcd rho_;
};

struct HeraldedOutcome {
    FockDensityMatrix state;
    double weight;  // sum_n g^{2n} rho_nn, unnormalized
};

// --- state builders -------------------------------------------------------

FockState vacuum(std::size_t cutoff);
FockState number_state(std::size_t n, std::size_t cutoff);
// Throws CutoffUnfaithful when the exact Poisson tail above cutoff-2 exceeds tol::kTail.
FockState coherent(cplx alpha, std::size_t cutoff);
FockState superposition(std::span<const cplx> coefficients, std::size_t cutoff);
FockDensityMatrix thermal(double mean_photons, std::size_t cutoff);
FockDensityMatrix mixture(std::span<const FockDensityMatrix> states, std::span<const double> weights);

// exp(i phi n) rho exp(-i phi n)
FockDensityMatrix phase_rotate(const FockDensityMatrix& rho, double phi);

// --- filter and observables ----------------------------------------------

// rho -> g^n rho g^n / Tr. For g > 1 the weighted populations must decay over
// the last tol::kTailLevels levels, otherwise DivergentAmplification.
HeraldedOutcome apply_filter(const FockDensityMatrix& rho, double gain);

// Same check and weight as apply_filter, without building the state.
double filter_weight(const FockDensityMatrix& rho, double gain);

cplx mean_field(const FockDensityMatrix& rho);
cplx mean_field(const FockState& psi);
// <a^2>
cplx second_moment(const FockDensityMatrix& rho);
double mean_photon_number(const FockDensityMatrix& rho);
// <n> of the filtered state, evaluated from the diagonal only.
double filtered_mean_photon_number(const FockDensityMatrix& rho, double gain);
// Central difference of filtered_mean_photon_number at `gain` with step h.
double mean_photon_derivative(const FockDensityMatrix& rho, double gain, double h = 1e-4);

double fidelity(const FockState& psi, const FockDensityMatrix& rho);

}  // namespace heralded::fock
