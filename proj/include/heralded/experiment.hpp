#pragma once

// Three-mode model of the heralded attenuation experiment: signal A, the
// attenuator's auxiliary port B (projected on vacuum) and the loss mode C
// that models detector inefficiency (traced out). Mode order is (A, B, C).

#include "heralded/fock.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace heralded::experiment {

using cplx = std::complex<double>;

struct SetupParams {
    double alpha = 0.25;   // signal coherent amplitude (real)
    double delta = -0.55;  // auxiliary displacement of the photon addition
    double nu = 1.0;       // amplitude reflectance of BS1
    double eta = 1.0;      // detection efficiency
    double p = 1.0;        // photon-addition purity
    std::size_t cutoff = 20;

    double transmittance() const { return 1.0 - nu * nu; }
    void validate() const;
};

// Passive three-mode transformation U a_i^dag U^dag = sum_j M_ij a_j^dag.
class ModeUnitary {
public:
    // Throws InvalidArgument unless M^dag M = I to 1e-12.
    explicit ModeUnitary(const Eigen::Matrix3cd& m);
    const Eigen::Matrix3cd& matrix() const { return m_; }
    double unitarity_error() const;

private:
    Eigen::Matrix3cd m_;
};

ModeUnitary build_mode_unitary(double nu, double eta);

class MultimodeFockState {
public:
    static constexpr std::size_t kModes = 3;

    MultimodeFockState(std::size_t cutoff, std::vector<cplx> amplitudes);
    static MultimodeFockState product(const fock::FockState& a, const fock::FockState& b, const fock::FockState& c);

    std::size_t cutoff() const { return cutoff_; }
    std::size_t levels() const { return cutoff_ + 1; }
    std::size_t index(std::size_t a, std::size_t b, std::size_t c) const { return (a * levels() + b) * levels() + c; }
    cplx operator()(std::size_t a, std::size_t b, std::size_t c) const { return amps_[index(a, b, c)]; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    double norm_squared() const;

private:
    std::size_t cutoff_;
    std::vector<cplx> amps_;
};

// Brute-force Fock evolution: every basis component is rebuilt as a product of
// transformed creation operators acting on the vacuum. Exact when the input
// holds no amplitude with more than `cutoff` photons in total; otherwise
// CutoffUnfaithful.
MultimodeFockState apply_passive(const ModeUnitary& u, const MultimodeFockState& in);

// Projects mode B on vacuum and traces C. Returns the unnormalized reduced
// density of A; its trace is the projection probability.
Eigen::MatrixXcd herald_b_vacuum_trace_c(const MultimodeFockState& state);

// Runs an arbitrary single-mode input on A (B, C in vacuum) through the network.
// The outcome's weight is the no-click probability.
fock::HeraldedOutcome simulate_network(const fock::FockDensityMatrix& input, double nu, double eta);

// Full setup: mixture p (a^dag + delta)|alpha> + (1-p)|alpha>, attenuated and
// heralded. DegenerateHerald when the no-click probability is below tol::kHerald.
fock::HeraldedOutcome simulate_setup(const SetupParams& params);

// --- closed forms -------------------------------------------------------------

// Output amplitude for pure photon addition (p = 1) with efficiency eta.
double amplitude_eta(const SetupParams& params);
// Weight of the photon-added branch in the heralded output.
double mixed_branch_weight(const SetupParams& params);
double amplitude_eta_p(const SetupParams& params);
// Mean field of the realistic input p|Psi><Psi| + (1-p)|alpha><alpha|.
double input_amplitude(const SetupParams& params);
// amplitude_eta_p / input_amplitude; ZeroInputAmplitude at a vanishing input.
double effective_gain(const SetupParams& params);

}  // namespace heralded::experiment
