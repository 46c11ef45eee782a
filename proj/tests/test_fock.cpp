#include "heralded/error.hpp"
#include "heralded/fock.hpp"
#include "heralded/random_states.hpp"
#include "heralded/tolerances.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

using namespace heralded;
using fock::cplx;

namespace {

// Brute-force filter: diag(g^n) rho diag(g^n) / Tr, independent of the kernel path.
Eigen::MatrixXcd brute_filter(const Eigen::MatrixXcd& rho, double g) {
    Eigen::VectorXd w(rho.rows());
    for (Eigen::Index n = 0; n < w.size(); ++n) w[n] = std::pow(g, static_cast<double>(n));
    Eigen::MatrixXcd out = w.asDiagonal() * rho * w.asDiagonal();
    return out / out.trace().real();
}

// d<n>/dg = (1/N^2) sum_{n,m} n (n - m) e_nm,  e_nm = 2 g^{2(n+m)-1} rho_nn rho_mm
double analytic_derivative(const fock::FockDensityMatrix& rho, double g) {
    double norm = 0.0, acc = 0.0;
    for (std::size_t n = 0; n < rho.dim(); ++n) norm += std::pow(g, 2.0 * n) * rho.population(n);
    for (std::size_t n = 0; n < rho.dim(); ++n)
        for (std::size_t m = 0; m < rho.dim(); ++m)
            acc += static_cast<double>(n) * (static_cast<double>(n) - static_cast<double>(m)) * 2.0 *
                   std::pow(g, 2.0 * (n + m) - 1.0) * rho.population(n) * rho.population(m);
    return acc / (norm * norm);
}

fock::FockDensityMatrix balanced01(std::size_t cutoff = 10) {
    const std::array<cplx, 2> c{1.0, 1.0};
    return fock::superposition(c, cutoff).density();
}

}  // namespace

TEST(FockState, NormalizesAndValidates) {
    Eigen::VectorXcd v(3);
    v << 1.0, 1.0, 1.0;
    const auto s = fock::FockState::from_amplitudes(v);
    EXPECT_NEAR(s.amplitudes().squaredNorm(), 1.0, tol::kNorm);
    EXPECT_THROW(fock::FockState::from_amplitudes(Eigen::VectorXcd::Zero(3)), Error);
}

TEST(FockDensityMatrix, RejectsNonPhysicalMatrices) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(0, 1) = 0.1;  // not Hermitian
    EXPECT_THROW(fock::FockDensityMatrix::from_matrix(m), Error);
    m(0, 1) = 0.0;
    m(1, 1) = 0.6;  // trace != 1
    EXPECT_THROW(fock::FockDensityMatrix::from_matrix(m), Error);
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;  // negative population
    EXPECT_THROW(fock::FockDensityMatrix::from_matrix(m), Error);
}

TEST(FockBuilders, CoherentRejectsUnfaithfulCutoff) {
    EXPECT_NO_THROW(fock::coherent(1.0, 30));
    try {
        fock::coherent(4.0, 15);
        FAIL() << "expected CutoffUnfaithful";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CutoffUnfaithful);
    }
}

TEST(ApplyFilter, CoherentStateMapsToAmplifiedCoherentState) {
    const auto out = fock::apply_filter(fock::coherent(0.5, 25).density(), 2.0);
    EXPECT_GE(fock::fidelity(fock::coherent(1.0, 25), out.state), 1.0 - 1e-8);
    // Weight of a normalized coherent input: e^{(g^2-1)|alpha|^2}
    EXPECT_NEAR(out.weight / std::exp(3.0 * 0.25), 1.0, 1e-10);
}

TEST(ApplyFilter, FockStateIsAnEigenstate) {
    const auto three = fock::number_state(3, 20).density();
    for (double g : {0.3, 1.0, 1.7}) {
        const auto out = fock::apply_filter(three, g);
        EXPECT_LE((out.state.matrix() - three.matrix()).cwiseAbs().maxCoeff(), tol::kNorm);
        EXPECT_NEAR(fock::mean_photon_number(out.state), 3.0, tol::kNorm);
    }
}

TEST(ApplyFilter, UnitGainIsIdentity) {
    random_states::Rng rng(11);
    const auto rho = random_states::random_density(rng, 12, 0.6);
    const auto out = fock::apply_filter(rho, 1.0);
    EXPECT_NEAR(out.weight, 1.0, tol::kNorm);
    EXPECT_LE((out.state.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), tol::kNorm);
}

TEST(ApplyFilter, BalancedSuperpositionLosesMeanFieldUnderAmplification) {
    const auto rho = balanced01();
    EXPECT_NEAR(fock::mean_field(rho).real(), 0.5, tol::kNorm);
    const auto out = fock::apply_filter(rho, 2.0);
    const Eigen::MatrixXcd brute = brute_filter(rho.matrix(), 2.0);
    EXPECT_LE((out.state.matrix() - brute).cwiseAbs().maxCoeff(), tol::kNorm);
    EXPECT_NEAR(fock::mean_field(out.state).real(), 0.4, tol::kNorm);
}

TEST(ApplyFilter, MatchesBruteForceOnRandomStates) {
    random_states::Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        const auto rho = random_states::random_density(rng, 20, 0.3);
        for (double g : {0.4, 0.9, 1.6}) {
            const auto out = fock::apply_filter(rho, g);
            EXPECT_LE((out.state.matrix() - brute_filter(rho.matrix(), g)).cwiseAbs().maxCoeff(), tol::kNorm);
        }
    }
}

TEST(ApplyFilter, InvalidGainIsRejected) {
    const auto rho = fock::vacuum(5).density();
    for (double g : {0.0, -1.0, std::nan("")}) {
        try {
            fock::apply_filter(rho, g);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidGain);
        }
    }
}

TEST(ApplyFilter, NonDecayingTailSignalsDivergence) {
    // Flat populations over the whole cutoff: g^{2n} rho_nn grows to the edge.
    Eigen::MatrixXcd flat = Eigen::MatrixXcd::Identity(16, 16) / 16.0;
    const auto rho = fock::FockDensityMatrix::from_matrix(flat);
    try {
        fock::apply_filter(rho, 1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DivergentAmplification);
    }
    EXPECT_NO_THROW(fock::apply_filter(rho, 0.5));
    EXPECT_THROW(fock::apply_filter(fock::number_state(15, 15).density(), 1.1), Error);
}

TEST(MeanField, Examples) {
    EXPECT_NEAR(std::abs(fock::mean_field(fock::coherent({0.3, 0.4}, 30).density()) - cplx(0.3, 0.4)), 0.0, 1e-12);
    EXPECT_EQ(fock::mean_field(fock::number_state(1, 5).density()), cplx(0.0));
    EXPECT_NEAR(fock::mean_field(balanced01()).real(), 0.5, 1e-15);
    // Pure-state overload agrees.
    const auto psi = fock::coherent({-0.2, 0.7}, 30);
    EXPECT_NEAR(std::abs(fock::mean_field(psi) - fock::mean_field(psi.density())), 0.0, 1e-14);
}

TEST(MeanPhotonNumber, Examples) {
    EXPECT_EQ(fock::mean_photon_number(fock::vacuum(4).density()), 0.0);
    EXPECT_NEAR(fock::mean_photon_number(fock::coherent(1.0, 30).density()), 1.0, 1e-12);
    const std::array<cplx, 3> c{1.0, 0.0, 1.0};
    const auto rho = fock::superposition(c, 10).density();
    EXPECT_NEAR(fock::mean_photon_number(fock::apply_filter(rho, 2.0).state), 32.0 / 17.0, 1e-12);
    EXPECT_NEAR(fock::filtered_mean_photon_number(rho, 2.0), 32.0 / 17.0, 1e-12);
}

TEST(MeanPhotonDerivative, Examples) {
    EXPECT_NEAR(fock::mean_photon_derivative(fock::number_state(2, 10).density(), 1.5), 0.0, 1e-12);
    // <n> = g^2 / (1 + g^2) for the balanced superposition, slope 1/2 at g = 1.
    EXPECT_NEAR(fock::mean_photon_derivative(balanced01(), 1.0), 0.5, 1e-8);
    const auto th = fock::thermal(0.5, 40);
    EXPECT_GT(fock::mean_photon_derivative(th, 0.8), 0.0);
    EXPECT_NEAR(fock::mean_photon_derivative(th, 0.8), analytic_derivative(th, 0.8), 1e-7);
}

TEST(MeanPhotonDerivative, FiniteDifferenceMatchesClosedSum) {
    random_states::Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        const auto rho = random_states::random_density(rng, 25, std::uniform_real_distribution<>(0.05, 0.33)(rng));
        for (double g : {0.3, 0.9, 1.4, 1.8}) {
            const double fd = fock::mean_photon_derivative(rho, g);
            EXPECT_NEAR(fd, analytic_derivative(rho, g), 1e-6 * (1.0 + std::abs(fd)));
        }
    }
}

// --- properties -----------------------------------------------------------------

TEST(FockProperties, FilterComposition) {
    random_states::Rng rng(21);
    std::uniform_real_distribution<double> gd(0.4, 1.4);
    for (int i = 0; i < 100; ++i) {
        const auto rho = random_states::random_density(rng, 20, 0.3);
        const double g1 = gd(rng), g2 = gd(rng);
        const auto two_step = fock::apply_filter(fock::apply_filter(rho, g1).state, g2).state;
        const auto one_step = fock::apply_filter(rho, g1 * g2).state;
        EXPECT_LE((two_step.matrix() - one_step.matrix()).cwiseAbs().maxCoeff(), tol::kNorm);
    }
}

TEST(FockProperties, MonotonicMeanPhotonNumber) {
    random_states::Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const auto rho = random_states::random_density(rng, 25, std::uniform_real_distribution<>(0.05, 0.33)(rng));
        for (int k = 0; k <= 15; ++k) EXPECT_GE(fock::mean_photon_derivative(rho, 0.3 + 0.1 * k), -tol::kDeriv);
    }
}

TEST(FockProperties, FilterCommutesWithPhaseRotation) {
    random_states::Rng rng(23);
    std::uniform_real_distribution<double> phi(0.0, 6.283185307179586);
    for (int i = 0; i < 50; ++i) {
        const auto rho = random_states::random_density(rng, 20, 0.3);
        const double p = phi(rng);
        const double g = 0.5 + 0.02 * i;
        const auto a = fock::apply_filter(fock::phase_rotate(rho, p), g).state;
        const auto b = fock::phase_rotate(fock::apply_filter(rho, g).state, p);
        EXPECT_LE((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), tol::kNorm);
    }
}

TEST(FockProperties, CoherentStateAction) {
    random_states::Rng rng(24);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    std::uniform_real_distribution<double> gd(0.3, 2.0);
    for (int i = 0; i < 50; ++i) {
        const cplx alpha(u(rng), u(rng));
        const double g = gd(rng);
        const auto out = fock::apply_filter(fock::coherent(alpha, 30).density(), g);
        EXPECT_GE(fock::fidelity(fock::coherent(g * alpha, 30), out.state), 1.0 - 1e-6);
        EXPECT_NEAR(out.weight / std::exp((g * g - 1.0) * std::norm(alpha)), 1.0, 1e-9);
    }
}
