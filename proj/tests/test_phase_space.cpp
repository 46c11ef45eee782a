#include "heralded/error.hpp"
#include "heralded/fock.hpp"
#include "heralded/gaussian.hpp"
#include "heralded/nongaussian.hpp"
#include "heralded/phase_space.hpp"
#include "heralded/random_states.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace heralded;
using phase_space::GridSpec;
using phase_space::cplx;

namespace {

constexpr double kPi = std::numbers::pi;

// Wide grid: amplification by 2 reads the source at twice the output radius.
const GridSpec kWide{-10.0, 10.0, 801};
// Pointwise comparisons need a finer spacing than the default grid.
const GridSpec kFine{-8.0, 8.0, 1601};

// Gaussian Q written out component by component.
double q_closed_form(const gaussian::GaussianState& s, cplx alpha) {
    const Eigen::Matrix2d& g = s.covariance();
    const double a = g(0, 0) + 1.0, b = g(0, 1), d = g(1, 1) + 1.0;
    const double det = a * d - b * b;
    const double u = std::sqrt(2.0) * alpha.real() - s.displacement()[0];
    const double v = std::sqrt(2.0) * alpha.imag() - s.displacement()[1];
    const double quad = (d * u * u - 2.0 * b * u * v + a * v * v) / det;
    return 2.0 / (kPi * std::sqrt(det)) * std::exp(-quad);
}

phase_space::PDensity displaced_thermal_p(cplx alpha0, double nbar, GridSpec support) {
    return phase_space::PDensity([=](cplx a) { return std::exp(-std::norm(a - alpha0) / nbar); }, support);
}

}  // namespace

TEST(QFunction, VacuumPeak) {
    const auto q = phase_space::q_from_density(fock::vacuum(10).density());
    EXPECT_NEAR(q.at(200, 200), 1.0 / kPi, 1e-14);
    EXPECT_NEAR(q.at(230, 180), std::exp(-std::norm(q.node(230, 180))) / kPi, 1e-14);
    EXPECT_NEAR(q.mass(), 1.0, 1e-10);
}

TEST(QFunction, CoherentStateIsDisplacedVacuum) {
    const cplx beta(0.7, -0.4);
    const auto q = phase_space::q_from_density(fock::coherent(beta, 30).density());
    double worst = 0.0;
    for (std::size_t iy = 0; iy < 401; iy += 7)
        for (std::size_t ix = 0; ix < 401; ix += 7)
            worst = std::max(worst, std::abs(q.at(ix, iy) - std::exp(-std::norm(q.node(ix, iy) - beta)) / kPi));
    EXPECT_LE(worst, 1e-12);
}

TEST(QFunction, GaussianClosedFormMatchesFockRoute) {
    random_states::Rng rng(41);
    for (int i = 0; i < 5; ++i) {
        const auto s = random_states::random_gaussian(rng, 0.3, 0.35, 0.9);
        const auto closed = phase_space::q_gaussian(s);
        const auto from_fock = phase_space::q_from_density(gaussian::to_fock(s, 40));
        EXPECT_LE(phase_space::max_abs_difference(closed, from_fock), 1e-8) << i;
        for (std::size_t k = 0; k < 401; k += 13)
            EXPECT_NEAR(closed.at(k, 400 - k), q_closed_form(s, closed.node(k, 400 - k)), 1e-14);
    }
}

TEST(QFunction, GridTooSmallIsReported) {
    try {
        phase_space::q_from_density(fock::coherent(3.0, 40).density(), GridSpec{-2.0, 2.0, 101});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridTooSmall);
    }
}

TEST(TransformQ, UnitGainIsIdentity) {
    const auto q = phase_space::q_from_density(fock::coherent({0.3, 0.2}, 30).density());
    EXPECT_LE(phase_space::max_abs_difference(phase_space::transform_q(q, 1.0), q), 1e-12);
}

TEST(TransformQ, AmplifiedCoherentState) {
    const auto q = phase_space::q_from_density(fock::coherent(0.5, 30).density(), kWide);
    const auto out = phase_space::transform_q(q, 2.0);
    const auto expected = phase_space::q_from_density(fock::coherent(1.0, 30).density(), kWide);
    EXPECT_LE(phase_space::max_abs_difference(out, expected), 1e-4);
}

TEST(TransformQ, AttenuatedSuperpositionMeanField) {
    const std::array<cplx, 2> c{1.0, 1.0};
    const auto rho = fock::superposition(c, 10).density();
    const auto out = phase_space::transform_q(phase_space::q_from_density(rho), 0.5);
    const cplx expected = fock::mean_field(fock::apply_filter(rho, 0.5).state);
    EXPECT_NEAR(std::abs(phase_space::mean_field(out) - expected), 0.0, 1e-4);
}

TEST(TransformQ, UnamplifiableStateDiverges) {
    // V = 1 exceeds the g = 2 bound of 5/6.
    const auto q = phase_space::q_from_density(fock::thermal(0.5, 60));
    try {
        phase_space::transform_q(q, 2.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DivergentAmplification);
    }
}

TEST(TransformQ, GaussianPreservation) {
    const auto s = gaussian::GaussianState::squeezed(0.2, {0.3, 0.1});
    for (double g : {0.6, 1.25}) {
        const auto out = phase_space::transform_q(phase_space::q_gaussian(s, GridSpec{-8.0, 8.0, 3201}), g);
        const auto fit = phase_space::fit_gaussian(out);
        const auto closed = gaussian::transform_gaussian(s, g);
        EXPECT_LE((fit.gamma - closed.covariance()).cwiseAbs().maxCoeff(), 1e-4) << g;
        EXPECT_LE((fit.d - closed.displacement()).cwiseAbs().maxCoeff(), 1e-4) << g;
    }
}

TEST(TransformQ, RepresentationTriangleOnSpacs) {
    const auto rho = nongaussian::build_spacs({0.25, -0.55}, 30).density();
    for (double g : {0.5, 0.8, 1.0, 1.25}) {
        const auto via_q = phase_space::transform_q(phase_space::q_from_density(rho, kFine), g);
        const auto via_fock = phase_space::q_from_density(fock::apply_filter(rho, g).state, kFine);
        EXPECT_LE(phase_space::max_abs_difference(via_q, via_fock), 1e-4) << g;
    }
}

TEST(QFunction, MeanFieldMomentIdentity) {
    random_states::Rng rng(42);
    for (int i = 0; i < 10; ++i) {
        const auto rho = random_states::random_density(rng, 12, 0.5);
        const auto q = phase_space::q_from_density(rho);
        EXPECT_NEAR(std::abs(phase_space::mean_field(q) - fock::mean_field(rho)), 0.0, 1e-4) << i;
    }
}

TEST(QFunction, CsvLayout) {
    const phase_space::QGrid q(GridSpec{-1.0, 1.0, 3}, std::vector<double>(9, 0.25));
    std::ostringstream out;
    phase_space::write_csv(q, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "re_alpha,im_alpha,q");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("-1.00000000000e+00,-1.00000000000e+00,", 0), 0u) << line;
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 9);
}

TEST(TransformP, UnitGainIsIdentity) {
    const auto p = displaced_thermal_p({0.5, 0.2}, 0.3, GridSpec{});
    const auto out = phase_space::transform_p(p, 1.0);
    for (cplx a : {cplx(0.0), cplx(0.5, 0.2), cplx(-1.0, 0.7)}) EXPECT_NEAR(out(a), p(a), 1e-12);
}

TEST(TransformP, NarrowPeakFollowsCoherentAmplitude) {
    const GridSpec fine{-2.0, 2.0, 801};
    const double nbar = 2.5e-3;
    const auto out = phase_space::transform_p(displaced_thermal_p(0.8, nbar, fine), 0.5);
    // A Gaussian P is a displaced thermal state; its image is known exactly.
    const auto expected = gaussian::transform_gaussian(gaussian::GaussianState::thermal(nbar, 0.8), 0.5).mean_field();
    EXPECT_NEAR(std::abs(out.mean_field() - expected), 0.0, 1e-6);
    EXPECT_NEAR(out.mean_field().real(), 0.4, 1e-3);
    EXPECT_GT(out(0.4), out(0.45));
    EXPECT_GT(out(0.4), out(0.35));
}

TEST(TransformP, BroadGaussianMatchesClosedForm) {
    for (double g : {0.6, 1.2}) {
        const auto out = phase_space::transform_p(displaced_thermal_p({0.4, -0.3}, 0.2, GridSpec{}), g);
        const auto expected = gaussian::transform_gaussian(gaussian::GaussianState::thermal(0.2, {0.4, -0.3}), g);
        EXPECT_NEAR(std::abs(out.mean_field() - expected.mean_field()), 0.0, 1e-6) << g;
    }
}

TEST(TransformP, TwoPeakMixtureReweighting) {
    const GridSpec support{-3.0, 3.0, 1201};
    const double nbar = 1e-3, p = 1.0 / 3.0, g = 2.0;
    // Narrow displaced-thermal peaks at alpha = 1 and beta = -0.9, evaluated at alpha/g.
    const auto pd = phase_space::PDensity(
        [=](cplx a) {
            return p * std::exp(-std::norm(a - 1.0) / nbar) + (1.0 - p) * std::exp(-std::norm(a + 0.9) / nbar);
        },
        support);
    const auto out = phase_space::transform_p(pd, g);
    const double right = out.integrate([](cplx a) { return a.real() > 0.0 ? cplx(1.0) : cplx(0.0); }).real();
    // Oracle: Fock filter weights of the two thermal peaks.
    const double w1 = fock::filter_weight(gaussian::to_fock(gaussian::GaussianState::thermal(nbar, 1.0), 40), g);
    const double w2 = fock::filter_weight(gaussian::to_fock(gaussian::GaussianState::thermal(nbar, -0.9), 40), g);
    EXPECT_NEAR(right, p * w1 / (p * w1 + (1.0 - p) * w2), 1e-4);
    // The infinitely narrow limit is the coherent-state mixture weight.
    EXPECT_NEAR(right, nongaussian::filtered_mixture_weight({1.0, -0.9, p}, g), 5e-3);
}
