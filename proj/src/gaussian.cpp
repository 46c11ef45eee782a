#include "heralded/gaussian.hpp"

#include "heralded/error.hpp"
#include "heralded/tolerances.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <string>

namespace heralded::gaussian {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kHeisenbergTol = 1e-9;

void check_gain(double gain) {
    if (!(gain > 0.0) || !std::isfinite(gain)) throw Error(ErrorKind::InvalidGain, "gain must be positive");
}

}  // namespace

GaussianState::GaussianState(const Eigen::Matrix2d& gamma, const Eigen::Vector2d& d) : gamma_(gamma), d_(d) {
    if (!gamma.allFinite() || !d.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite Gaussian moments");
    if (std::abs(gamma(0, 1) - gamma(1, 0)) > kSymTol * (1.0 + gamma.cwiseAbs().maxCoeff()))
        throw Error(ErrorKind::InvalidArgument, "covariance matrix is not symmetric");
    gamma_(1, 0) = gamma_(0, 1);
    // For a 2x2 real symmetric matrix, gamma + i Omega >= 0 iff gamma > 0 and det gamma >= 1.
    if (!(gamma_(0, 0) > 0.0) || gamma_.determinant() < 1.0 - kHeisenbergTol)
        throw Error(ErrorKind::InvalidArgument,
                    "covariance violates the uncertainty relation (det " + num(gamma_.determinant()) + ")");
}

GaussianState GaussianState::vacuum() { return {Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero()}; }

GaussianState GaussianState::coherent(cplx alpha) {
    return {Eigen::Matrix2d::Identity(), Eigen::Vector2d(std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag())};
}

GaussianState GaussianState::squeezed(double s, cplx alpha) {
    Eigen::Matrix2d g = Eigen::Vector2d(std::exp(-2.0 * s), std::exp(2.0 * s)).asDiagonal();
    return {g, Eigen::Vector2d(std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag())};
}

GaussianState GaussianState::thermal(double mean_photons, cplx alpha) {
    return {(2.0 * mean_photons + 1.0) * Eigen::Matrix2d::Identity(),
            Eigen::Vector2d(std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag())};
}

GaussianState GaussianState::from_variances(double vx, double vp, double theta, cplx alpha) {
    Eigen::Matrix2d r;
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    Eigen::Matrix2d g = r * Eigen::Vector2d(2.0 * vx, 2.0 * vp).asDiagonal() * r.transpose();
    g(1, 0) = g(0, 1);
    return {g, Eigen::Vector2d(std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag())};
}

cplx GaussianState::mean_field() const { return {d_[0] / std::sqrt(2.0), d_[1] / std::sqrt(2.0)}; }

double GaussianState::mean_photon_number() const {
    // <n> = (<x^2> + <p^2> - 1) / 2 with <x^2> = gamma_xx/2 + d_x^2
    return 0.5 * (0.5 * gamma_.trace() + d_.squaredNorm() - 1.0);
}

QuadratureVariances principal_variances(const GaussianState& state) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(state.covariance());
    return {0.5 * es.eigenvalues()[0], 0.5 * es.eigenvalues()[1]};
}

double amplifiability_bound(double gain) {
    if (!(gain > 1.0)) throw Error(ErrorKind::InvalidGain, "amplifiability bound needs g > 1");
    return 0.5 * (gain * gain + 1.0) / (gain * gain - 1.0);
}

bool is_amplifiable(const GaussianState& state, double gain) {
    return principal_variances(state).vp < amplifiability_bound(gain) - tol::kPhys;
}

double effective_gain(double variance, double gain) {
    check_gain(gain);
    if (!(variance > 0.0)) throw Error(ErrorKind::InvalidArgument, "variance must be positive");
    const double g2 = gain * gain;
    const double den = (1.0 + g2) + 2.0 * variance * (1.0 - g2);
    if (!(den > 0.0))
        throw Error(ErrorKind::UnphysicalOutput, "quadrature variance " + num(variance) +
                                                     " is beyond the amplification bound");
    return 2.0 * gain / den;
}

GaussianState transform_gaussian(const GaussianState& state, double gain) {
    check_gain(gain);
    if (gain > 1.0 && !is_amplifiable(state, gain))
        throw Error(ErrorKind::UnphysicalOutput,
                    "max quadrature variance " + num(principal_variances(state).vp) +
                        " is not below the bound " + num(amplifiability_bound(gain)));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(state.covariance());
    const Eigen::Matrix2d& rot = es.eigenvectors();
    const Eigen::Vector2d lambda = es.eigenvalues();
    const Eigen::Vector2d d_principal = rot.transpose() * state.displacement();

    const double g2 = gain * gain;
    Eigen::Vector2d lambda_out;
    Eigen::Vector2d d_out;
    for (int j = 0; j < 2; ++j) {
        // Gamma_j = 1 / (lambda_j + 1); Gamma'_j = g^2 Gamma_j - (g^2 - 1) / 2
        const double inv = g2 / (lambda[j] + 1.0) - 0.5 * (g2 - 1.0);
        lambda_out[j] = 1.0 / inv - 1.0;
        d_out[j] = effective_gain(0.5 * lambda[j], gain) * d_principal[j];
    }
    Eigen::Matrix2d gamma_out = rot * lambda_out.asDiagonal() * rot.transpose();
    gamma_out(1, 0) = gamma_out(0, 1);
    return {gamma_out, rot * d_out};
}

GaussianState transform_gaussian_direct(const GaussianState& state, double gain) {
    check_gain(gain);
    const double g2 = gain * gain;
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d& gamma = state.covariance();

    auto inverse = [](const Eigen::Matrix2d& m) {
        const double det = m.determinant();
        if (std::abs(det) < 1e-14 * (1.0 + m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff()))
            throw Error(ErrorKind::SingularMatrix, "matrix is singular at the physicality boundary");
        return Eigen::Matrix2d(m.inverse());
    };
    const Eigen::Matrix2d gamma_inv_term = g2 * inverse(gamma + id) - 0.5 * (g2 - 1.0) * id;
    Eigen::Matrix2d gamma_out = inverse(gamma_inv_term) - id;
    const Eigen::Vector2d d_out = 2.0 * gain * inverse((g2 + 1.0) * id - (g2 - 1.0) * gamma) * state.displacement();
    gamma_out(1, 0) = gamma_out(0, 1) = 0.5 * (gamma_out(0, 1) + gamma_out(1, 0));
    try {
        return {gamma_out, d_out};
    } catch (const Error&) {
        throw Error(ErrorKind::UnphysicalOutput, "transformed covariance is not a physical state");
    }
}

fock::FockDensityMatrix to_fock(const GaussianState& state, std::size_t cutoff, std::size_t work_dim) {
    using Eigen::Index;
    if (work_dim <= cutoff) throw Error(ErrorKind::InvalidArgument, "work dimension must exceed cutoff");
    // gamma = R(theta) diag(l1, l2) R(theta)^T = (2 nbar + 1) R diag(e^{-2r}, e^{2r}) R^T
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(state.covariance());
    const double l1 = es.eigenvalues()[0];
    const double l2 = es.eigenvalues()[1];
    const double theta = std::atan2(es.eigenvectors()(1, 0), es.eigenvectors()(0, 0));
    const double nbar = std::max(0.0, 0.5 * (std::sqrt(l1 * l2) - 1.0));
    const double r = 0.25 * std::log(l2 / l1);
    const cplx alpha = state.mean_field();

    const Index m = static_cast<Index>(work_dim);
    // Both generators are real in the Fock basis once the displacement phase is
    // moved into rotations: D(alpha) = R(phi) D(|alpha|) R(-phi).
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Index n = 1; n < m; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXd ad = a.transpose();

    Eigen::VectorXd thermal(m);
    const double q = nbar / (1.0 + nbar);
    double p = 1.0 - q;
    for (Index n = 0; n < m; ++n, p *= q) thermal[n] = p;

    // S(r) = exp(r (a^2 - a^dag^2) / 2) squeezes x for r > 0.
    const Eigen::MatrixXd squeeze = (0.5 * r * (a * a - ad * ad)).exp();
    const Eigen::MatrixXd shift = (std::abs(alpha) * (ad - a)).exp();
    auto rotation = [m](double phi) {
        Eigen::VectorXcd v(m);
        for (Index n = 0; n < m; ++n) v[n] = std::polar(1.0, phi * static_cast<double>(n));
        return v;
    };
    const double phi = std::arg(alpha);
    const Eigen::MatrixXcd u = rotation(phi).asDiagonal() * shift.cast<cplx>() *
                               rotation(theta - phi).asDiagonal() * squeeze.cast<cplx>();
    const Eigen::MatrixXcd rho = u * thermal.cast<cplx>().asDiagonal() * u.adjoint();
    const Index d = static_cast<Index>(cutoff + 1);
    const double kept = rho.topLeftCorner(d, d).trace().real();
    if (1.0 - kept > tol::kTail)
        throw Error(ErrorKind::CutoffUnfaithful, "Gaussian state leaks " + num(1.0 - kept) +
                                                     " of its population above cutoff " + std::to_string(cutoff));
    return fock::FockDensityMatrix::normalized(rho.topLeftCorner(d, d));
}

Moments moments(const fock::FockDensityMatrix& rho) {
    const cplx a = fock::mean_field(rho);
    const cplx a2 = fock::second_moment(rho);
    const double n = fock::mean_photon_number(rho);
    const double x = std::sqrt(2.0) * a.real();
    const double p = std::sqrt(2.0) * a.imag();
    const double xx = 0.5 * (2.0 * a2.real() + 2.0 * n + 1.0);
    const double pp = 0.5 * (-2.0 * a2.real() + 2.0 * n + 1.0);
    const double xp_sym = a2.imag();  // <{x,p}>/2
    Moments m;
    m.gamma << 2.0 * (xx - x * x), 2.0 * (xp_sym - x * p), 2.0 * (xp_sym - x * p), 2.0 * (pp - p * p);
    m.d << x, p;
    return m;
}

}  // namespace heralded::gaussian
