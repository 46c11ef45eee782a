#include "heralded/experiment.hpp"

#include "heralded/error.hpp"
#include "heralded/nongaussian.hpp"
#include "heralded/simd/kernels.hpp"
#include "heralded/tolerances.hpp"

#include <cmath>
#include <string>

namespace heralded::experiment {

namespace {

constexpr double kUnitarityTol = 1e-12;
constexpr double kZeroAmplitude = 1e-14;

// out = (sum_j row_j a_j^dag) in, truncated at the per-mode cutoff.
std::vector<cplx> apply_creation(const Eigen::RowVector3cd& row, const std::vector<cplx>& in, std::size_t levels) {
    std::vector<cplx> out(in.size(), cplx(0.0));
    const std::size_t stride[3] = {levels * levels, levels, 1};
    for (std::size_t a = 0; a < levels; ++a) {
        for (std::size_t b = 0; b < levels; ++b) {
            for (std::size_t c = 0; c < levels; ++c) {
                const std::size_t idx = (a * levels + b) * levels + c;
                const std::size_t occ[3] = {a, b, c};
                cplx acc = 0.0;
                for (int j = 0; j < 3; ++j) {
                    if (occ[j] == 0 || row[j] == cplx(0.0)) continue;
                    acc += row[j] * std::sqrt(static_cast<double>(occ[j])) * in[idx - stride[j]];
                }
                out[idx] = acc;
            }
        }
    }
    return out;
}

}  // namespace

void SetupParams::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(delta)) throw Error(ErrorKind::InvalidArgument, "alpha and delta must be finite");
    if (!(nu > 0.0 && nu <= 1.0)) throw Error(ErrorKind::InvalidArgument, "nu must lie in (0, 1]");
    if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorKind::InvalidArgument, "eta must lie in [0, 1]");
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "p must lie in [0, 1]");
    if (cutoff < 2) throw Error(ErrorKind::InvalidArgument, "cutoff must be at least 2");
}

ModeUnitary::ModeUnitary(const Eigen::Matrix3cd& m) : m_(m) {
    if (unitarity_error() > kUnitarityTol)
        throw Error(ErrorKind::InvalidArgument, "mode matrix is not unitary (" + num(unitarity_error()) + ")");
}

double ModeUnitary::unitarity_error() const {
    return (m_.adjoint() * m_ - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
}

ModeUnitary build_mode_unitary(double nu, double eta) {
    if (!(nu > 0.0 && nu <= 1.0) || !(eta >= 0.0 && eta <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "need nu in (0, 1] and eta in [0, 1]");
    const double t = 1.0 - nu * nu;
    Eigen::Matrix3cd m;
    m << nu, std::sqrt(eta * t), std::sqrt((1.0 - eta) * t),
        -std::sqrt(t), nu * std::sqrt(eta), nu * std::sqrt(1.0 - eta),
        0.0, -std::sqrt(1.0 - eta), std::sqrt(eta);
    return ModeUnitary(m);
}

MultimodeFockState::MultimodeFockState(std::size_t cutoff, std::vector<cplx> amplitudes)
    : cutoff_(cutoff), amps_(std::move(amplitudes)) {
    if (amps_.size() != levels() * levels() * levels()) throw Error(ErrorKind::InvalidArgument, "tensor size mismatch");
}

MultimodeFockState MultimodeFockState::product(const fock::FockState& a, const fock::FockState& b, const fock::FockState& c) {
    if (a.dim() != b.dim() || a.dim() != c.dim()) throw Error(ErrorKind::InvalidArgument, "modes need a common cutoff");
    const std::size_t l = a.dim();
    std::vector<cplx> amps(l * l * l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t k = 0; k < l; ++k) amps[(i * l + j) * l + k] = a[i] * b[j] * c[k];
    return {a.cutoff(), std::move(amps)};
}

double MultimodeFockState::norm_squared() const {
    double acc = 0.0;
    for (const cplx& v : amps_) acc += std::norm(v);
    return acc;
}

MultimodeFockState apply_passive(const ModeUnitary& u, const MultimodeFockState& in) {
    const std::size_t l = in.levels();
    const std::size_t n_max = in.cutoff();
    double beyond = 0.0;
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = 0; b < l; ++b)
            for (std::size_t c = 0; c < l; ++c)
                if (a + b + c > n_max) beyond += std::norm(in(a, b, c));
    if (beyond > tol::kTail)
        throw Error(ErrorKind::CutoffUnfaithful, "input has " + num(beyond) +
                                                     " of its norm above the total-photon cutoff");

    const Eigen::Matrix3cd& m = u.matrix();
    std::vector<cplx> vac(l * l * l, cplx(0.0));
    vac[0] = 1.0;
    std::vector<cplx> out(l * l * l, cplx(0.0));

    // |i j k> = (a^dag)^i (b^dag)^j (c^dag)^k |0> / sqrt(i! j! k!); each creation
    // operator is replaced by its image row of M.
    for (std::size_t k = 0; k <= n_max; ++k) {
        for (std::size_t j = 0; j + k <= n_max; ++j) {
            bool any = false;
            for (std::size_t i = 0; i + j + k <= n_max && !any; ++i) any = in(i, j, k) != cplx(0.0);
            if (!any) continue;
            std::vector<cplx> cur = vac;
            for (std::size_t s = 1; s <= k; ++s) {
                cur = apply_creation(m.row(2), cur, l);
                for (auto& v : cur) v /= std::sqrt(static_cast<double>(s));
            }
            for (std::size_t s = 1; s <= j; ++s) {
                cur = apply_creation(m.row(1), cur, l);
                for (auto& v : cur) v /= std::sqrt(static_cast<double>(s));
            }
            for (std::size_t i = 0; i + j + k <= n_max; ++i) {
                if (i > 0) {
                    cur = apply_creation(m.row(0), cur, l);
                    for (auto& v : cur) v /= std::sqrt(static_cast<double>(i));
                }
                const cplx coeff = in(i, j, k);
                if (coeff == cplx(0.0)) continue;
                for (std::size_t x = 0; x < out.size(); ++x) out[x] += coeff * cur[x];
            }
        }
    }
    return {in.cutoff(), std::move(out)};
}

Eigen::MatrixXcd herald_b_vacuum_trace_c(const MultimodeFockState& state) {
    const std::size_t l = state.levels();
    const cplx* base = state.amplitudes().data();
    const auto& kernels = simd::active();
    Eigen::MatrixXcd rho(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l));
    // Row a of the b = 0 slice is contiguous in c.
    for (std::size_t m = 0; m < l; ++m) {
        for (std::size_t n = 0; n <= m; ++n) {
            const cplx v = kernels.dotc(base + state.index(n, 0, 0), base + state.index(m, 0, 0), l);
            rho(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = v;
            rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = std::conj(v);
        }
    }
    return rho;
}

namespace {

Eigen::MatrixXcd herald_pure(const fock::FockState& input, const ModeUnitary& u) {
    const fock::FockState vac = fock::vacuum(input.cutoff());
    return herald_b_vacuum_trace_c(apply_passive(u, MultimodeFockState::product(input, vac, vac)));
}

fock::HeraldedOutcome normalize_outcome(Eigen::MatrixXcd rho) {
    const double weight = rho.trace().real();
    if (!(weight >= tol::kHerald))
        throw Error(ErrorKind::DegenerateHerald, "no-click probability " + num(weight) + " is below threshold");
    return {fock::FockDensityMatrix::normalized(std::move(rho)), weight};
}

}  // namespace

fock::HeraldedOutcome simulate_network(const fock::FockDensityMatrix& input, double nu, double eta) {
    const ModeUnitary u = build_mode_unitary(nu, eta);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(input.matrix());
    const auto dim = static_cast<Eigen::Index>(input.dim());
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double lambda = es.eigenvalues()[k];
        if (lambda <= 1e-15) continue;
        acc += lambda * herald_pure(fock::FockState::from_amplitudes(es.eigenvectors().col(k)), u);
    }
    return normalize_outcome(std::move(acc));
}

fock::HeraldedOutcome simulate_setup(const SetupParams& params) {
    params.validate();
    const ModeUnitary u = build_mode_unitary(params.nu, params.eta);
    const auto dim = static_cast<Eigen::Index>(params.cutoff + 1);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    if (params.p > 0.0) {
        const auto spacs = nongaussian::build_spacs({params.alpha, params.delta}, params.cutoff);
        acc += params.p * herald_pure(spacs, u);
    }
    if (params.p < 1.0) acc += (1.0 - params.p) * herald_pure(fock::coherent(params.alpha, params.cutoff), u);
    return normalize_outcome(std::move(acc));
}

// --- closed forms --------------------------------------------------------------

namespace {

// [alpha (1 - eta T) + delta]^2 + 1 - eta T: norm of the heralded photon-added branch.
double branch_norm(const SetupParams& s) {
    const double l = 1.0 - s.eta * s.transmittance();
    const double x = s.alpha * l + s.delta;
    return x * x + l;
}

}  // namespace

double amplitude_eta(const SetupParams& params) {
    params.validate();
    const double l = 1.0 - params.eta * params.transmittance();
    return params.nu * params.alpha + (params.nu * params.alpha * l + params.nu * params.delta) / branch_norm(params);
}

double mixed_branch_weight(const SetupParams& params) {
    params.validate();
    if (params.p == 0.0) return 0.0;
    const double n_in = 1.0 + (params.alpha + params.delta) * (params.alpha + params.delta);
    return params.p / (params.p + (1.0 - params.p) * n_in / branch_norm(params));
}

double amplitude_eta_p(const SetupParams& params) {
    const double w = mixed_branch_weight(params);
    return w * amplitude_eta(params) + (1.0 - w) * params.nu * params.alpha;
}

double input_amplitude(const SetupParams& params) {
    params.validate();
    return params.p * nongaussian::spacs_amplitude({params.alpha, params.delta}) + (1.0 - params.p) * params.alpha;
}

double effective_gain(const SetupParams& params) {
    const double a_in = input_amplitude(params);
    if (std::abs(a_in) < kZeroAmplitude) throw Error(ErrorKind::ZeroInputAmplitude, "input amplitude vanishes");
    return amplitude_eta_p(params) / a_in;
}

}  // namespace heralded::experiment
