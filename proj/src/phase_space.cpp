#include "heralded/phase_space.hpp"

#include "heralded/error.hpp"
#include "heralded/parallel.hpp"
#include "heralded/simd/kernels.hpp"
#include "heralded/tolerances.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

namespace heralded::phase_space {

namespace {

constexpr double kBand = 0.95;  // outer 5% of the half-width counts as boundary

double half_width(const GridSpec& s) { return 0.5 * (s.max - s.min); }
double center(const GridSpec& s) { return 0.5 * (s.max + s.min); }

bool in_band(const GridSpec& s, cplx alpha) {
    const double c = center(s);
    const double r = std::max(std::abs(alpha.real() - c), std::abs(alpha.imag() - c));
    return r >= kBand * half_width(s);
}

double riemann_mass(const std::vector<double>& v, const GridSpec& s) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc * s.cell_area();
}

}  // namespace

void GridSpec::validate() const {
    if (nodes < 2 || !(max > min) || !std::isfinite(min) || !std::isfinite(max))
        throw Error(ErrorKind::InvalidArgument, "grid needs max > min and at least 2 nodes per axis");
}

QGrid::QGrid(GridSpec spec, std::vector<double> values) : spec_(spec), values_(std::move(values)) {
    spec_.validate();
    if (values_.size() != spec_.nodes * spec_.nodes) throw Error(ErrorKind::InvalidArgument, "grid size mismatch");
}

double QGrid::mass() const { return riemann_mass(values_, spec_); }

double QGrid::interpolate(cplx alpha) const {
    const double h = spec_.spacing();
    const double fx = (alpha.real() - spec_.min) / h;
    const double fy = (alpha.imag() - spec_.min) / h;
    const double last = static_cast<double>(spec_.nodes - 1);
    if (!(fx >= 0.0 && fy >= 0.0 && fx <= last && fy <= last)) return 0.0;
    const auto ix = std::min(static_cast<std::size_t>(fx), spec_.nodes - 2);
    const auto iy = std::min(static_cast<std::size_t>(fy), spec_.nodes - 2);
    const double tx = fx - static_cast<double>(ix);
    const double ty = fy - static_cast<double>(iy);
    return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) + (1 - tx) * ty * at(ix, iy + 1) +
           tx * ty * at(ix + 1, iy + 1);
}

QGrid q_from_density(const fock::FockDensityMatrix& rho, const GridSpec& spec) {
    spec.validate();
    // Q = sum_k lambda_k |<alpha|psi_k>|^2 / pi over the positive spectrum.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
    const auto dim = static_cast<Eigen::Index>(rho.dim());
    std::vector<double> lambdas;
    std::vector<std::vector<cplx>> vectors;
    const double lmax = es.eigenvalues().maxCoeff();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double l = es.eigenvalues()[k];
        if (l <= 1e-15 * lmax) continue;
        lambdas.push_back(l);
        const Eigen::VectorXcd v = es.eigenvectors().col(k);
        vectors.emplace_back(v.data(), v.data() + dim);
    }

    const std::size_t n = spec.nodes;
    std::vector<double> values(n * n);
    const auto& kernels = simd::active();
    parallel_for(n, [&](std::size_t iy) {
        std::vector<cplx> coh(static_cast<std::size_t>(dim));
        for (std::size_t ix = 0; ix < n; ++ix) {
            const cplx alpha(spec.coord(ix), spec.coord(iy));
            cplx c = std::exp(-0.5 * std::norm(alpha));
            for (std::size_t m = 0; m < coh.size(); ++m) {
                if (m > 0) c *= alpha / std::sqrt(static_cast<double>(m));
                coh[m] = c;
            }
            double q = 0.0;
            for (std::size_t k = 0; k < lambdas.size(); ++k)
                q += lambdas[k] * std::norm(kernels.dotc(coh.data(), vectors[k].data(), coh.size()));
            values[iy * n + ix] = q / std::numbers::pi;
        }
    });

    QGrid grid(spec, std::move(values));
    const double mass = grid.mass();
    if (mass < 1.0 - tol::kQNorm)
        throw Error(ErrorKind::GridTooSmall, "grid holds only " + num(mass) + " of the Q mass");
    return grid;
}

QGrid q_gaussian(const gaussian::GaussianState& state, const GridSpec& spec) {
    spec.validate();
    const Eigen::Matrix2d shifted = state.covariance() + Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d big_gamma = shifted.inverse();
    const double prefactor = 2.0 / (std::numbers::pi * std::sqrt(shifted.determinant()));
    const std::size_t n = spec.nodes;
    std::vector<double> values(n * n);
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const Eigen::Vector2d r(std::sqrt(2.0) * spec.coord(ix), std::sqrt(2.0) * spec.coord(iy));
            const Eigen::Vector2d u = r - state.displacement();
            values[iy * n + ix] = prefactor * std::exp(-u.dot(big_gamma * u));
        }
    }
    return {spec, std::move(values)};
}

QGrid transform_q(const QGrid& q, double gain) {
    if (!(gain > 0.0) || !std::isfinite(gain)) throw Error(ErrorKind::InvalidGain, "gain must be positive");
    if (gain == 1.0) return q;
    const GridSpec& spec = q.spec();
    const std::size_t n = spec.nodes;
    std::vector<double> values(n * n);
    std::vector<char> boundary(n * n, 0);
    parallel_for(n, [&](std::size_t iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const cplx alpha = q.node(ix, iy);
            const cplx source = gain * alpha;
            const double qs = q.interpolate(source);
            const std::size_t idx = iy * n + ix;
            boundary[idx] = in_band(spec, alpha) || in_band(spec, source) ? 1 : 0;
            values[idx] = qs > 0.0 ? std::exp((gain * gain - 1.0) * std::norm(alpha) + std::log(qs)) : 0.0;
        }
    });
    const double total = riemann_mass(values, spec);
    if (!(total > 0.0) || !std::isfinite(total))
        throw Error(ErrorKind::DivergentAmplification, "reweighted Q mass is not finite");
    double edge = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (boundary[i]) edge += values[i];
    edge *= spec.cell_area();
    if (edge > tol::kQNorm * total) {
        const std::string msg = "reweighted Q mass at the grid edge is " + num(edge / total);
        if (gain > 1.0) throw Error(ErrorKind::DivergentAmplification, msg);
        throw Error(ErrorKind::GridTooSmall, msg);
    }
    for (double& v : values) v /= total;
    return {spec, std::move(values)};
}

cplx mean_field(const QGrid& q) {
    const std::size_t n = q.spec().nodes;
    cplx acc = 0.0;
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) acc += q.node(ix, iy) * q.at(ix, iy);
    return acc * q.spec().cell_area();
}

gaussian::Moments fit_gaussian(const QGrid& q) {
    const std::size_t n = q.spec().nodes;
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d second = Eigen::Matrix2d::Zero();
    double mass = 0.0;
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double w = q.at(ix, iy);
            const Eigen::Vector2d r(std::sqrt(2.0) * q.spec().coord(ix), std::sqrt(2.0) * q.spec().coord(iy));
            mass += w;
            mean += w * r;
            second += w * r * r.transpose();
        }
    }
    mean /= mass;
    second /= mass;
    gaussian::Moments m;
    m.d = mean;
    m.gamma = 2.0 * (second - mean * mean.transpose()) - Eigen::Matrix2d::Identity();
    return m;
}

double max_abs_difference(const QGrid& a, const QGrid& b) {
    if (a.spec().nodes != b.spec().nodes || a.spec().min != b.spec().min || a.spec().max != b.spec().max)
        throw Error(ErrorKind::InvalidArgument, "grids differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    return worst;
}

void write_csv(const QGrid& q, std::ostream& out) {
    out << "re_alpha,im_alpha,q\n";
    char line[96];
    const std::size_t n = q.spec().nodes;
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            std::snprintf(line, sizeof line, "%.11e,%.11e,%.11e\n", q.spec().coord(ix), q.spec().coord(iy), q.at(ix, iy));
            out << line;
        }
    }
}

// --- P representation -----------------------------------------------------------

PDensity::PDensity(Function density, GridSpec support) : density_(std::move(density)), support_(support), norm_(1.0) {
    support_.validate();
    const double mass = integrate([](cplx) { return cplx(1.0); }).real();
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw Error(ErrorKind::NonIntegrable, "P density has no finite positive mass on its support");
    norm_ = mass;
}

cplx PDensity::integrate(const std::function<cplx(cplx)>& f) const {
    const std::size_t n = support_.nodes;
    cplx acc = 0.0;
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const cplx alpha(support_.coord(ix), support_.coord(iy));
            acc += f(alpha) * (*this)(alpha);
        }
    }
    return acc * support_.cell_area();
}

cplx PDensity::mean_field() const {
    return integrate([](cplx a) { return a; });
}

PDensity transform_p(const PDensity& p, double gain) {
    if (!(gain > 0.0) || !std::isfinite(gain)) throw Error(ErrorKind::InvalidGain, "gain must be positive");
    const double k = 1.0 - 1.0 / (gain * gain);
    auto reweighted = [p, gain, k](cplx alpha) {
        const double base = p(alpha / gain);
        return base > 0.0 ? std::exp(k * std::norm(alpha) + std::log(base)) : 0.0;
    };
    PDensity out(reweighted, p.support());
    const double edge = out.integrate([&](cplx a) { return in_band(p.support(), a) ? cplx(1.0) : cplx(0.0); }).real();
    if (edge > tol::kQNorm)
        throw Error(ErrorKind::NonIntegrable, "reweighted P mass at the support edge is " + num(edge));
    return out;
}

}  // namespace heralded::phase_space
