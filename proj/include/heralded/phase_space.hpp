#pragma once

// Husimi Q and Glauber-Sudarshan P representations on a square grid in
// (Re alpha, Im alpha), with the filter's action on each.

#include "heralded/fock.hpp"
#include "heralded/gaussian.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

namespace heralded::phase_space {

using cplx = std::complex<double>;

struct GridSpec {
    double min = -5.0;
    double max = 5.0;
    std::size_t nodes = 401;  // per axis

    double spacing() const { return (max - min) / static_cast<double>(nodes - 1); }
    double coord(std::size_t i) const { return min + spacing() * static_cast<double>(i); }
    double cell_area() const { return spacing() * spacing(); }
    void validate() const;
};

class QGrid {
public:
    QGrid(GridSpec spec, std::vector<double> values);

    const GridSpec& spec() const { return spec_; }
    const std::vector<double>& values() const { return values_; }
    // ix runs along Re alpha, iy along Im alpha.
    double at(std::size_t ix, std::size_t iy) const { return values_[iy * spec_.nodes + ix]; }
    cplx node(std::size_t ix, std::size_t iy) const { return {spec_.coord(ix), spec_.coord(iy)}; }

    double mass() const;
    // Bilinear interpolation; zero outside the grid.
    double interpolate(cplx alpha) const;

private:
    GridSpec spec_;
    std::vector<double> values_;
};

// Q(alpha) = <alpha|rho|alpha>/pi. GridTooSmall when the Riemann mass falls
// short of 1 by more than tol::kQNorm.
QGrid q_from_density(const fock::FockDensityMatrix& rho, const GridSpec& spec = {});

// Closed-form Gaussian Q function.
QGrid q_gaussian(const gaussian::GaussianState& state, const GridSpec& spec = {});

// e^{(g^2-1)|alpha|^2} Q(g alpha), bilinearly resampled and renormalized.
// DivergentAmplification when the reweighted mass reaches the edge of the
// region the source grid can supply.
QGrid transform_q(const QGrid& q, double gain);

// Integral of alpha Q(alpha); equals <a> because Q is anti-normally ordered.
cplx mean_field(const QGrid& q);

// Gaussian moments read off the Q grid: gamma = 2 Cov(r) - I, d = E[r].
gaussian::Moments fit_gaussian(const QGrid& q);

// Largest pointwise difference; grids must share a spec.
double max_abs_difference(const QGrid& a, const QGrid& b);

// One "re,im,q" line per node, Re alpha fastest.
void write_csv(const QGrid& q, std::ostream& out);

// Regular P distribution, normalized on its support grid at construction.
class PDensity {
public:
    using Function = std::function<double(cplx)>;

    // NonIntegrable when the Riemann mass is not positive and finite.
    PDensity(Function density, GridSpec support = {});

    double operator()(cplx alpha) const { return density_(alpha) / norm_; }
    const GridSpec& support() const { return support_; }

    // Riemann sum of f(alpha) P(alpha) over the support grid.
    cplx integrate(const std::function<cplx(cplx)>& f) const;
    cplx mean_field() const;

private:
    Function density_;
    GridSpec support_;
    double norm_;
};

// e^{(1 - 1/g^2)|alpha|^2} P(alpha/g), renormalized. NonIntegrable when the
// reweighted mass reaches the support boundary.
PDensity transform_p(const PDensity& p, double gain);

}  // namespace heralded::phase_space
