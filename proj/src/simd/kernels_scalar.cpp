#include "heralded/simd/kernels.hpp"

namespace heralded::simd {
namespace {

cplx dotu_scalar(const cplx* x, const cplx* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

void scale_outer_scalar(const double* w, cplx* rho, std::size_t n) {
    for (std::size_t m = 0; m < n; ++m) {
        cplx* row = rho + m * n;
        for (std::size_t k = 0; k < n; ++k) row[k] *= w[m] * w[k];
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", &dotu_scalar, &dotc_scalar, &scale_outer_scalar};
    return table;
}

}  // namespace heralded::simd
