#pragma once

// Inner-loop kernels with a portable scalar reference and an AVX2+FMA variant.
// The variant is picked once at runtime from CPUID; HERALDED_SIMD=scalar forces
// the reference path. Both paths are exposed so tests can compare them.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace heralded::simd {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;
    // sum_i x_i * y_i
    cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
    // sum_i conj(x_i) * y_i
    cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
    // rho[m*n+k] *= w[m] * w[k]  (row-major n x n)
    void (*scale_outer)(const double* w, cplx* rho, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the binary was built without AVX2 support for this target.
const KernelTable* avx2_kernels();
bool cpu_has_avx2();

// Kernel table in use for this process.
const KernelTable& active();

inline cplx dotu(std::span<const cplx> x, std::span<const cplx> y) {
    return active().dotu(x.data(), y.data(), x.size());
}
inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
    return active().dotc(x.data(), y.data(), x.size());
}

}  // namespace heralded::simd
