// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// CPUID check, so nothing here may be inlined into portable code.

#include "heralded/simd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace heralded::simd {
namespace {

// One __m256d holds two complex doubles laid out as (re0, im0, re1, im1).
inline cplx hsum(__m256d acc_re, __m256d acc_im) {
    // acc_re lanes: partial real parts; acc_im lanes: partial imaginary parts.
    alignas(32) double r[4];
    alignas(32) double i[4];
    _mm256_store_pd(r, acc_re);
    _mm256_store_pd(i, acc_im);
    return {r[0] + r[1] + r[2] + r[3], i[0] + i[1] + i[2] + i[3]};
}

cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(xp + 2 * i);   // ar0 ai0 ar1 ai1
        __m256d b = _mm256_loadu_pd(yp + 2 * i);   // br0 bi0 br1 bi1
        __m256d bs = _mm256_permute_pd(b, 0x5);    // bi0 br0 bi1 br1
        // re += ar*br - ai*bi ; im += ar*bi + ai*br, accumulated lane-wise and
        // resolved in the horizontal sum via the sign mask below.
        re = _mm256_fmadd_pd(a, b, re);            // ar*br, ai*bi
        im = _mm256_fmadd_pd(a, bs, im);           // ar*bi, ai*br
    }
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    re = _mm256_mul_pd(re, sign);
    cplx acc = hsum(re, im);
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(xp + 2 * i);
        __m256d b = _mm256_loadu_pd(yp + 2 * i);
        __m256d bs = _mm256_permute_pd(b, 0x5);
        re = _mm256_fmadd_pd(a, b, re);            // ar*br, ai*bi  (both +)
        im = _mm256_fmadd_pd(a, bs, im);           // ar*bi, ai*br  (second -)
    }
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    im = _mm256_mul_pd(im, sign);
    cplx acc = hsum(re, im);
    for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

void scale_outer_avx2(const double* w, cplx* rho, std::size_t n) {
    for (std::size_t m = 0; m < n; ++m) {
        double* row = reinterpret_cast<double*>(rho + m * n);
        const __m256d wm = _mm256_set1_pd(w[m]);
        std::size_t k = 0;
        for (; k + 2 <= n; k += 2) {
            __m256d wk = _mm256_set_pd(w[k + 1], w[k + 1], w[k], w[k]);
            __m256d v = _mm256_loadu_pd(row + 2 * k);
            v = _mm256_mul_pd(v, _mm256_mul_pd(wm, wk));
            _mm256_storeu_pd(row + 2 * k, v);
        }
        for (; k < n; ++k) rho[m * n + k] *= w[m] * w[k];
    }
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable table{"avx2", &dotu_avx2, &dotc_avx2, &scale_outer_avx2};
    return &table;
}

}  // namespace heralded::simd

#else

namespace heralded::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace heralded::simd

#endif
