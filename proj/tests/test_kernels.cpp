#include "heralded/simd/kernels.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

using heralded::simd::cplx;
namespace simd = heralded::simd;

namespace {

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {d(rng), d(rng)};
    return v;
}

const simd::KernelTable* avx2_or_skip() {
    const simd::KernelTable* t = simd::avx2_kernels();
    if (!t || !simd::cpu_has_avx2()) return nullptr;
    return t;
}

}  // namespace

TEST(Kernels, ActiveTableIsOneOfTheVariants) {
    const auto& a = simd::active();
    EXPECT_TRUE(a.name == "scalar" || a.name == "avx2");
}

TEST(Kernels, EnvironmentForcesScalarPath) {
    const char* env = std::getenv("HERALDED_SIMD");
    if (!env || std::string_view(env) != "scalar") GTEST_SKIP() << "HERALDED_SIMD not set";
    EXPECT_EQ(simd::active().name, "scalar");
}

TEST(Kernels, ScalarDotMatchesStdComplex) {
    std::mt19937_64 rng(1);
    for (std::size_t n : {0u, 1u, 2u, 7u, 31u}) {
        const auto x = random_vector(rng, n);
        const auto y = random_vector(rng, n);
        cplx u = 0.0, c = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            u += x[i] * y[i];
            c += std::conj(x[i]) * y[i];
        }
        EXPECT_NEAR(std::abs(simd::scalar_kernels().dotu(x.data(), y.data(), n) - u), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(simd::scalar_kernels().dotc(x.data(), y.data(), n) - c), 0.0, 1e-12);
    }
}

TEST(Kernels, Avx2DotMatchesScalarForAllLengths) {
    const auto* avx = avx2_or_skip();
    if (!avx) GTEST_SKIP() << "AVX2 not available";
    std::mt19937_64 rng(2);
    const auto& ref = simd::scalar_kernels();
    for (std::size_t n = 0; n < 70; ++n) {
        const auto x = random_vector(rng, n);
        const auto y = random_vector(rng, n);
        const double scale = 1.0 + static_cast<double>(n);
        EXPECT_LE(std::abs(avx->dotu(x.data(), y.data(), n) - ref.dotu(x.data(), y.data(), n)), 1e-13 * scale) << n;
        EXPECT_LE(std::abs(avx->dotc(x.data(), y.data(), n) - ref.dotc(x.data(), y.data(), n)), 1e-13 * scale) << n;
    }
}

TEST(Kernels, Avx2ScaleOuterMatchesScalar) {
    const auto* avx = avx2_or_skip();
    if (!avx) GTEST_SKIP() << "AVX2 not available";
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (std::size_t n : {1u, 2u, 3u, 16u, 31u, 41u}) {
        std::vector<double> w(n);
        for (auto& x : w) x = u(rng);
        auto a = random_vector(rng, n * n);
        auto b = a;
        simd::scalar_kernels().scale_outer(w.data(), a.data(), n);
        avx->scale_outer(w.data(), b.data(), n);
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]) << "n=" << n << " i=" << i;
    }
}
