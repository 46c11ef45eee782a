#include "heralded/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace heralded::simd {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const KernelTable& select() {
    if (const char* env = std::getenv("HERALDED_SIMD"); env && std::string_view(env) == "scalar")
        return scalar_kernels();
    if (const KernelTable* t = avx2_kernels(); t && cpu_has_avx2()) return *t;
    return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace heralded::simd
