#include "viasnet/core/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace viasnet::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& active() {
    static const Ops* table = [] {
        const char* forced = std::getenv("VIASNET_KERNELS");
        if (forced && std::strcmp(forced, "scalar") == 0) return &scalar_ops();
        if (forced && std::strcmp(forced, "avx2") == 0)
            return avx2_supported() ? &avx2_ops() : &scalar_ops();
        return avx2_supported() ? &avx2_ops() : &scalar_ops();
    }();
    return *table;
}

} // namespace viasnet::kernels
