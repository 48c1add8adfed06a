#include <cstdlib>
#include <string_view>

#include "velsps/simd/kernels.hpp"

namespace velsps::simd {

namespace {

const Kernels& choose() {
    const char* env = std::getenv("VELSPS_ISA");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (avx2_kernels() != nullptr && cpu_has_avx2()) return *avx2_kernels();
    return scalar_kernels();
}

}  // namespace

const Kernels& kernels() {
    static const Kernels& chosen = choose();
    return chosen;
}

}  // namespace velsps::simd
