#pragma once

#include <cstddef>
#include <string_view>

namespace velsps::simd {

// Point sets are passed column-major ("structure of arrays"): coordinate k of
// point j lives at set[k * stride + j]. Every kernel accumulates coordinates in
// index order so the scalar and vector paths round identically.
struct Kernels {
    const char* name;
    // min_j sum_k (p[k] - set[k*stride + j])^2 over j in [0, n).
    double (*min_sq_distance)(const double* p, const double* set, std::size_t n, std::size_t stride,
                              std::size_t dim);
    // min_j sum_k |p[k] - set[k*stride + j]| over j in [0, n), j != skip.
    double (*min_l1_distance)(const double* p, const double* set, std::size_t n, std::size_t stride,
                              std::size_t dim, std::size_t skip);
    // x[i] = rho * x[i] + s * e[i]
    void (*ar1_update)(double* x, const double* e, std::size_t n, double rho, double s);
};

const Kernels& scalar_kernels();
// Null when the binary was built without AVX2 support.
const Kernels* avx2_kernels();
bool cpu_has_avx2();

// Chosen once per process: AVX2 when the CPU supports it, unless the
// environment variable VELSPS_ISA=scalar asks otherwise.
const Kernels& kernels();

}  // namespace velsps::simd
