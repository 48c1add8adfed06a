#include <cmath>
#include <limits>

#include "velsps/simd/kernels.hpp"

namespace velsps::simd {
namespace {

double min_sq_distance_scalar(const double* p, const double* set, std::size_t n, std::size_t stride,
                              std::size_t dim) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            double d = p[k] - set[k * stride + j];
            acc = acc + d * d;
        }
        if (acc < best) best = acc;
    }
    return best;
}

double min_l1_distance_scalar(const double* p, const double* set, std::size_t n, std::size_t stride,
                              std::size_t dim, std::size_t skip) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == skip) continue;
        double acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k) acc = acc + std::fabs(p[k] - set[k * stride + j]);
        if (acc < best) best = acc;
    }
    return best;
}

void ar1_update_scalar(double* x, const double* e, std::size_t n, double rho, double s) {
    for (std::size_t i = 0; i < n; ++i) x[i] = rho * x[i] + s * e[i];
}

const Kernels kScalar{"scalar", &min_sq_distance_scalar, &min_l1_distance_scalar, &ar1_update_scalar};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace velsps::simd
