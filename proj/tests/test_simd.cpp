#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "velsps/simd/kernels.hpp"

using namespace velsps::simd;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

const Kernels* vector_path() {
    const Kernels* k = avx2_kernels();
    return k != nullptr && cpu_has_avx2() ? k : nullptr;
}

}  // namespace

TEST_CASE("dispatch picks a usable kernel set") {
    const Kernels& k = kernels();
    CHECK(k.name != nullptr);
    CHECK(&kernels() == &k);
    if (vector_path() == nullptr) MESSAGE("AVX2 unavailable; only the scalar path is exercised");
}

TEST_CASE("distance kernels agree bit for bit across paths") {
    const Kernels* v = vector_path();
    if (v == nullptr) return;
    const Kernels& s = scalar_kernels();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (std::size_t n = 1; n <= 37; ++n) {
        for (std::size_t d = 1; d <= 6; ++d) {
            std::vector<double> set(n * d), p(d);
            for (auto& x : set) x = u(rng);
            for (auto& x : p) x = u(rng);
            CHECK(same_bits(s.min_sq_distance(p.data(), set.data(), n, n, d),
                            v->min_sq_distance(p.data(), set.data(), n, n, d)));
            for (std::size_t skip : {std::size_t{0}, n / 2, n - 1, n + 5}) {
                double a = s.min_l1_distance(p.data(), set.data(), n, n, d, skip);
                double b = v->min_l1_distance(p.data(), set.data(), n, n, d, skip);
                CHECK(same_bits(a, b));
            }
        }
    }
}

TEST_CASE("distance kernels return the true minimum") {
    const Kernels& s = scalar_kernels();
    std::vector<double> set{0.0, 3.0, 10.0, 0.0, 4.0, 10.0};  // points (0,0), (3,4), (10,10)
    double p[2] = {3.0, 4.0};
    CHECK(s.min_sq_distance(p, set.data(), 3, 3, 2) == 0.0);
    CHECK(s.min_l1_distance(p, set.data(), 3, 3, 2, 1) == 7.0);
    if (const Kernels* v = vector_path()) {
        CHECK(v->min_sq_distance(p, set.data(), 3, 3, 2) == 0.0);
        CHECK(v->min_l1_distance(p, set.data(), 3, 3, 2, 1) == 7.0);
    }
}

TEST_CASE("AR(1) update agrees bit for bit across paths") {
    const Kernels& s = scalar_kernels();
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 1000u}) {
        std::vector<double> x(n), e(n);
        for (auto& v : x) v = g(rng);
        for (auto& v : e) v = g(rng);
        auto xs = x;
        s.ar1_update(xs.data(), e.data(), n, 0.9, 0.43588989435406733);
        for (std::size_t i = 0; i < n; ++i) {
            double want = 0.9 * x[i] + 0.43588989435406733 * e[i];
            CHECK(same_bits(xs[i], want));
        }
        if (const Kernels* v = vector_path()) {
            auto xv = x;
            v->ar1_update(xv.data(), e.data(), n, 0.9, 0.43588989435406733);
            for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(xs[i], xv[i]));
        }
    }
}
