#include "velsps/moo_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "velsps/errors.hpp"
#include "velsps/simd/kernels.hpp"

namespace velsps {

namespace {

std::size_t common_dim(const PointSet& s, const char* who) {
    if (s.empty()) throw DomainError(std::string(who) + ": empty point set");
    std::size_t d = s.front().size();
    for (const auto& p : s)
        if (p.size() != d) throw DomainError(std::string(who) + ": inconsistent dimensions");
    return d;
}

double hv2d(std::vector<const double*> pts, double rx, double ry) {
    std::sort(pts.begin(), pts.end(), [](const double* a, const double* b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    double vol = 0.0;
    double y_best = ry;
    for (const double* p : pts) {
        if (p[1] < y_best) {
            vol += (rx - p[0]) * (y_best - p[1]);
            y_best = p[1];
        }
    }
    return vol;
}

// Slices along the last coordinate: between consecutive levels the dominated
// cross-section is the (d-1)-dimensional volume of the points already passed.
double hv_rec(std::vector<const double*> pts, const double* ref, std::size_t d) {
    if (pts.empty()) return 0.0;
    if (d == 1) {
        double m = ref[0];
        for (const double* p : pts) m = std::min(m, p[0]);
        return ref[0] - m;
    }
    if (d == 2) return hv2d(std::move(pts), ref[0], ref[1]);
    const std::size_t last = d - 1;
    std::sort(pts.begin(), pts.end(), [last](const double* a, const double* b) { return a[last] < b[last]; });
    double vol = 0.0;
    std::vector<const double*> active;
    active.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        active.push_back(pts[i]);
        double hi = (i + 1 < pts.size()) ? pts[i + 1][last] : ref[last];
        double depth = hi - pts[i][last];
        if (depth > 0.0) vol += depth * hv_rec(active, ref, d - 1);
    }
    return vol;
}

std::vector<double> to_columns(const PointSet& s, std::size_t d) {
    std::vector<double> cols(d * s.size());
    for (std::size_t j = 0; j < s.size(); ++j)
        for (std::size_t k = 0; k < d; ++k) cols[k * s.size() + j] = s[j][k];
    return cols;
}

}  // namespace

double hypervolume(const PointSet& front, const Point& reference) {
    if (front.empty()) return 0.0;
    std::size_t d = common_dim(front, "hypervolume");
    if (reference.size() != d) throw DomainError("hypervolume: reference dimension mismatch");
    std::vector<const double*> pts;
    for (const auto& p : front) {
        for (std::size_t k = 0; k < d; ++k) {
            if (!std::isfinite(p[k])) throw DomainError("hypervolume: non-finite coordinate");
            if (p[k] > reference[k]) throw DomainError("hypervolume: point beyond reference");
        }
        pts.push_back(p.data());
    }
    return hv_rec(std::move(pts), reference.data(), d);
}

double hypervolume_clipped(const PointSet& front, const Point& reference) {
    PointSet kept;
    for (const auto& p : front) {
        bool inside = p.size() == reference.size();
        for (std::size_t k = 0; inside && k < p.size(); ++k) inside = p[k] <= reference[k];
        if (inside) kept.push_back(p);
    }
    return hypervolume(kept, reference);
}

double generational_distance(const PointSet& front, const PointSet& reference_front) {
    std::size_t d = common_dim(front, "generational_distance");
    if (common_dim(reference_front, "generational_distance") != d)
        throw DomainError("generational_distance: dimension mismatch");
    const auto cols = to_columns(reference_front, d);
    const auto& kern = simd::kernels();
    double acc = 0.0;
    for (const auto& p : front) acc += kern.min_sq_distance(p.data(), cols.data(), reference_front.size(),
                                                            reference_front.size(), d);
    return std::sqrt(acc) / static_cast<double>(front.size());
}

double inverted_generational_distance(const PointSet& front, const PointSet& reference_front) {
    return generational_distance(reference_front, front);
}

double spacing(const PointSet& front) {
    std::size_t d = common_dim(front, "spacing");
    if (front.size() < 2) throw DomainError("spacing: needs at least two points");
    const std::size_t n = front.size();
    const auto cols = to_columns(front, d);
    const auto& kern = simd::kernels();
    std::vector<double> nn(n);
    for (std::size_t i = 0; i < n; ++i) nn[i] = kern.min_l1_distance(front[i].data(), cols.data(), n, n, d, i);
    double mean = std::accumulate(nn.begin(), nn.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : nn) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace velsps
