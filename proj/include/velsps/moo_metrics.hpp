#pragma once

#include <vector>

namespace velsps {

using Point = std::vector<double>;
using PointSet = std::vector<Point>;

struct MetricContext {
    Point reference_point;     // hypervolume reference, minimisation
    PointSet reference_front;  // for GD / IGD; may be empty
};

// Exact dominated volume. Every point must be <= reference coordinate-wise.
double hypervolume(const PointSet& front, const Point& reference);
// Same, after dropping points that are not below the reference (they add no volume).
double hypervolume_clipped(const PointSet& front, const Point& reference);

// (sum_i min_j |a_i - b_j|^2)^(1/2) / |A|
double generational_distance(const PointSet& front, const PointSet& reference_front);
double inverted_generational_distance(const PointSet& front, const PointSet& reference_front);

// Sample standard deviation of the L1 nearest-neighbour distances.
double spacing(const PointSet& front);

}  // namespace velsps
