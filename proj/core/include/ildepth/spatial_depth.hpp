#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ildepth/dataset.hpp"

namespace ild {

// Running sum of unit vectors (z - x)/||z - x|| for a fixed query z. Depth is
// readable after any prefix of points, which is what incremental local depth
// needs. Callers must skip points coincident with z instead of adding them.
class UnitVectorAccumulator {
public:
  explicit UnitVectorAccumulator(std::size_t dim) : sum_(dim, 0.0) {}

  // Pre: x != z componentwise.
  void add(std::span<const double> z, std::span<const double> x);
  // Convenience: skips x when it coincides with z.
  void add_skipping(std::span<const double> z, std::span<const double> x) {
    if (!same_point(z, x)) add(z, x);
  }

  std::size_t count() const { return count_; }
  std::span<const double> sum() const { return sum_; }

  // 1 - ||mean unit vector||; exactly 1 when no points have been added.
  double depth() const;

  void reset();

private:
  std::vector<double> sum_;
  std::size_t count_ = 0;
};

struct SpatialDepthResult {
  double value = 1.0;
  std::size_t terms = 0;  // sample points that were not coincident with z
  bool degenerate() const { return terms == 0; }
};

// Spatial depth of z within X. Points of X equal to z are excluded from the
// average; if every point coincides with z the depth is 1 and the result is
// flagged degenerate. Throws std::invalid_argument for an empty X or a
// dimension mismatch.
SpatialDepthResult spatial_depth_detail(std::span<const double> z, const Dataset& X);
double spatial_depth(std::span<const double> z, const Dataset& X);

}  // namespace ild
