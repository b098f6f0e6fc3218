#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/matrix.hpp"

namespace ild {

// Depths of every sample point within the reflected sample around one center:
// the original points plus their point reflections through the center.
struct ReflectedDepthRow {
  std::int64_t center_id = -1;
  // depths[q] is the depth of X[q]; indices follow dataset position.
  std::vector<double> depths;
  // Dataset positions sorted deepest first. Ties broken by smaller distance
  // to the center, then smaller id.
  std::vector<std::uint32_t> order;
};

// Shared state for computing reflected rows over one dataset: the unit-vector
// sums among the original points do not depend on the center, so they are
// computed once. The dataset must outlive the context.
class ReflectionContext {
public:
  explicit ReflectionContext(const Dataset& X, int threads = 0);

  const Dataset& data() const { return *data_; }

  // Row for an arbitrary center. O(n^2 d) for the center-dependent half.
  ReflectedDepthRow row(std::span<const double> center, std::int64_t center_id = -1) const;

private:
  const Dataset* data_;
  std::vector<double> base_sum_;          // n * d, unit-vector sums among X
  std::vector<std::uint32_t> base_count_; // non-coincident terms per point
};

// One-off convenience; builds a context internally.
ReflectedDepthRow reflected_depth_row(std::span<const double> center, const Dataset& X);

// The locality-beta neighborhood: the ceil(n * beta) deepest points of the
// row. Members keep rank order.
struct Neighborhood {
  std::int64_t center_id = -1;
  double beta = 1.0;
  std::vector<std::uint32_t> members;
};

Neighborhood beta_neighborhood(const ReflectedDepthRow& row, double beta);

// Row i holds the reflected depths around center X[i]. Asymmetric in general;
// diagonal entries are 1 up to roundoff.
SquareMatrix reflected_similarity_matrix(const Dataset& X, int threads = 0);

}  // namespace ild
