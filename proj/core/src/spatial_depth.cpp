#include "ildepth/spatial_depth.hpp"

#include <cmath>
#include <stdexcept>

namespace ild {

void UnitVectorAccumulator::add(std::span<const double> z, std::span<const double> x) {
  // Scale by the largest component so the norm neither overflows nor
  // underflows to zero for nearly coincident points.
  double m = 0.0;
  for (std::size_t k = 0; k < sum_.size(); ++k) m = std::max(m, std::fabs(z[k] - x[k]));
  double s = 0.0;
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    double t = (z[k] - x[k]) / m;
    s += t * t;
  }
  double norm = m * std::sqrt(s);
  for (std::size_t k = 0; k < sum_.size(); ++k) sum_[k] += (z[k] - x[k]) / norm;
  ++count_;
}

double UnitVectorAccumulator::depth() const {
  if (count_ == 0) return 1.0;
  double s = 0.0;
  for (double c : sum_) s += c * c;
  // Roundoff in the unit vectors can push a one-point average a hair past
  // norm 1; depth is nonnegative by definition, so clamp.
  double v = 1.0 - std::sqrt(s) / static_cast<double>(count_);
  return v < 0.0 ? 0.0 : v;
}

void UnitVectorAccumulator::reset() {
  std::fill(sum_.begin(), sum_.end(), 0.0);
  count_ = 0;
}

SpatialDepthResult spatial_depth_detail(std::span<const double> z, const Dataset& X) {
  if (X.empty()) throw std::invalid_argument("spatial depth: empty sample");
  if (z.size() != X.dim())
    throw std::invalid_argument("spatial depth: query has dimension " + std::to_string(z.size()) +
                                ", sample has " + std::to_string(X.dim()));
  UnitVectorAccumulator acc(X.dim());
  for (std::size_t i = 0; i < X.size(); ++i) acc.add_skipping(z, X.point(i));
  return {acc.depth(), acc.count()};
}

double spatial_depth(std::span<const double> z, const Dataset& X) {
  return spatial_depth_detail(z, X).value;
}

}  // namespace ild
