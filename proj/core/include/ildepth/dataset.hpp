#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ild {

// A finite point set in R^d. Coordinates are stored row-major. Every point
// carries a stable integer id and an optional group label; label 0 means
// "unlabeled" and labeled sets use consecutive groups 1..G.
class Dataset {
public:
  Dataset() = default;
  explicit Dataset(std::size_t dim) : dim_(dim) {}

  std::size_t size() const { return ids_.size(); }
  std::size_t dim() const { return dim_; }
  bool empty() const { return ids_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::int64_t id(std::size_t i) const { return ids_[i]; }
  int label(std::size_t i) const { return labels_.empty() ? 0 : labels_[i]; }
  bool labeled() const { return !labels_.empty(); }

  const std::vector<double>& coords() const { return coords_; }
  const std::vector<std::int64_t>& ids() const { return ids_; }
  const std::vector<int>& labels() const { return labels_; }

  // Appends a point. Throws std::invalid_argument on a dimension mismatch or
  // a non-finite coordinate. Ids are not checked here; bulk loaders call
  // require_unique_ids() once instead.
  void add(std::span<const double> coords, std::int64_t id, int label = 0);
  void add(std::initializer_list<double> coords, std::int64_t id, int label = 0) {
    add(std::span<const double>(coords.begin(), coords.size()), id, label);
  }
  // Id defaults to the current size.
  void add(std::initializer_list<double> coords) {
    add(coords, static_cast<std::int64_t>(size()));
  }

  void require_unique_ids() const;

  // Largest label present; 0 for unlabeled sets.
  int group_count() const;
  // Positions of the points in group g, in dataset order.
  std::vector<std::size_t> group_positions(int g) const;
  // Per-group sizes for groups 1..G. Throws if any group in 1..G is empty or
  // any point is unlabeled.
  std::vector<std::size_t> group_sizes() const;

  Dataset subset(std::span<const std::size_t> positions) const;

private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<std::int64_t> ids_;
  std::vector<int> labels_;  // empty, or one entry per point
};

bool same_point(std::span<const double> a, std::span<const double> b);

// Euclidean distance, scaled to stay finite for extreme coordinates.
double euclidean(std::span<const double> a, std::span<const double> b);

}  // namespace ild
