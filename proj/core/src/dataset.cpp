#include "ildepth/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace ild {

void Dataset::add(std::span<const double> coords, std::int64_t id, int label) {
  if (dim_ == 0) {
    if (coords.empty()) throw std::invalid_argument("dataset: point has no coordinates");
    dim_ = coords.size();
  }
  if (coords.size() != dim_)
    throw std::invalid_argument("dataset: point with id " + std::to_string(id) + " has " +
                                std::to_string(coords.size()) + " coordinates, expected " +
                                std::to_string(dim_));
  for (double c : coords)
    if (!std::isfinite(c))
      throw std::invalid_argument("dataset: non-finite coordinate in point with id " +
                                  std::to_string(id));
  if (label < 0)
    throw std::invalid_argument("dataset: negative label on point with id " + std::to_string(id));
  if (!labels_.empty() || label != 0) {
    labels_.resize(ids_.size(), 0);
    labels_.push_back(label);
  }
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  ids_.push_back(id);
}

void Dataset::require_unique_ids() const {
  std::unordered_set<std::int64_t> seen;
  seen.reserve(ids_.size());
  for (std::int64_t id : ids_)
    if (!seen.insert(id).second)
      throw std::invalid_argument("dataset: duplicate point id " + std::to_string(id));
}

int Dataset::group_count() const {
  int g = 0;
  for (int l : labels_) g = std::max(g, l);
  return g;
}

std::vector<std::size_t> Dataset::group_positions(int g) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (label(i) == g) out.push_back(i);
  return out;
}

std::vector<std::size_t> Dataset::group_sizes() const {
  int groups = group_count();
  if (groups < 1) throw std::invalid_argument("dataset: no group labels");
  std::vector<std::size_t> counts(static_cast<std::size_t>(groups), 0);
  for (std::size_t i = 0; i < size(); ++i) {
    int l = label(i);
    if (l == 0)
      throw std::invalid_argument("dataset: unlabeled point with id " + std::to_string(id(i)));
    ++counts[static_cast<std::size_t>(l - 1)];
  }
  for (std::size_t g = 0; g < counts.size(); ++g)
    if (counts[g] == 0)
      throw std::invalid_argument("dataset: group " + std::to_string(g + 1) + " is empty");
  return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> positions) const {
  Dataset out(dim_);
  for (std::size_t p : positions) out.add(point(p), id(p), label(p));
  return out;
}

bool same_point(std::span<const double> a, std::span<const double> b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return false;
  return true;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double t = (a[k] - b[k]) / m;
    s += t * t;
  }
  return m * std::sqrt(s);
}

}  // namespace ild
