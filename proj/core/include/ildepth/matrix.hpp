#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ild {

// Dense n-by-n matrix of doubles, row-major.
class SquareMatrix {
public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  const std::vector<double>& data() const { return data_; }

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Symmetric, unit diagonal, entries in [0,1].
struct SimilarityMatrix {
  std::vector<std::int64_t> ids;
  SquareMatrix values;
};

// Symmetric, zero diagonal, entries >= 0.
struct DissimilarityMatrix {
  std::vector<std::int64_t> ids;
  SquareMatrix values;
};

}  // namespace ild
