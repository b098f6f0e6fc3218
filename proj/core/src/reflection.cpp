#include "ildepth/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ildepth/locality.hpp"
#include "ildepth/parallel.hpp"
#include "ildepth/spatial_depth.hpp"

namespace ild {

ReflectionContext::ReflectionContext(const Dataset& X, int threads) : data_(&X) {
  if (X.empty()) throw std::invalid_argument("reflection: empty sample");
  std::size_t n = X.size();
  std::size_t d = X.dim();
  base_sum_.assign(n * d, 0.0);
  base_count_.assign(n, 0);
  parallel_for(0, n, threads, [&](std::size_t q) {
    UnitVectorAccumulator acc(d);
    auto xq = X.point(q);
    for (std::size_t i = 0; i < n; ++i) acc.add_skipping(xq, X.point(i));
    std::copy(acc.sum().begin(), acc.sum().end(), base_sum_.begin() + q * d);
    base_count_[q] = static_cast<std::uint32_t>(acc.count());
  });
}

ReflectedDepthRow ReflectionContext::row(std::span<const double> center,
                                         std::int64_t center_id) const {
  const Dataset& X = *data_;
  std::size_t n = X.size();
  std::size_t d = X.dim();
  if (center.size() != d)
    throw std::invalid_argument("reflection: center has dimension " +
                                std::to_string(center.size()) + ", sample has " +
                                std::to_string(d));
  for (double c : center)
    if (!std::isfinite(c)) throw std::invalid_argument("reflection: non-finite center");

  ReflectedDepthRow out;
  out.center_id = center_id;
  out.depths.resize(n);

  // The reflection of X[j] through the center, built with the same operations
  // a materialized reflected sample would use, so depths agree exactly.
  std::vector<double> refl(n * d);
  for (std::size_t j = 0; j < n; ++j) {
    auto xj = X.point(j);
    for (std::size_t k = 0; k < d; ++k) refl[j * d + k] = 2.0 * center[k] - xj[k];
  }

  UnitVectorAccumulator acc(d);
  for (std::size_t q = 0; q < n; ++q) {
    auto xq = X.point(q);
    acc.reset();
    for (std::size_t j = 0; j < n; ++j)
      acc.add_skipping(xq, {refl.data() + j * d, d});
    double s = 0.0;
    auto base = std::span<const double>(base_sum_.data() + q * d, d);
    for (std::size_t k = 0; k < d; ++k) {
      double c = base[k] + acc.sum()[k];
      s += c * c;
    }
    std::size_t terms = base_count_[q] + acc.count();
    out.depths[q] = terms == 0 ? 1.0 : 1.0 - std::sqrt(s) / static_cast<double>(terms);
  }

  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0u);
  std::vector<double> dist(n);
  for (std::size_t q = 0; q < n; ++q) dist[q] = euclidean(X.point(q), center);
  std::sort(out.order.begin(), out.order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (out.depths[a] != out.depths[b]) return out.depths[a] > out.depths[b];
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return X.id(a) < X.id(b);
  });
  return out;
}

ReflectedDepthRow reflected_depth_row(std::span<const double> center, const Dataset& X) {
  return ReflectionContext(X, 1).row(center);
}

Neighborhood beta_neighborhood(const ReflectedDepthRow& row, double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("neighborhood: locality must lie in (0, 1], got " +
                                std::to_string(beta));
  std::size_t n = row.order.size();
  std::size_t m = ceil_count(n, beta);
  Neighborhood nb;
  nb.center_id = row.center_id;
  nb.beta = beta;
  nb.members.assign(row.order.begin(), row.order.begin() + static_cast<std::ptrdiff_t>(m));
  return nb;
}

SquareMatrix reflected_similarity_matrix(const Dataset& X, int threads) {
  ReflectionContext ctx(X, threads);
  std::size_t n = X.size();
  SquareMatrix S(n);
  parallel_for(0, n, threads, [&](std::size_t i) {
    ReflectedDepthRow r = ctx.row(X.point(i), X.id(i));
    std::copy(r.depths.begin(), r.depths.end(), S.row(i).begin());
  });
  return S;
}

}  // namespace ild
