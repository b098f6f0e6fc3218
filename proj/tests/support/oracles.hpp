#pragma once

// Brute-force reference implementations, written against the definitions and
// kept deliberately independent of the library's code paths: reflections are
// materialized, every neighborhood is rebuilt from scratch at every level,
// and nothing is cached or accumulated incrementally.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/matrix.hpp"

namespace oracle {

using Point = std::vector<double>;

inline std::vector<Point> to_points(const ild::Dataset& X) {
  std::vector<Point> pts(X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    pts[i].assign(X.point(i).begin(), X.point(i).end());
  return pts;
}

inline bool equal_point(const Point& a, const Point& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return false;
  return true;
}

inline double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// 1 - || mean of (z - x)/||z - x|| ||, coincident points skipped.
inline double spatial_depth(const Point& z, const std::vector<Point>& sample) {
  std::size_t d = z.size();
  std::vector<double> sum(d, 0.0);
  std::size_t used = 0;
  for (const Point& x : sample) {
    if (equal_point(z, x)) continue;
    double nrm = dist(z, x);
    for (std::size_t k = 0; k < d; ++k) sum[k] += (z[k] - x[k]) / nrm;
    ++used;
  }
  if (used == 0) return 1.0;
  double s = 0.0;
  for (double c : sum) s += c * c;
  return 1.0 - std::sqrt(s) / static_cast<double>(used);
}

// The sample joined with its pointwise reflection through the center.
inline std::vector<Point> reflected_sample(const Point& center, const std::vector<Point>& pts) {
  std::vector<Point> out = pts;
  for (const Point& x : pts) {
    Point y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = 2.0 * center[k] - x[k];
    out.push_back(std::move(y));
  }
  return out;
}

inline std::vector<double> reflected_depths(const Point& center, const std::vector<Point>& pts) {
  std::vector<Point> refl = reflected_sample(center, pts);
  std::vector<double> depths(pts.size());
  for (std::size_t q = 0; q < pts.size(); ++q) depths[q] = spatial_depth(pts[q], refl);
  return depths;
}

// Positions ranked deepest first; ties by distance to the center, then id.
inline std::vector<std::size_t> ranking(const Point& center, const std::vector<Point>& pts,
                                        const std::vector<std::int64_t>& ids) {
  std::vector<double> depths = reflected_depths(center, pts);
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (depths[a] != depths[b]) return depths[a] > depths[b];
    double da = dist(pts[a], center), db = dist(pts[b], center);
    if (da != db) return da < db;
    return ids[a] < ids[b];
  });
  return order;
}

inline std::size_t ceil_members(std::size_t n, double beta) {
  double r = static_cast<double>(n) * beta;
  double c = std::ceil(r - 1e-9);
  if (c < 1.0) return 1;
  if (c >= static_cast<double>(n)) return n;
  return static_cast<std::size_t>(c);
}

// Depth of z within its beta-neighborhood, the neighborhood rebuilt fresh.
inline double local_depth(const Point& z, const std::vector<Point>& pts,
                          const std::vector<std::int64_t>& ids, double beta, std::size_t n0) {
  std::vector<std::size_t> order = ranking(z, pts, ids);
  std::size_t m = std::clamp(ceil_members(pts.size(), beta), n0, pts.size());
  std::vector<Point> nbhd;
  for (std::size_t r = 0; r < m; ++r) nbhd.push_back(pts[order[r]]);
  return spatial_depth(z, nbhd);
}

// Level depths over the ladder (n0 + l) / n, one fresh neighborhood each.
inline std::vector<double> ld_curve(const Point& z, const std::vector<Point>& pts,
                                    const std::vector<std::int64_t>& ids, std::size_t n0) {
  std::size_t n = pts.size();
  std::vector<std::size_t> order = ranking(z, pts, ids);
  std::vector<double> ld;
  for (std::size_t m = n0; m <= n; ++m) {
    std::vector<Point> nbhd;
    for (std::size_t r = 0; r < m; ++r) nbhd.push_back(pts[order[r]]);
    ld.push_back(spatial_depth(z, nbhd));
  }
  return ld;
}

// Partitioned matrix straight from the definition: for every center, every
// level, rebuild the neighborhood, test membership, and add the share.
inline ild::SquareMatrix pild(const std::vector<Point>& pts, const std::vector<std::int64_t>& ids,
                              const std::vector<double>& weights, std::size_t n0) {
  std::size_t n = pts.size();
  ild::SquareMatrix M(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> order = ranking(pts[i], pts, ids);
    std::vector<double> ld = ld_curve(pts[i], pts, ids, n0);
    for (std::size_t l = 0; l < weights.size(); ++l) {
      std::size_t m = n0 + l;
      for (std::size_t r = 0; r < m; ++r)
        M.at(i, order[r]) += ld[l] * weights[l] / static_cast<double>(m);
    }
  }
  return M;
}

// Textbook LOF on a distance matrix: k-distance with ties included,
// reachability, local reachability density, then the factor itself.
inline std::vector<double> lof(const ild::SquareMatrix& D, std::size_t k) {
  std::size_t n = D.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::size_t>> nb(n);
  std::vector<double> kdist(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> ds;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) ds.push_back(D.at(i, j));
    std::sort(ds.begin(), ds.end());
    kdist[i] = ds[k - 1];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && D.at(i, j) <= kdist[i]) nb[i].push_back(j);
  }
  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t o : nb[i]) sum += std::max(kdist[o], D.at(i, o));
    lrd[i] = sum == 0.0 ? inf : static_cast<double>(nb[i].size()) / sum;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lrd[i] == inf) {
      out[i] = 1.0;
      continue;
    }
    double sum = 0.0;
    for (std::size_t o : nb[i]) sum += lrd[o];
    out[i] = sum / (static_cast<double>(nb[i].size()) * lrd[i]);
  }
  return out;
}

}  // namespace oracle
