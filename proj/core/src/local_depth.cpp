#include "ildepth/local_depth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ildepth/spatial_depth.hpp"

namespace ild {

DepthProfile profile_from_row(const ReflectedDepthRow& row, const Dataset& X,
                              std::span<const double> z, const LocalityGrid& grid) {
  if (grid.n != X.size())
    throw std::invalid_argument("profile: grid built for n = " + std::to_string(grid.n) +
                                ", sample has " + std::to_string(X.size()));
  DepthProfile p;
  p.point_id = row.center_id;
  std::size_t b = grid.level_count();
  p.ld.resize(b);
  p.ild.resize(b);

  UnitVectorAccumulator acc(X.dim());
  std::size_t next = 0;
  for (std::size_t l = 0; l < b; ++l) {
    std::size_t m = grid.member_count(l);
    while (next < m) acc.add_skipping(z, X.point(row.order[next++]));
    p.ld[l] = acc.depth();
  }

  double run = 0.0;
  double lo = p.ld[0], hi = p.ld[0];
  for (std::size_t l = 0; l < b; ++l) {
    run += p.ld[l];
    p.ild[l] = run / static_cast<double>(l + 1);
    if (l > 0) p.delta = std::max(p.delta, std::fabs(p.ld[l] - p.ld[l - 1]));
    lo = std::min(lo, p.ld[l]);
    hi = std::max(hi, p.ld[l]);
  }
  p.delta_dagger = hi - lo;
  return p;
}

DepthProfile ld_profile(const ReflectionContext& ctx, std::span<const double> z,
                        const LocalityGrid& grid, std::int64_t point_id) {
  ReflectedDepthRow row = ctx.row(z, point_id);
  return profile_from_row(row, ctx.data(), z, grid);
}

DepthProfile ld_profile(std::span<const double> z, const Dataset& X, const LocalityGrid& grid,
                        std::int64_t point_id) {
  ReflectionContext ctx(X, 1);
  return ld_profile(ctx, z, grid, point_id);
}

double local_depth(std::span<const double> z, const Dataset& X, double beta, std::size_t n0) {
  std::size_t n = X.size();
  if (n0 < 1 || n0 > n)
    throw std::invalid_argument("local depth: n0 must be in [1, n]");
  ReflectedDepthRow row = reflected_depth_row(z, X);
  std::size_t m = std::clamp(ceil_count(n, beta), n0, n);
  UnitVectorAccumulator acc(X.dim());
  for (std::size_t r = 0; r < m; ++r) acc.add_skipping(z, X.point(row.order[r]));
  return acc.depth();
}

double sild_from_profile(const DepthProfile& profile, std::span<const double> weights) {
  if (weights.size() != profile.ld.size())
    throw std::invalid_argument("sild: " + std::to_string(weights.size()) + " weights for " +
                                std::to_string(profile.ld.size()) + " grid levels");
  double s = 0.0;
  for (std::size_t l = 0; l < weights.size(); ++l) s += weights[l] * profile.ld[l];
  return s;
}

double sild(std::span<const double> z, const Dataset& X, const WeightSpec& weights,
            std::size_t n0) {
  LocalityGrid grid = make_grid(X.size(), n0);
  std::vector<double> w = resolve_weights(weights, grid);
  DepthProfile p = ld_profile(z, X, grid);
  return sild_from_profile(p, w);
}

SmoothingDiagnostics smoothing_check(const DepthProfile& profile, double tol) {
  SmoothingDiagnostics d;
  d.delta = profile.delta;
  d.delta_dagger = profile.delta_dagger;
  double worst_per_level = -1.0;
  for (std::size_t l = 1; l < profile.ild.size(); ++l) {
    double jump = std::fabs(profile.ild[l] - profile.ild[l - 1]);
    d.max_ild_jump = std::max(d.max_ild_jump, jump);
    // Level l is 1-based index l + 1 in the ladder.
    double bound = profile.delta_dagger / static_cast<double>(l + 1);
    worst_per_level = std::max(worst_per_level, jump - bound);
  }
  d.adjacent_margin = d.max_ild_jump - d.delta / 2.0;
  d.per_level_margin = profile.ild.size() > 1 ? worst_per_level : 0.0;
  d.adjacent_bound_holds = d.adjacent_margin <= tol;
  d.per_level_bound_holds = d.per_level_margin <= tol;
  return d;
}

}  // namespace ild
