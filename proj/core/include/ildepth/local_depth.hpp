#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/locality.hpp"
#include "ildepth/reflection.hpp"

namespace ild {

// Local depth of one query across every grid level, plus the uniform-weight
// integrated curve. ld[i] is the depth of the query within its (n0 + i)-point
// neighborhood; ild[i] is the mean of ld[0..i], which is the integrated local
// depth with uniform weight over localities up to level i.
struct DepthProfile {
  std::int64_t point_id = -1;
  std::vector<double> ld;
  std::vector<double> ild;
  double delta = 0.0;         // largest |ld[i] - ld[i-1]|
  double delta_dagger = 0.0;  // largest pairwise spread, max(ld) - min(ld)
};

// Builds the profile from an already computed reflected row. The accumulator
// runs once over the ranked points, so the full curve costs O(n d) on top of
// the row.
DepthProfile profile_from_row(const ReflectedDepthRow& row, const Dataset& X,
                              std::span<const double> z, const LocalityGrid& grid);

DepthProfile ld_profile(std::span<const double> z, const Dataset& X, const LocalityGrid& grid,
                        std::int64_t point_id = -1);
DepthProfile ld_profile(const ReflectionContext& ctx, std::span<const double> z,
                        const LocalityGrid& grid, std::int64_t point_id = -1);

// Local depth at a single locality: depth of z within its ceil(n*beta)-point
// neighborhood, floored at n0 members.
double local_depth(std::span<const double> z, const Dataset& X, double beta, std::size_t n0 = 3);

// Weighted mix of the profile's level depths. Weights must be resolved for
// the same grid the profile was built on.
double sild_from_profile(const DepthProfile& profile, std::span<const double> weights);
double sild(std::span<const double> z, const Dataset& X, const WeightSpec& weights,
            std::size_t n0 = 3);

// How the integrated curve smooths the level curve: adjacent moves of the
// integrated curve are bounded by half the largest level jump, and the move
// into level i (1-based) by the total spread over i.
struct SmoothingDiagnostics {
  double delta = 0.0;
  double delta_dagger = 0.0;
  double max_ild_jump = 0.0;
  double adjacent_margin = 0.0;   // max_ild_jump - delta/2, pass when <= tol
  double per_level_margin = 0.0;  // worst |jump_i| - delta_dagger/i, pass when <= tol
  bool adjacent_bound_holds = false;
  bool per_level_bound_holds = false;
};

SmoothingDiagnostics smoothing_check(const DepthProfile& profile, double tol = 1e-12);

}  // namespace ild
