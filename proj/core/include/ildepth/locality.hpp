#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ild {

// ceil(n * beta) with a guard against floating error: values within 1e-9 of
// an integer round to it instead of ceiling past it. Clamped to [1, n].
std::size_t ceil_count(std::size_t n, double beta);

// The finite ladder of locality levels used by integrated local depth for a
// sample of size n. Level i (0-based) has locality (n0 + i) / n, so each step
// admits exactly one more sample point into the neighborhood. The last level
// is 1 (the whole sample). beta0 = (n0 - 1) / n is the open lower edge of the
// ladder: integration weight never sits at or below it.
struct LocalityGrid {
  std::size_t n = 0;
  std::size_t n0 = 0;
  double beta0 = 0.0;
  std::vector<double> levels;

  std::size_t level_count() const { return levels.size(); }
  // Neighborhood size at a level; equals ceil(n * levels[level]).
  std::size_t member_count(std::size_t level) const { return n0 + level; }
  // Index of the level whose half-open cell (levels[i-1], levels[i]] contains
  // beta; values at or below beta0 map to level 0, values above 1 to the top.
  std::size_t level_for(double beta) const;
};

// Requires 1 <= n0 <= n.
LocalityGrid make_grid(std::size_t n, std::size_t n0 = 3);

// How integration mass is spread over grid levels.
//
//   uniform(B0, B1]  mass proportional to the overlap of each grid cell with
//                    (B0, B1]; B0 defaults to the grid's beta0 ("auto"), and
//                    a B0 below beta0 is clamped up to it.
//   degenerate(B)    all mass on the level whose cell contains B; plain local
//                    depth at that locality.
//   custom           caller-provided nonnegative level masses, normalized.
struct WeightSpec {
  enum class Kind { Uniform, Degenerate, Custom };

  Kind kind = Kind::Uniform;
  std::optional<double> b0;   // uniform lower edge; empty means auto
  double b1 = 1.0;            // uniform upper edge
  double at = 1.0;            // degenerate locality
  std::vector<double> raw;    // custom masses, one per level

  static WeightSpec uniform(double b1);
  static WeightSpec uniform(double b0, double b1);
  static WeightSpec full() { return uniform(1.0); }
  static WeightSpec degenerate(double b);
  static WeightSpec custom(std::vector<double> masses);
};

// Per-level weights summing to 1. Throws std::invalid_argument when the spec
// is out of range for the grid (empty uniform window, custom length mismatch,
// negative or all-zero custom masses).
std::vector<double> resolve_weights(const WeightSpec& spec, const LocalityGrid& grid);

// Accepted forms: "uniform:B0,B1" (B0 may be "auto"), "uniform:B1", "full",
// "point:B", "file:PATH" (one mass per line, optionally "level,mass").
WeightSpec parse_weight_spec(const std::string& text);

std::string to_string(const WeightSpec& spec);

}  // namespace ild
