#pragma once

#include <cstdint>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/local_depth.hpp"
#include "ildepth/locality.hpp"
#include "ildepth/matrix.hpp"

namespace ild {

// Everything about a sample's partitioned integrated local depth that does
// not depend on the integration weights: per-center neighborhood ranks and
// level-depth profiles. Assembling the matrix for any weight choice is then
// cheap, which is what parameter sweeps lean on.
struct PildPlan {
  LocalityGrid grid;
  std::vector<std::int64_t> ids;
  // rank[i * n + j] is the 1-based position of point j in the ranking around
  // center i; the center ranks first unless an exact duplicate with a smaller
  // id precedes it.
  std::vector<std::uint32_t> rank;
  std::vector<DepthProfile> profiles;

  std::size_t size() const { return ids.size(); }
  std::uint32_t rank_of(std::size_t center, std::size_t j) const {
    return rank[center * ids.size() + j];
  }
};

PildPlan make_pild_plan(const Dataset& X, std::size_t n0 = 3, int threads = 0);

// Row i splits the integrated local depth of center i over the sample: entry
// (i, j) collects, across grid levels weighted by w, the share of center i's
// level depth attributed to point j when j is inside the level neighborhood.
// Rows therefore sum back to the center's integrated depth, and entries fade
// to zero for points outside the widest weighted neighborhood.
struct PildMatrix {
  std::vector<std::int64_t> ids;
  SquareMatrix entries;
  LocalityGrid grid;
  std::vector<double> weights;   // resolved per level
  std::vector<double> row_sums;  // integrated local depth of each center
};

PildMatrix pild_matrix(const PildPlan& plan, const WeightSpec& weights);
PildMatrix pild_matrix(const Dataset& X, const WeightSpec& weights, std::size_t n0 = 3,
                       int threads = 0);

// Column sums: how much depth mass the sample as a whole assigns to each
// point. Low totals mark points that rarely sit in anyone's neighborhood.
std::vector<double> column_centrality(const PildMatrix& M);

// Entries rescaled by each row's self-affinity, then symmetrized with the
// elementwise minimum. Unit diagonal, values in [0, 1]. Throws
// std::runtime_error if some diagonal entry is zero.
SimilarityMatrix pild_similarity(const PildMatrix& M);

// Debug view: the 0/1 neighborhood membership at a single locality.
SquareMatrix neighborhood_indicator(const PildPlan& plan, double beta);

}  // namespace ild
