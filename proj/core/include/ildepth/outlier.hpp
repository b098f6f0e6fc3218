#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/matrix.hpp"
#include "ildepth/pild.hpp"

namespace ild {

// Depth-style outlyingness scores; smaller means more outlying.
enum class DepthScoreMethod { GlobalDepth, LocalDepth, IntegratedDepth, PildColumnSum };

// locality carries beta for LocalDepth and the integration upper edge for
// IntegratedDepth and PildColumnSum; GlobalDepth ignores it.
std::vector<double> depth_scores(const Dataset& X, DepthScoreMethod method,
                                 double locality = 1.0, std::size_t n0 = 3, int threads = 0);
// Same scores from a prebuilt plan, so several methods can share one pass.
std::vector<double> depth_scores_from_plan(const PildPlan& plan, DepthScoreMethod method,
                                           double locality = 1.0);

DissimilarityMatrix euclidean_dissimilarity(const Dataset& X);

// Elementwise-minimum symmetrization of an asymmetric affinity with values in
// [0, 1]; the diagonal is set to exactly 1.
SimilarityMatrix min_symmetrized(std::vector<std::int64_t> ids, const SquareMatrix& raw);

// d = 1 - s. Requires a valid similarity (unit diagonal, entries in [0, 1]).
DissimilarityMatrix depth_dissimilarity(const SimilarityMatrix& S);

void require_dissimilarity(const DissimilarityMatrix& D);

// Local outlier factor on a precomputed dissimilarity, with every k-distance
// tie included in the neighborhood. Scores near 1 mean inlier; larger means
// more outlying. Points whose neighborhood collapses to zero distance get
// score 1 by convention; their finite-density neighbors can score +inf.
std::vector<double> lof_scores(const DissimilarityMatrix& D, std::size_t k, int threads = 0);

enum class ScoreDirection { LowerIsOutlying, HigherIsOutlying };

struct OutlierReport {
  std::vector<double> scores;
  std::vector<std::uint32_t> flagged;  // positions, most outlying first
  double precision = -1.0;             // against truth; -1 when no truth given
};

// Flags the m most outlying points. Score ties resolve toward the smaller id
// (positions when ids are not given). truth marks real outliers with nonzero
// entries and enables the precision field.
OutlierReport rank_outliers(std::span<const double> scores, ScoreDirection direction,
                            std::size_t m, std::span<const std::int64_t> ids = {},
                            std::span<const std::uint8_t> truth = {});

// Precision when exactly as many points are flagged as the truth marks.
double precision_at_known_rate(std::span<const double> scores, ScoreDirection direction,
                               std::span<const std::uint8_t> truth,
                               std::span<const std::int64_t> ids = {});

}  // namespace ild
