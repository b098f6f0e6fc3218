#include "ildepth/outlier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ildepth/parallel.hpp"

namespace ild {

std::vector<double> depth_scores_from_plan(const PildPlan& plan, DepthScoreMethod method,
                                           double locality) {
  std::size_t n = plan.size();
  std::vector<double> s(n);
  switch (method) {
    case DepthScoreMethod::GlobalDepth:
      for (std::size_t i = 0; i < n; ++i) s[i] = plan.profiles[i].ld.back();
      break;
    case DepthScoreMethod::LocalDepth: {
      std::size_t level = plan.grid.level_for(locality);
      for (std::size_t i = 0; i < n; ++i) s[i] = plan.profiles[i].ld[level];
      break;
    }
    case DepthScoreMethod::IntegratedDepth: {
      std::size_t level = plan.grid.level_for(locality);
      for (std::size_t i = 0; i < n; ++i) s[i] = plan.profiles[i].ild[level];
      break;
    }
    case DepthScoreMethod::PildColumnSum: {
      PildMatrix M = pild_matrix(plan, WeightSpec::uniform(locality));
      s = column_centrality(M);
      break;
    }
  }
  return s;
}

std::vector<double> depth_scores(const Dataset& X, DepthScoreMethod method, double locality,
                                 std::size_t n0, int threads) {
  return depth_scores_from_plan(make_pild_plan(X, n0, threads), method, locality);
}

DissimilarityMatrix euclidean_dissimilarity(const Dataset& X) {
  std::size_t n = X.size();
  if (n == 0) throw std::invalid_argument("dissimilarity: empty sample");
  DissimilarityMatrix D;
  D.ids = X.ids();
  D.values = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = euclidean(X.point(i), X.point(j));
      D.values.at(i, j) = d;
      D.values.at(j, i) = d;
    }
  return D;
}

SimilarityMatrix min_symmetrized(std::vector<std::int64_t> ids, const SquareMatrix& raw) {
  std::size_t n = raw.size();
  if (ids.size() != n) throw std::invalid_argument("similarity: id count does not match matrix");
  SimilarityMatrix S;
  S.ids = std::move(ids);
  S.values = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    S.values.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double a = raw.at(i, j);
      double b = raw.at(j, i);
      if (!(a >= 0.0) || a > 1.0 || !(b >= 0.0) || b > 1.0)
        throw std::invalid_argument("similarity: entry outside [0, 1] at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      double s = std::min(a, b);
      S.values.at(i, j) = s;
      S.values.at(j, i) = s;
    }
  }
  return S;
}

DissimilarityMatrix depth_dissimilarity(const SimilarityMatrix& S) {
  std::size_t n = S.values.size();
  DissimilarityMatrix D;
  D.ids = S.ids;
  D.values = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (S.values.at(i, i) != 1.0)
      throw std::invalid_argument("similarity: diagonal entry " + std::to_string(i) +
                                  " is not 1");
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = S.values.at(i, j);
      if (!(s >= 0.0) || s > 1.0 || S.values.at(j, i) != s)
        throw std::invalid_argument("similarity: invalid entry at (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      double d = 1.0 - s;
      D.values.at(i, j) = d;
      D.values.at(j, i) = d;
    }
  }
  return D;
}

void require_dissimilarity(const DissimilarityMatrix& D) {
  std::size_t n = D.values.size();
  if (D.ids.size() != n)
    throw std::invalid_argument("dissimilarity: id count does not match matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (D.values.at(i, i) != 0.0)
      throw std::invalid_argument("dissimilarity: nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = D.values.at(i, j);
      if (!(d >= 0.0) || !std::isfinite(d) || D.values.at(j, i) != d)
        throw std::invalid_argument("dissimilarity: invalid entry at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
    }
  }
}

std::vector<double> lof_scores(const DissimilarityMatrix& D, std::size_t k, int threads) {
  require_dissimilarity(D);
  std::size_t n = D.values.size();
  if (n < 2) throw std::invalid_argument("lof: need at least 2 points");
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("lof: k must be in [1, n-1], got " + std::to_string(k));

  // Neighborhoods: everything within the k-distance, ties included.
  std::vector<std::vector<std::uint32_t>> nb(n);
  std::vector<double> kdist(n);
  parallel_for(0, n, threads, [&](std::size_t i) {
    std::vector<std::uint32_t> idx;
    idx.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) idx.push_back(static_cast<std::uint32_t>(j));
    auto row = D.values.row(i);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (row[a] != row[b]) return row[a] < row[b];
      return a < b;
    });
    kdist[i] = row[idx[k - 1]];
    std::size_t take = k;
    while (take < idx.size() && row[idx[take]] == kdist[i]) ++take;
    nb[i].assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
  });

  // Local reachability density; +inf when all reach distances vanish.
  std::vector<double> lrd(n);
  parallel_for(0, n, threads, [&](std::size_t i) {
    double sum = 0.0;
    for (std::uint32_t o : nb[i]) sum += std::max(kdist[o], D.values.at(i, o));
    lrd[i] = sum == 0.0 ? std::numeric_limits<double>::infinity()
                        : static_cast<double>(nb[i].size()) / sum;
  });

  std::vector<double> lof(n);
  parallel_for(0, n, threads, [&](std::size_t i) {
    if (std::isinf(lrd[i])) {
      // Zero-distance neighborhood: the point sits in a cluster of clones and
      // is as inlying as its clones, score 1.
      lof[i] = 1.0;
      return;
    }
    double sum = 0.0;
    for (std::uint32_t o : nb[i]) sum += lrd[o] / lrd[i];
    lof[i] = sum / static_cast<double>(nb[i].size());
  });
  return lof;
}

namespace {

std::vector<std::uint32_t> outlying_order(std::span<const double> scores,
                                          ScoreDirection direction,
                                          std::span<const std::int64_t> ids) {
  std::vector<std::uint32_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0u);
  bool lower = direction == ScoreDirection::LowerIsOutlying;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return lower ? scores[a] < scores[b] : scores[a] > scores[b];
    std::int64_t ia = ids.empty() ? static_cast<std::int64_t>(a) : ids[a];
    std::int64_t ib = ids.empty() ? static_cast<std::int64_t>(b) : ids[b];
    return ia < ib;
  });
  return order;
}

}  // namespace

OutlierReport rank_outliers(std::span<const double> scores, ScoreDirection direction,
                            std::size_t m, std::span<const std::int64_t> ids,
                            std::span<const std::uint8_t> truth) {
  if (m > scores.size())
    throw std::invalid_argument("outliers: cannot flag " + std::to_string(m) + " of " +
                                std::to_string(scores.size()) + " points");
  if (!ids.empty() && ids.size() != scores.size())
    throw std::invalid_argument("outliers: id count does not match scores");
  if (!truth.empty() && truth.size() != scores.size())
    throw std::invalid_argument("outliers: truth length does not match scores");
  for (double s : scores)
    if (std::isnan(s)) throw std::invalid_argument("outliers: NaN score");

  OutlierReport report;
  report.scores.assign(scores.begin(), scores.end());
  auto order = outlying_order(scores, direction, ids);
  report.flagged.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  if (!truth.empty() && m > 0) {
    std::size_t hit = 0;
    for (std::uint32_t p : report.flagged)
      if (truth[p] != 0) ++hit;
    report.precision = static_cast<double>(hit) / static_cast<double>(m);
  }
  return report;
}

double precision_at_known_rate(std::span<const double> scores, ScoreDirection direction,
                               std::span<const std::uint8_t> truth,
                               std::span<const std::int64_t> ids) {
  if (truth.size() != scores.size())
    throw std::invalid_argument("precision: truth length does not match scores");
  std::size_t m = 0;
  for (std::uint8_t t : truth)
    if (t != 0) ++m;
  if (m == 0) throw std::invalid_argument("precision: truth marks no outliers");
  return rank_outliers(scores, direction, m, ids, truth).precision;
}

}  // namespace ild
