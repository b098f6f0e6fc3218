#include "ildepth/pild.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ildepth/parallel.hpp"
#include "ildepth/reflection.hpp"

namespace ild {

PildPlan make_pild_plan(const Dataset& X, std::size_t n0, int threads) {
  std::size_t n = X.size();
  if (n == 0) throw std::invalid_argument("pild: empty sample");
  PildPlan plan;
  plan.grid = make_grid(n, n0);
  plan.ids = X.ids();
  plan.rank.assign(n * n, 0);
  plan.profiles.resize(n);

  ReflectionContext ctx(X, threads);
  parallel_for(0, n, threads, [&](std::size_t i) {
    ReflectedDepthRow row = ctx.row(X.point(i), X.id(i));
    for (std::size_t r = 0; r < n; ++r)
      plan.rank[i * n + row.order[r]] = static_cast<std::uint32_t>(r + 1);
    plan.profiles[i] = profile_from_row(row, X, X.point(i), plan.grid);
  });
  return plan;
}

PildMatrix pild_matrix(const PildPlan& plan, const WeightSpec& weights) {
  std::size_t n = plan.size();
  std::size_t b = plan.grid.level_count();
  std::size_t n0 = plan.grid.n0;

  PildMatrix M;
  M.ids = plan.ids;
  M.grid = plan.grid;
  M.weights = resolve_weights(weights, plan.grid);
  M.entries = SquareMatrix(n);
  M.row_sums.resize(n);

  // Entry (i, j) sums ld[l] * w[l] / |N_l| over the levels whose neighborhood
  // contains j, i.e. levels with n0 + l >= rank(i, j). That depends on j only
  // through its rank, so one suffix-sum pass per row covers every column.
  std::vector<double> suffix(b + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const DepthProfile& p = plan.profiles[i];
    suffix[b] = 0.0;
    for (std::size_t l = b; l-- > 0;)
      suffix[l] = suffix[l + 1] +
                  p.ld[l] * M.weights[l] / static_cast<double>(plan.grid.member_count(l));
    auto row = M.entries.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t r = plan.rank_of(i, j);
      std::size_t first = r <= n0 ? 0 : static_cast<std::size_t>(r - n0);
      row[j] = suffix[first];
    }
    M.row_sums[i] = sild_from_profile(p, M.weights);
  }
  return M;
}

PildMatrix pild_matrix(const Dataset& X, const WeightSpec& weights, std::size_t n0, int threads) {
  return pild_matrix(make_pild_plan(X, n0, threads), weights);
}

std::vector<double> column_centrality(const PildMatrix& M) {
  std::size_t n = M.entries.size();
  std::vector<double> col(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = M.entries.row(i);
    for (std::size_t j = 0; j < n; ++j) col[j] += row[j];
  }
  return col;
}

SimilarityMatrix pild_similarity(const PildMatrix& M) {
  std::size_t n = M.entries.size();
  SimilarityMatrix S;
  S.ids = M.ids;
  S.values = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    if (M.entries.at(i, i) == 0.0)
      throw std::runtime_error("pild similarity: zero self-affinity for point id " +
                               std::to_string(M.ids[i]) +
                               "; its level depths vanish everywhere the weights act");
  for (std::size_t i = 0; i < n; ++i) {
    S.values.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double a = M.entries.at(i, j) / M.entries.at(i, i);
      double b = M.entries.at(j, i) / M.entries.at(j, j);
      double s = std::min(a, b);
      S.values.at(i, j) = s;
      S.values.at(j, i) = s;
    }
  }
  return S;
}

SquareMatrix neighborhood_indicator(const PildPlan& plan, double beta) {
  std::size_t n = plan.size();
  std::size_t m = ceil_count(n, beta);
  SquareMatrix I(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      I.at(i, j) = plan.rank_of(i, j) <= m ? 1.0 : 0.0;
  return I;
}

}  // namespace ild
