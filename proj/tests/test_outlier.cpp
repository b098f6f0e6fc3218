#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ildepth/outlier.hpp"
#include "ildepth/rng.hpp"
#include "support/oracles.hpp"
#include "support/random_data.hpp"

using namespace ild;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DissimilarityMatrix grid_dissimilarity(std::size_t side) {
  Dataset X(2);
  std::int64_t id = 0;
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c)
      X.add({static_cast<double>(c), static_cast<double>(r)}, id++);
  return euclidean_dissimilarity(X);
}

}  // namespace

TEST_CASE("factor scores match the textbook recipe") {
  Rng rng(501);
  for (int rep = 0; rep < 12; ++rep) {
    std::size_t n = 8 + rng.index(20);
    Dataset X = testsupport::random_dataset(rng, n, 2);
    DissimilarityMatrix D = euclidean_dissimilarity(X);
    std::size_t k = 1 + rng.index(n - 2);
    std::vector<double> got = lof_scores(D, k);
    std::vector<double> want = oracle::lof(D.values, k);
    REQUIRE(got.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("deep interior of a regular grid scores exactly 1") {
  // Every interior point of a unit grid shares the same 4-neighbor geometry,
  // so reachability densities cancel and the factor is 1.
  DissimilarityMatrix D = grid_dissimilarity(10);
  std::vector<double> lof = lof_scores(D, 4);
  std::size_t interior = 0;
  for (std::size_t r = 3; r <= 6; ++r) {
    for (std::size_t c = 3; c <= 6; ++c) {
      CHECK(lof[r * 10 + c] == doctest::Approx(1.0).epsilon(1e-12));
      ++interior;
    }
  }
  CHECK(interior == 16);
  // Corners see a sparser neighborhood and score above 1.
  CHECK(lof[0] > 1.02);
}

TEST_CASE("k-distance ties pull in the whole shell") {
  // With k = 3 every interior grid point has four equidistant neighbors; the
  // neighborhood must keep all four or densities would depend on tie order.
  DissimilarityMatrix D = grid_dissimilarity(10);
  std::vector<double> k3 = lof_scores(D, 3);
  std::vector<double> k4 = lof_scores(D, 4);
  for (std::size_t r = 3; r <= 6; ++r)
    for (std::size_t c = 3; c <= 6; ++c)
      CHECK(k3[r * 10 + c] == doctest::Approx(k4[r * 10 + c]).epsilon(1e-12));
}

TEST_CASE("duplicate points follow the zero-distance conventions") {
  Dataset X(2);
  X.add({0.0, 0.0}, 0);
  X.add({0.0, 0.0}, 1);
  X.add({0.0, 0.0}, 2);
  X.add({5.0, 0.0}, 3);
  X.add({5.5, 0.2}, 4);
  DissimilarityMatrix D = euclidean_dissimilarity(X);
  std::vector<double> lof = lof_scores(D, 2);
  // The coincident triple has zero reachability sums: score 1 by convention.
  CHECK(lof[0] == 1.0);
  CHECK(lof[1] == 1.0);
  CHECK(lof[2] == 1.0);
  // A finite-density point whose neighbors include the collapsed cluster
  // inherits an infinite ratio.
  std::vector<double> want = oracle::lof(D.values, 2);
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (std::isinf(want[i]))
      CHECK(lof[i] == kInf);
    else
      CHECK(lof[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("lof rejects out-of-range neighbor counts") {
  DissimilarityMatrix D = grid_dissimilarity(3);
  CHECK_THROWS_AS(lof_scores(D, 0), std::invalid_argument);
  CHECK_THROWS_AS(lof_scores(D, 9), std::invalid_argument);
  CHECK(lof_scores(D, 8).size() == 9);
}

TEST_CASE("lof is thread-count invariant") {
  Rng rng(503);
  Dataset X = testsupport::random_dataset_with_duplicates(rng, 40, 2);
  DissimilarityMatrix D = euclidean_dissimilarity(X);
  CHECK(lof_scores(D, 5, 1) == lof_scores(D, 5, 8));
}

TEST_CASE("depth scores: the global method is the top of the local ladder") {
  Rng rng(507);
  Dataset X = testsupport::random_dataset(rng, 30, 2);
  PildPlan plan = make_pild_plan(X);
  std::vector<double> gd = depth_scores_from_plan(plan, DepthScoreMethod::GlobalDepth);
  std::vector<double> ld1 = depth_scores_from_plan(plan, DepthScoreMethod::LocalDepth, 1.0);
  std::vector<double> ild1 = depth_scores_from_plan(plan, DepthScoreMethod::IntegratedDepth, 1.0);
  CHECK(gd == ld1);  // identical code path, bit for bit
  for (std::size_t i = 0; i < X.size(); ++i) {
    CHECK(gd[i] == plan.profiles[i].ld.back());
    CHECK(ild1[i] == plan.profiles[i].ild.back());
  }
  std::vector<double> from_x = depth_scores(X, DepthScoreMethod::GlobalDepth);
  CHECK(from_x == gd);
}

TEST_CASE("depth scores: column sums agree with the assembled matrix") {
  Rng rng(509);
  Dataset X = testsupport::random_dataset(rng, 20, 2);
  PildPlan plan = make_pild_plan(X);
  double b = 0.6;
  std::vector<double> got = depth_scores_from_plan(plan, DepthScoreMethod::PildColumnSum, b);
  std::vector<double> want = column_centrality(pild_matrix(plan, WeightSpec::uniform(b)));
  CHECK(got == want);
}

TEST_CASE("a far point scores low on every depth method") {
  Rng rng(511);
  Dataset X = testsupport::random_dataset(rng, 25, 2);
  X.add({50.0, -40.0}, 1000);
  std::size_t last = X.size() - 1;
  for (DepthScoreMethod m :
       {DepthScoreMethod::GlobalDepth, DepthScoreMethod::LocalDepth,
        DepthScoreMethod::IntegratedDepth, DepthScoreMethod::PildColumnSum}) {
    std::vector<double> s = depth_scores(X, m, 0.5);
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] < s[argmin]) argmin = i;
    CHECK(argmin == last);
  }
}

TEST_CASE("similarity plumbing: symmetrize, validate, flip to dissimilarity") {
  SquareMatrix raw(3);
  raw.at(0, 0) = 0.999999999;  // diagonal gets forced to exactly 1
  raw.at(1, 1) = 1.0;
  raw.at(2, 2) = 1.0;
  raw.at(0, 1) = 0.8;
  raw.at(1, 0) = 0.6;
  raw.at(0, 2) = 0.1;
  raw.at(2, 0) = 0.3;
  raw.at(1, 2) = 0.5;
  raw.at(2, 1) = 0.5;
  SimilarityMatrix S = min_symmetrized({7, 8, 9}, raw);
  CHECK(S.values.at(0, 0) == 1.0);
  CHECK(S.values.at(0, 1) == 0.6);
  CHECK(S.values.at(1, 0) == 0.6);
  CHECK(S.values.at(0, 2) == 0.1);
  CHECK(S.ids == std::vector<std::int64_t>{7, 8, 9});

  DissimilarityMatrix D = depth_dissimilarity(S);
  CHECK(D.values.at(0, 1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(D.values.at(0, 0) == 0.0);
  require_dissimilarity(D);

  SquareMatrix bad(2);
  bad.at(0, 1) = 1.5;
  bad.at(1, 0) = 0.5;
  bad.at(0, 0) = bad.at(1, 1) = 1.0;
  CHECK_THROWS_AS(min_symmetrized({0, 1}, bad), std::invalid_argument);
}

TEST_CASE("ranking outliers: direction, ties, and precision") {
  std::vector<double> scores = {0.9, 0.1, 0.5, 0.1, 0.3};
  std::vector<std::int64_t> ids = {10, 11, 12, 13, 14};
  std::vector<std::uint8_t> truth = {0, 1, 0, 0, 1};

  SUBCASE("lower is outlying") {
    OutlierReport r = rank_outliers(scores, ScoreDirection::LowerIsOutlying, 2, ids, truth);
    REQUIRE(r.flagged.size() == 2);
    CHECK(r.flagged[0] == 1);  // score ties at 0.1 resolve to the smaller id
    CHECK(r.flagged[1] == 3);
    CHECK(r.precision == doctest::Approx(0.5));
  }
  SUBCASE("higher is outlying") {
    OutlierReport r = rank_outliers(scores, ScoreDirection::HigherIsOutlying, 2, ids, truth);
    CHECK(r.flagged[0] == 0);
    CHECK(r.flagged[1] == 2);
    CHECK(r.precision == 0.0);
  }
  SUBCASE("no truth leaves precision unset") {
    OutlierReport r = rank_outliers(scores, ScoreDirection::LowerIsOutlying, 1, ids);
    CHECK(r.precision == -1.0);
  }
  SUBCASE("known-rate precision flags as many as the truth marks") {
    double p = precision_at_known_rate(scores, ScoreDirection::LowerIsOutlying, truth, ids);
    CHECK(p == doctest::Approx(0.5));  // flags 0.1(id 11) and 0.1(id 13); one is true
  }
  SUBCASE("flagging nothing is allowed and leaves precision unset") {
    OutlierReport r = rank_outliers(scores, ScoreDirection::LowerIsOutlying, 0, ids, truth);
    CHECK(r.flagged.empty());
    CHECK(r.precision == -1.0);
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(rank_outliers(scores, ScoreDirection::LowerIsOutlying, 9, ids, truth),
                    std::invalid_argument);
    std::vector<double> nan_scores = {0.1, std::nan("")};
    CHECK_THROWS_AS(rank_outliers(nan_scores, ScoreDirection::LowerIsOutlying, 1),
                    std::invalid_argument);
    std::vector<std::uint8_t> clean(scores.size(), 0);
    CHECK_THROWS_AS(precision_at_known_rate(scores, ScoreDirection::LowerIsOutlying, clean, ids),
                    std::invalid_argument);
  }
}

TEST_CASE("infinite factor scores rank ahead of every finite score") {
  std::vector<double> scores = {1.0, kInf, 2.0, 1.1};
  OutlierReport r = rank_outliers(scores, ScoreDirection::HigherIsOutlying, 2);
  CHECK(r.flagged[0] == 1);
  CHECK(r.flagged[1] == 2);
}
