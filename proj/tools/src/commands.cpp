#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ildepth/classify.hpp"
#include "ildepth/csv.hpp"
#include "ildepth/dataset.hpp"
#include "ildepth/local_depth.hpp"
#include "ildepth/locality.hpp"
#include "ildepth/outlier.hpp"
#include "ildepth/parallel.hpp"
#include "ildepth/pild.hpp"
#include "ildepth/reflection.hpp"
#include "ildepth/rng.hpp"
#include "ildepth/simdata.hpp"

namespace ildcli {

using namespace ild;
using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  return out;
}

void write_lines(const std::string& path, const std::string& header,
                 const std::vector<std::string>& rows) {
  std::ofstream out = open_out(path);
  out << header << '\n';
  for (const std::string& r : rows) out << r << '\n';
  if (!out) throw std::invalid_argument("write to '" + path + "' failed");
}

ClassifierKind parse_classifier(const std::string& m) {
  if (m == "md") return ClassifierKind::MaxDepth;
  if (m == "ld") return ClassifierKind::MaxLd;
  if (m == "ild") return ClassifierKind::MaxIld;
  if (m == "dknn") return ClassifierKind::DKnn;
  if (m == "pild") return ClassifierKind::PildAvg;
  throw std::invalid_argument("unknown classifier '" + m +
                              "' (expected md, ld, ild, dknn, or pild)");
}

ClassifierSpec spec_for(ClassifierKind kind, double param) {
  switch (kind) {
    case ClassifierKind::MaxDepth:
      return ClassifierSpec::max_depth();
    case ClassifierKind::MaxLd:
      return ClassifierSpec::max_ld(param);
    case ClassifierKind::MaxIld:
      return ClassifierSpec::max_ild(param);
    case ClassifierKind::DKnn: {
      if (param < 1.0 || param != std::floor(param))
        throw std::invalid_argument("dknn parameter must be a positive integer");
      return ClassifierSpec::dknn(static_cast<std::size_t>(param));
    }
    default:
      return ClassifierSpec::pild_avg(param);
  }
}

// Dissimilarity for LOF-style methods: plain distances or one of the two
// depth-derived matrices.
DissimilarityMatrix dissimilarity_for(const std::string& kind, const Dataset& X,
                                      const WeightSpec& spec, std::size_t n0,
                                      int threads) {
  if (kind == "euclid") return euclidean_dissimilarity(X);
  if (kind == "sd")
    return depth_dissimilarity(min_symmetrized(X.ids(), reflected_similarity_matrix(X, threads)));
  if (kind == "pild")
    return depth_dissimilarity(pild_similarity(pild_matrix(X, spec, n0, threads)));
  throw std::invalid_argument("unknown dissimilarity '" + kind +
                              "' (expected euclid, sd, or pild)");
}

std::string num(double v) { return format_number(v); }

}  // namespace

void run_depth(const DepthOpts& o, RunContext& ctx) {
  Dataset X = read_dataset_csv(o.data);
  WeightSpec spec = parse_weight_spec(o.weights);
  LocalityGrid grid = make_grid(X.size(), o.n0);
  std::vector<double> w = resolve_weights(spec, grid);

  bool self = o.query.empty();
  Dataset Q = self ? Dataset() : read_dataset_csv(o.query);
  const Dataset& eval = self ? X : Q;

  ReflectionContext rctx(X, ctx.threads);
  std::vector<DepthProfile> profiles(eval.size());
  std::vector<double> silds(eval.size());
  parallel_for(std::size_t{0}, eval.size(), ctx.threads, [&](std::size_t i) {
    profiles[i] = ld_profile(rctx, eval.point(i), grid, self ? X.id(i) : eval.id(i));
    silds[i] = sild_from_profile(profiles[i], w);
  });

  std::string header = "id,sild";
  for (std::size_t l = 0; l < grid.level_count(); ++l)
    header += ",ld" + std::to_string(grid.member_count(l));
  std::vector<std::string> rows(eval.size());
  for (std::size_t i = 0; i < eval.size(); ++i) {
    std::string row = std::to_string(eval.id(i)) + ',' + num(silds[i]);
    for (double v : profiles[i].ld) row += ',' + num(v);
    rows[i] = std::move(row);
  }
  write_lines(o.out, header, rows);

  ctx.parameters = {{"data", o.data},
                    {"query", self ? json() : json(o.query)},
                    {"weights", to_string(spec)},
                    {"n0", o.n0}};
  ctx.results = {{"points", eval.size()}, {"levels", grid.level_count()}};
  ctx.outputs.push_back(o.out);
}

void run_pild(const PildOpts& o, RunContext& ctx) {
  Dataset X = read_dataset_csv(o.data);
  WeightSpec spec = parse_weight_spec(o.weights);
  PildMatrix M = pild_matrix(X, spec, o.n0, ctx.threads);
  write_matrix_csv(o.out, M.ids, M.entries);
  ctx.outputs.push_back(o.out);

  if (!o.colsums.empty()) {
    std::vector<double> cols = column_centrality(M);
    std::vector<std::string> rows(M.ids.size());
    for (std::size_t i = 0; i < M.ids.size(); ++i)
      rows[i] = std::to_string(M.ids[i]) + ',' + num(cols[i]);
    write_lines(o.colsums, "id,column_sum", rows);
    ctx.outputs.push_back(o.colsums);
  }
  if (!o.rowsums.empty()) {
    std::vector<std::string> rows(M.ids.size());
    for (std::size_t i = 0; i < M.ids.size(); ++i)
      rows[i] = std::to_string(M.ids[i]) + ',' + num(M.row_sums[i]);
    write_lines(o.rowsums, "id,sild", rows);
    ctx.outputs.push_back(o.rowsums);
  }

  ctx.parameters = {{"data", o.data}, {"weights", to_string(spec)}, {"n0", o.n0}};
  ctx.results = {{"points", M.ids.size()}, {"levels", M.grid.level_count()}};
}

void run_similarity(const SimilarityOpts& o, RunContext& ctx) {
  Dataset X = read_dataset_csv(o.data);
  SimilarityMatrix S;
  if (o.kind == "sd") {
    S = min_symmetrized(X.ids(), reflected_similarity_matrix(X, ctx.threads));
  } else if (o.kind == "pild") {
    WeightSpec spec = parse_weight_spec(o.weights);
    S = pild_similarity(pild_matrix(X, spec, o.n0, ctx.threads));
  } else {
    throw std::invalid_argument("unknown similarity kind '" + o.kind +
                                "' (expected pild or sd)");
  }
  if (o.dissimilarity) {
    DissimilarityMatrix D = depth_dissimilarity(S);
    write_matrix_csv(o.out, D.ids, D.values);
  } else {
    write_matrix_csv(o.out, S.ids, S.values);
  }
  ctx.parameters = {{"data", o.data},
                    {"kind", o.kind},
                    {"weights", o.kind == "pild" ? json(o.weights) : json()},
                    {"n0", o.n0},
                    {"dissimilarity", o.dissimilarity}};
  ctx.results = {{"points", X.size()}};
  ctx.outputs.push_back(o.out);
}

void run_classify(const ClassifyOpts& o, RunContext& ctx) {
  ClassifierKind kind = parse_classifier(o.method);
  if (kind == ClassifierKind::MaxDepth && (o.cv || o.param_given))
    throw std::invalid_argument("md has no tunable parameter");
  if (o.cv && o.param_given)
    throw std::invalid_argument("--cv and --param are mutually exclusive");

  Dataset train = read_dataset_csv(o.train);
  Dataset test = read_dataset_csv(o.test);
  train.group_sizes();  // demand a fully labeled training set up front

  double param = o.param;
  if (o.cv) {
    CvReport rep = cross_validate(train, kind,
                                  default_parameter_grid(kind, train.size()),
                                  o.folds, o.seed, o.n0, ctx.threads);
    param = rep.selected;
    ctx.results["selected"] = rep.selected;
    ctx.results["selected_mean_accuracy"] = rep.selected_mean;
  }
  std::vector<Prediction> preds =
      classify_batch(spec_for(kind, param), test, train, o.n0, ctx.threads);

  int groups = train.group_count();
  std::string header = "id,predicted";
  for (int g = 1; g <= groups; ++g) header += ",score" + std::to_string(g);
  std::vector<std::string> rows(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    std::string row = std::to_string(test.id(i)) + ',' + std::to_string(preds[i].group);
    for (double s : preds[i].scores) row += ',' + num(s);
    rows[i] = std::move(row);
  }
  write_lines(o.out, header, rows);
  ctx.outputs.push_back(o.out);

  if (test.labeled()) {
    double acc = accuracy(preds, test);
    std::printf("accuracy %s\n", num(acc).c_str());
    ctx.results["accuracy"] = acc;
  }
  ctx.parameters = {{"train", o.train},   {"test", o.test}, {"method", o.method},
                    {"param", o.cv ? json("cv") : json(param)},
                    {"folds", o.folds},   {"seed", o.seed}, {"n0", o.n0}};
}

void run_outliers(const OutlierOpts& o, RunContext& ctx) {
  DatasetColumns cols;
  if (!o.truth_col.empty()) cols.label = o.truth_col;
  Dataset X = read_dataset_csv(o.data, cols);

  std::vector<std::uint8_t> truth;
  if (!o.truth_col.empty()) {
    truth.resize(X.size());
    for (std::size_t i = 0; i < X.size(); ++i)
      truth[i] = o.truth_value ? X.label(i) == *o.truth_value : X.label(i) != 0;
  }

  std::vector<double> scores;
  ScoreDirection dir = ScoreDirection::LowerIsOutlying;
  WeightSpec spec = parse_weight_spec(o.weights);
  if (o.method == "gd") {
    scores = depth_scores(X, DepthScoreMethod::GlobalDepth, 1.0, o.n0, ctx.threads);
  } else if (o.method == "ld") {
    scores = depth_scores(X, DepthScoreMethod::LocalDepth, o.locality, o.n0, ctx.threads);
  } else if (o.method == "ild") {
    scores = depth_scores(X, DepthScoreMethod::IntegratedDepth, o.locality, o.n0,
                          ctx.threads);
  } else if (o.method == "pildsum") {
    scores = depth_scores(X, DepthScoreMethod::PildColumnSum, o.locality, o.n0,
                          ctx.threads);
  } else if (o.method == "lof") {
    if (o.k == 0) throw std::invalid_argument("lof needs --k");
    DissimilarityMatrix D = dissimilarity_for(o.dissim, X, spec, o.n0, ctx.threads);
    scores = lof_scores(D, o.k, ctx.threads);
    dir = ScoreDirection::HigherIsOutlying;
  } else {
    throw std::invalid_argument("unknown outlier method '" + o.method +
                                "' (expected gd, ld, ild, pildsum, or lof)");
  }

  std::size_t m = 0;
  if (o.count) {
    m = *o.count;
  } else if (o.rate) {
    if (*o.rate < 0.0 || *o.rate > 1.0)
      throw std::invalid_argument("--rate must lie in [0, 1]");
    m = static_cast<std::size_t>(std::llround(*o.rate * double(X.size())));
  } else if (!truth.empty()) {
    for (std::uint8_t t : truth) m += t;
  }

  OutlierReport report = rank_outliers(scores, dir, m, X.ids(), truth);
  std::vector<std::uint8_t> flag(X.size(), 0);
  for (std::uint32_t p : report.flagged) flag[p] = 1;
  std::vector<std::string> rows(X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    rows[i] = std::to_string(X.id(i)) + ',' + num(report.scores[i]) + ',' +
              std::to_string(int(flag[i]));
  write_lines(o.out, "id,score,flagged", rows);
  ctx.outputs.push_back(o.out);

  if (report.precision >= 0.0) {
    std::printf("precision %s\n", num(report.precision).c_str());
    ctx.results["precision"] = report.precision;
  }
  ctx.parameters = {{"data", o.data},       {"method", o.method},
                    {"locality", o.locality}, {"k", o.k},
                    {"dissim", o.dissim},   {"n0", o.n0},
                    {"flagged", m},         {"truth_col", o.truth_col}};
  ctx.results["points"] = X.size();
}

namespace {

ScenarioSpec scenario_spec(const std::string& name, std::size_t train, std::size_t test,
                           std::size_t inliers, std::size_t outliers,
                           std::uint64_t seed) {
  ScenarioSpec spec;
  spec.scenario = parse_scenario(name);
  spec.train_per_class = train;
  spec.test_per_class = test;
  spec.inliers = inliers;
  spec.outliers = outliers;
  spec.seed = seed;
  return spec;
}

}  // namespace

void run_simulate(const SimulateOpts& o, RunContext& ctx) {
  ScenarioSpec spec = scenario_spec(o.scenario, o.train_per_class, o.test_per_class,
                                    o.inliers, o.outliers, o.seed);
  std::size_t written = 0;
  if (!o.test_out.empty()) {
    TrainTestSplit split = generate_split(spec);
    write_dataset_csv(o.out, split.train);
    write_dataset_csv(o.test_out, split.test);
    written = split.train.size() + split.test.size();
    ctx.outputs = {o.out, o.test_out};
  } else {
    Dataset X = generate(spec);
    write_dataset_csv(o.out, X);
    written = X.size();
    ctx.outputs = {o.out};
  }
  ctx.parameters = {{"scenario", to_string(spec.scenario)},
                    {"train_per_class", o.train_per_class},
                    {"test_per_class", o.test_per_class},
                    {"inliers", o.inliers},
                    {"outliers", o.outliers},
                    {"seed", o.seed}};
  ctx.results = {{"points", written}};
}

void run_replicate(const ReplicateOpts& o, RunContext& ctx) {
  ScenarioSpec base = scenario_spec(o.scenario, o.train_per_class, o.test_per_class,
                                    o.inliers, o.outliers, o.seed);
  if (o.reps == 0) throw std::invalid_argument("--reps must be positive");
  if (o.cv && o.param_given)
    throw std::invalid_argument("--cv and --param are mutually exclusive");

  std::function<double(const ScenarioSpec&)> experiment;
  std::string param_label = o.cv ? "cv" : num(o.param);
  if (is_classification(base.scenario)) {
    ClassifierKind kind = parse_classifier(o.method);
    if (kind == ClassifierKind::MaxDepth && (o.cv || o.param_given))
      throw std::invalid_argument("md has no tunable parameter");
    if (kind == ClassifierKind::MaxDepth) param_label = "";
    experiment = [&, kind](const ScenarioSpec& sp) {
      TrainTestSplit split = generate_split(sp);
      double param = o.param;
      if (o.cv)
        param = cross_validate(split.train, kind,
                               default_parameter_grid(kind, split.train.size()),
                               o.folds, sp.seed, o.n0, 1)
                    .selected;
      std::vector<Prediction> preds =
          classify_batch(spec_for(kind, param), split.test, split.train, o.n0, 1);
      return accuracy(preds, split.test);
    };
  } else {
    if (o.cv) throw std::invalid_argument("--cv applies to classification scenarios");
    DepthScoreMethod method = DepthScoreMethod::GlobalDepth;
    bool lof = false;
    if (o.method == "gd") {
      method = DepthScoreMethod::GlobalDepth;
    } else if (o.method == "ld") {
      method = DepthScoreMethod::LocalDepth;
    } else if (o.method == "ild") {
      method = DepthScoreMethod::IntegratedDepth;
    } else if (o.method == "pildsum") {
      method = DepthScoreMethod::PildColumnSum;
    } else if (o.method == "lof") {
      lof = true;
      if (o.k == 0) throw std::invalid_argument("lof needs --k");
      param_label = std::to_string(o.k);
    } else {
      throw std::invalid_argument("unknown outlier method '" + o.method +
                                  "' (expected gd, ld, ild, pildsum, or lof)");
    }
    WeightSpec wspec = parse_weight_spec(o.weights);
    experiment = [&, method, lof, wspec](const ScenarioSpec& sp) {
      Dataset X = generate(sp);
      std::vector<std::uint8_t> truth(X.size());
      for (std::size_t i = 0; i < X.size(); ++i) truth[i] = X.label(i) == 2;
      std::vector<double> scores;
      ScoreDirection dir = ScoreDirection::LowerIsOutlying;
      if (lof) {
        scores = lof_scores(dissimilarity_for(o.dissim, X, wspec, o.n0, 1), o.k, 1);
        dir = ScoreDirection::HigherIsOutlying;
      } else {
        scores = depth_scores(X, method, o.param, o.n0, 1);
      }
      return precision_at_known_rate(scores, dir, truth);
    };
  }

  ReplicateSummary summary = replicate(base, o.reps, experiment, ctx.threads);
  std::string header = "scenario,method,parameter,reps,mean,median,q1,q3,stddev";
  std::string row = to_string(base.scenario) + ',' + o.method + ',' + param_label +
                    ',' + std::to_string(o.reps) + ',' + num(summary.mean) + ',' +
                    num(summary.median) + ',' + num(summary.q1) + ',' +
                    num(summary.q3) + ',' + num(summary.stddev);
  std::printf("%s\n%s\n", header.c_str(), row.c_str());
  if (!o.out.empty()) {
    write_lines(o.out, header, {row});
    ctx.outputs.push_back(o.out);
  }

  ctx.parameters = {{"scenario", to_string(base.scenario)},
                    {"method", o.method},
                    {"param", param_label},
                    {"reps", o.reps},
                    {"folds", o.folds},
                    {"seed", o.seed},
                    {"n0", o.n0}};
  ctx.results = {{"mean", summary.mean},     {"median", summary.median},
                 {"q1", summary.q1},         {"q3", summary.q3},
                 {"stddev", summary.stddev}};
}

int run_check(const CheckOpts& o, RunContext& ctx) {
  double worst_rowsum = 0.0, worst_drift = 0.0;
  std::size_t profiles = 0, bound_violations = 0, structure_failures = 0;

  for (std::size_t rep = 0; rep < o.reps; ++rep) {
    Rng rng(Rng::derive(o.seed, rep));
    Dataset X(o.d);
    std::vector<double> p(o.d);
    for (std::size_t i = 0; i < o.n; ++i) {
      for (std::size_t k = 0; k < o.d; ++k) p[k] = rng.normal();
      X.add({p.data(), o.d}, static_cast<std::int64_t>(i));
    }
    WeightSpec spec = rep % 2 == 0 ? WeightSpec::full() : WeightSpec::uniform(0.6);
    LocalityGrid grid = make_grid(o.n, o.n0);

    PildPlan plan = make_pild_plan(X, o.n0, ctx.threads);
    PildMatrix M = pild_matrix(plan, spec);
    for (std::size_t i = 0; i < o.n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < o.n; ++j) row += M.entries.at(i, j);
      worst_rowsum = std::max(worst_rowsum, std::fabs(row - sild(X.point(i), X, spec, o.n0)));
    }

    for (std::size_t i = 0; i < o.n; ++i) {
      SmoothingDiagnostics diag = smoothing_check(plan.profiles[i]);
      if (!diag.adjacent_bound_holds || !diag.per_level_bound_holds) ++bound_violations;
      ++profiles;
    }

    double scale = rng.uniform(0.5, 2.0);
    std::vector<double> rot = random_rotation(o.d, rng);
    std::vector<double> shift(o.d);
    for (double& s : shift) s = rng.normal();
    PildMatrix MY = pild_matrix(apply_similarity(X, scale, rot, shift), spec, o.n0,
                                ctx.threads);
    for (std::size_t i = 0; i < o.n; ++i)
      for (std::size_t j = 0; j < o.n; ++j)
        worst_drift = std::max(worst_drift,
                               std::fabs(M.entries.at(i, j) - MY.entries.at(i, j)));

    PildMatrix W = pild_matrix(plan, WeightSpec::uniform(0.5));
    std::size_t widest = grid.member_count(grid.level_for(0.5));
    std::vector<std::size_t> by_rank(o.n);
    for (std::size_t i = 0; i < o.n; ++i) {
      for (std::size_t j = 0; j < o.n; ++j) {
        if (M.entries.at(i, i) < M.entries.at(i, j)) ++structure_failures;
        if (plan.rank_of(i, j) > widest && W.entries.at(i, j) != 0.0)
          ++structure_failures;
        by_rank[plan.rank_of(i, j) - 1] = j;
      }
      for (std::size_t r = 1; r < o.n; ++r)
        if (M.entries.at(i, by_rank[r - 1]) < M.entries.at(i, by_rank[r]))
          ++structure_failures;
    }
  }

  bool rowsum_ok = worst_rowsum <= 1e-10;
  bool bounds_ok = bound_violations == 0;
  bool drift_ok = worst_drift <= 1e-9;
  bool structure_ok = structure_failures == 0;
  std::printf("[%s] row sums equal integrated depth: max deviation %s (bound 1e-10)\n",
              rowsum_ok ? "PASS" : "FAIL", num(worst_rowsum).c_str());
  std::printf("[%s] smoothing bounds: %zu profiles, %zu violations\n",
              bounds_ok ? "PASS" : "FAIL", profiles, bound_violations);
  std::printf("[%s] transform invariance: max drift %s (bound 1e-9)\n",
              drift_ok ? "PASS" : "FAIL", num(worst_drift).c_str());
  std::printf("[%s] matrix structure: %zu failures across diagonal dominance, "
              "rank monotonicity, window support\n",
              structure_ok ? "PASS" : "FAIL", structure_failures);

  ctx.parameters = {{"seed", o.seed}, {"n", o.n}, {"d", o.d},
                    {"reps", o.reps}, {"n0", o.n0}};
  ctx.results = {{"max_rowsum_deviation", worst_rowsum},
                 {"bound_violations", bound_violations},
                 {"max_transform_drift", worst_drift},
                 {"structure_failures", structure_failures}};
  return rowsum_ok && bounds_ok && drift_ok && structure_ok ? 0 : 1;
}

}  // namespace ildcli
