#include "ildepth/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ildepth/local_depth.hpp"
#include "ildepth/parallel.hpp"
#include "ildepth/pild.hpp"
#include "ildepth/reflection.hpp"
#include "ildepth/rng.hpp"
#include "ildepth/spatial_depth.hpp"

namespace ild {

namespace {

int argmax_group(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t g = 1; g < scores.size(); ++g)
    if (scores[g] > scores[best]) best = g;
  return static_cast<int>(best) + 1;
}

// Per-group training subsets with shared reflection state. Subsets are built
// before any context takes a pointer to them.
struct GroupModel {
  std::vector<Dataset> groups;
  std::vector<ReflectionContext> ctx;
  std::vector<LocalityGrid> grids;

  GroupModel(const Dataset& train, std::size_t n0, bool with_ctx, int threads) {
    std::vector<std::size_t> sizes = train.group_sizes();
    std::size_t G = sizes.size();
    groups.reserve(G);
    for (std::size_t g = 1; g <= G; ++g) {
      auto pos = train.group_positions(static_cast<int>(g));
      if (pos.size() < n0)
        throw std::invalid_argument("classify: group " + std::to_string(g) + " has " +
                                    std::to_string(pos.size()) + " points, needs at least " +
                                    std::to_string(n0));
      groups.push_back(train.subset(pos));
    }
    if (with_ctx) {
      ctx.reserve(G);
      grids.reserve(G);
      for (std::size_t g = 0; g < G; ++g) {
        ctx.emplace_back(groups[g], threads);
        grids.push_back(make_grid(groups[g].size(), n0));
      }
    }
  }
};

void check_query_dim(const Dataset& queries, const Dataset& train) {
  if (queries.empty()) throw std::invalid_argument("classify: no queries");
  if (queries.dim() != train.dim())
    throw std::invalid_argument("classify: queries have dimension " +
                                std::to_string(queries.dim()) + ", training data " +
                                std::to_string(train.dim()));
}

}  // namespace

Prediction classify_max_depth(std::span<const double> z, const Dataset& train) {
  std::vector<std::size_t> sizes = train.group_sizes();
  Prediction p;
  p.scores.resize(sizes.size());
  for (std::size_t g = 1; g <= sizes.size(); ++g) {
    Dataset sub = train.subset(train.group_positions(static_cast<int>(g)));
    p.scores[g - 1] = spatial_depth(z, sub);
  }
  p.group = argmax_group(p.scores);
  return p;
}

Prediction classify_max_ld(std::span<const double> z, const Dataset& train, double beta,
                           std::size_t n0) {
  GroupModel model(train, n0, true, 1);
  Prediction p;
  p.scores.resize(model.groups.size());
  for (std::size_t g = 0; g < model.groups.size(); ++g) {
    DepthProfile prof = ld_profile(model.ctx[g], z, model.grids[g]);
    p.scores[g] = prof.ld[model.grids[g].level_for(beta)];
  }
  p.group = argmax_group(p.scores);
  return p;
}

Prediction classify_max_ild(std::span<const double> z, const Dataset& train, double b1,
                            std::size_t n0) {
  GroupModel model(train, n0, true, 1);
  Prediction p;
  p.scores.resize(model.groups.size());
  for (std::size_t g = 0; g < model.groups.size(); ++g) {
    DepthProfile prof = ld_profile(model.ctx[g], z, model.grids[g]);
    p.scores[g] = prof.ild[model.grids[g].level_for(b1)];
  }
  p.group = argmax_group(p.scores);
  return p;
}

Prediction classify_dknn(std::span<const double> z, const Dataset& train, std::size_t k) {
  std::vector<std::size_t> sizes = train.group_sizes();
  if (k < 1 || k > train.size())
    throw std::invalid_argument("dknn: k must be in [1, n], got " + std::to_string(k));
  ReflectionContext ctx(train, 1);
  ReflectedDepthRow row = ctx.row(z);
  Prediction p;
  p.scores.assign(sizes.size(), 0.0);
  for (std::size_t r = 0; r < k; ++r)
    p.scores[static_cast<std::size_t>(train.label(row.order[r]) - 1)] += 1.0;
  p.group = argmax_group(p.scores);
  return p;
}

std::vector<Prediction> classify_pild(const Dataset& queries, const Dataset& train, double b1,
                                      std::size_t n0, int threads) {
  std::vector<std::size_t> sizes = train.group_sizes();
  check_query_dim(queries, train);
  std::size_t n = train.size();
  std::size_t m = queries.size();

  Dataset joint(train.dim());
  for (std::size_t i = 0; i < n; ++i)
    joint.add(train.point(i), static_cast<std::int64_t>(i), train.label(i));
  for (std::size_t q = 0; q < m; ++q)
    joint.add(queries.point(q), static_cast<std::int64_t>(n + q), 0);

  PildMatrix M = pild_matrix(joint, WeightSpec::uniform(b1), n0, threads);

  std::vector<Prediction> out(m);
  for (std::size_t q = 0; q < m; ++q) {
    Prediction& p = out[q];
    p.scores.assign(sizes.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      p.scores[static_cast<std::size_t>(train.label(i) - 1)] += M.entries.at(i, n + q);
    for (std::size_t g = 0; g < sizes.size(); ++g)
      p.scores[g] /= static_cast<double>(sizes[g]);
    p.group = argmax_group(p.scores);
  }
  return out;
}

std::vector<Prediction> classify_batch(const ClassifierSpec& spec, const Dataset& queries,
                                       const Dataset& train, std::size_t n0, int threads) {
  check_query_dim(queries, train);
  std::vector<std::size_t> sizes = train.group_sizes();
  std::size_t G = sizes.size();
  std::size_t m = queries.size();
  std::vector<Prediction> out(m);

  switch (spec.kind) {
    case ClassifierKind::MaxDepth: {
      GroupModel model(train, 1, false, threads);
      parallel_for(0, m, threads, [&](std::size_t q) {
        Prediction& p = out[q];
        p.scores.resize(G);
        for (std::size_t g = 0; g < G; ++g)
          p.scores[g] = spatial_depth(queries.point(q), model.groups[g]);
        p.group = argmax_group(p.scores);
      });
      break;
    }
    case ClassifierKind::MaxLd:
    case ClassifierKind::MaxIld: {
      GroupModel model(train, n0, true, threads);
      bool integrated = spec.kind == ClassifierKind::MaxIld;
      parallel_for(0, m, threads, [&](std::size_t q) {
        Prediction& p = out[q];
        p.scores.resize(G);
        for (std::size_t g = 0; g < G; ++g) {
          DepthProfile prof = ld_profile(model.ctx[g], queries.point(q), model.grids[g]);
          std::size_t level = model.grids[g].level_for(spec.locality);
          p.scores[g] = integrated ? prof.ild[level] : prof.ld[level];
        }
        p.group = argmax_group(p.scores);
      });
      break;
    }
    case ClassifierKind::DKnn: {
      if (spec.k < 1 || spec.k > train.size())
        throw std::invalid_argument("dknn: k must be in [1, n], got " + std::to_string(spec.k));
      ReflectionContext ctx(train, threads);
      parallel_for(0, m, threads, [&](std::size_t q) {
        ReflectedDepthRow row = ctx.row(queries.point(q));
        Prediction& p = out[q];
        p.scores.assign(G, 0.0);
        for (std::size_t r = 0; r < spec.k; ++r)
          p.scores[static_cast<std::size_t>(train.label(row.order[r]) - 1)] += 1.0;
        p.group = argmax_group(p.scores);
      });
      break;
    }
    case ClassifierKind::PildAvg:
      out = classify_pild(queries, train, spec.locality, n0, threads);
      break;
  }
  return out;
}

double accuracy(std::span<const Prediction> predictions, const Dataset& truth) {
  if (!truth.labeled()) throw std::invalid_argument("accuracy: truth labels missing");
  if (predictions.size() != truth.size())
    throw std::invalid_argument("accuracy: " + std::to_string(predictions.size()) +
                                " predictions for " + std::to_string(truth.size()) + " points");
  std::size_t hit = 0;
  for (std::size_t q = 0; q < predictions.size(); ++q)
    if (predictions[q].group == truth.label(q)) ++hit;
  return static_cast<double>(hit) / static_cast<double>(predictions.size());
}

std::vector<double> default_parameter_grid(ClassifierKind kind, std::size_t train_size) {
  std::vector<double> grid;
  if (kind == ClassifierKind::DKnn) {
    std::size_t top = std::max<std::size_t>(train_size / 4, 1);
    for (std::size_t k = 1; k <= top; ++k) grid.push_back(static_cast<double>(k));
  } else {
    for (int t = 1; t <= 40; ++t) grid.push_back(static_cast<double>(t) / 40.0);
  }
  return grid;
}

namespace {

std::vector<std::size_t> sweep_depth_fold(const Dataset& ftrain, const Dataset& ftest,
                                          ClassifierKind kind, std::span<const double> params,
                                          std::size_t n0, int threads) {
  GroupModel model(ftrain, n0, true, threads);
  std::size_t G = model.groups.size();
  bool integrated = kind == ClassifierKind::MaxIld;
  std::vector<std::uint8_t> correct(params.size() * ftest.size(), 0);
  parallel_for(0, ftest.size(), threads, [&](std::size_t q) {
    std::vector<DepthProfile> profs(G);
    for (std::size_t g = 0; g < G; ++g)
      profs[g] = ld_profile(model.ctx[g], ftest.point(q), model.grids[g]);
    std::vector<double> scores(G);
    for (std::size_t p = 0; p < params.size(); ++p) {
      for (std::size_t g = 0; g < G; ++g) {
        std::size_t level = model.grids[g].level_for(params[p]);
        scores[g] = integrated ? profs[g].ild[level] : profs[g].ld[level];
      }
      correct[p * ftest.size() + q] = argmax_group(scores) == ftest.label(q);
    }
  });
  std::vector<std::size_t> hits(params.size(), 0);
  for (std::size_t p = 0; p < params.size(); ++p)
    for (std::size_t q = 0; q < ftest.size(); ++q) hits[p] += correct[p * ftest.size() + q];
  return hits;
}

std::vector<std::size_t> sweep_dknn_fold(const Dataset& ftrain, const Dataset& ftest,
                                         std::span<const double> params, int threads) {
  std::size_t n = ftrain.size();
  std::size_t G = ftrain.group_sizes().size();
  std::vector<std::size_t> ks(params.size());
  for (std::size_t p = 0; p < params.size(); ++p) {
    double v = params[p];
    if (v < 1.0 || v > static_cast<double>(n) || v != std::floor(v))
      throw std::invalid_argument("dknn grid: k must be an integer in [1, fold size], got " +
                                  std::to_string(v));
    ks[p] = static_cast<std::size_t>(v);
  }
  ReflectionContext ctx(ftrain, threads);
  std::vector<std::uint8_t> correct(params.size() * ftest.size(), 0);
  parallel_for(0, ftest.size(), threads, [&](std::size_t q) {
    ReflectedDepthRow row = ctx.row(ftest.point(q));
    // Leader after each k, in one pass over the ranking.
    std::vector<int> votes(G, 0);
    std::vector<int> leader(n + 1, 1);
    for (std::size_t r = 0; r < n; ++r) {
      ++votes[static_cast<std::size_t>(ftrain.label(row.order[r]) - 1)];
      std::size_t lead = 0;
      for (std::size_t h = 1; h < G; ++h)
        if (votes[h] > votes[lead]) lead = h;
      leader[r + 1] = static_cast<int>(lead) + 1;
    }
    for (std::size_t p = 0; p < ks.size(); ++p)
      correct[p * ftest.size() + q] = leader[ks[p]] == ftest.label(q);
  });
  std::vector<std::size_t> hits(params.size(), 0);
  for (std::size_t p = 0; p < params.size(); ++p)
    for (std::size_t q = 0; q < ftest.size(); ++q) hits[p] += correct[p * ftest.size() + q];
  return hits;
}

std::vector<std::size_t> sweep_pild_fold(const Dataset& ftrain, const Dataset& ftest,
                                         std::span<const double> params, std::size_t n0,
                                         int threads) {
  std::size_t n = ftrain.size();
  std::size_t m = ftest.size();
  std::size_t G = ftrain.group_sizes().size();

  Dataset joint(ftrain.dim());
  for (std::size_t i = 0; i < n; ++i)
    joint.add(ftrain.point(i), static_cast<std::int64_t>(i), ftrain.label(i));
  for (std::size_t q = 0; q < m; ++q)
    joint.add(ftest.point(q), static_cast<std::int64_t>(n + q), 0);
  PildPlan plan = make_pild_plan(joint, n0, threads);

  std::size_t b = plan.grid.level_count();
  std::vector<std::size_t> hits(params.size(), 0);
  parallel_for(0, params.size(), threads, [&](std::size_t p) {
    std::vector<double> w = resolve_weights(WeightSpec::uniform(params[p]), plan.grid);
    std::vector<double> suffix(b + 1);
    std::vector<double> scores(G * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const DepthProfile& prof = plan.profiles[i];
      suffix[b] = 0.0;
      for (std::size_t l = b; l-- > 0;)
        suffix[l] = suffix[l + 1] +
                    prof.ld[l] * w[l] / static_cast<double>(plan.grid.member_count(l));
      std::size_t g = static_cast<std::size_t>(ftrain.label(i) - 1);
      for (std::size_t q = 0; q < m; ++q) {
        std::uint32_t r = plan.rank_of(i, n + q);
        std::size_t first = r <= plan.grid.n0 ? 0 : static_cast<std::size_t>(r - plan.grid.n0);
        scores[g * m + q] += suffix[first];
      }
    }
    std::vector<std::size_t> sizes = ftrain.group_sizes();
    std::vector<double> s(G);
    for (std::size_t q = 0; q < m; ++q) {
      for (std::size_t g = 0; g < G; ++g)
        s[g] = scores[g * m + q] / static_cast<double>(sizes[g]);
      if (argmax_group(s) == ftest.label(q)) ++hits[p];
    }
  });
  return hits;
}

}  // namespace

CvReport cross_validate(const Dataset& train, ClassifierKind kind,
                        std::span<const double> parameters, int folds, std::uint64_t seed,
                        std::size_t n0, int threads) {
  if (kind == ClassifierKind::MaxDepth)
    throw std::invalid_argument("cross_validate: the max-depth rule has no tunable parameter");
  if (folds < 2) throw std::invalid_argument("cross_validate: need at least 2 folds");
  if (parameters.empty()) throw std::invalid_argument("cross_validate: empty parameter grid");
  std::vector<std::size_t> sizes = train.group_sizes();
  for (std::size_t g = 0; g < sizes.size(); ++g)
    if (sizes[g] < static_cast<std::size_t>(folds))
      throw std::invalid_argument("cross_validate: group " + std::to_string(g + 1) +
                                  " has fewer points than folds");
  if (kind != ClassifierKind::DKnn)
    for (double p : parameters)
      if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("cross_validate: locality grid values must lie in (0, 1]");

  // Stratified assignment: shuffle each group's positions, deal round-robin.
  std::size_t F = static_cast<std::size_t>(folds);
  std::vector<std::vector<std::size_t>> fold_members(F);
  for (std::size_t g = 1; g <= sizes.size(); ++g) {
    auto pos = train.group_positions(static_cast<int>(g));
    Rng rng(Rng::derive(seed, g));
    shuffle(pos, rng);
    for (std::size_t i = 0; i < pos.size(); ++i) fold_members[i % F].push_back(pos[i]);
  }

  CvReport report;
  report.kind = kind;
  report.parameters.assign(parameters.begin(), parameters.end());
  report.fold_accuracy.assign(parameters.size(), std::vector<double>(F, 0.0));

  for (std::size_t f = 0; f < F; ++f) {
    std::vector<std::size_t> train_pos;
    for (std::size_t o = 0; o < F; ++o)
      if (o != f) train_pos.insert(train_pos.end(), fold_members[o].begin(), fold_members[o].end());
    std::sort(train_pos.begin(), train_pos.end());
    Dataset ftrain = train.subset(train_pos);
    Dataset ftest = train.subset(fold_members[f]);

    std::vector<std::size_t> hits;
    switch (kind) {
      case ClassifierKind::MaxLd:
      case ClassifierKind::MaxIld:
        hits = sweep_depth_fold(ftrain, ftest, kind, parameters, n0, threads);
        break;
      case ClassifierKind::DKnn:
        hits = sweep_dknn_fold(ftrain, ftest, parameters, threads);
        break;
      case ClassifierKind::PildAvg:
        hits = sweep_pild_fold(ftrain, ftest, parameters, n0, threads);
        break;
      case ClassifierKind::MaxDepth:
        break;
    }
    for (std::size_t p = 0; p < parameters.size(); ++p)
      report.fold_accuracy[p][f] =
          static_cast<double>(hits[p]) / static_cast<double>(ftest.size());
  }

  report.mean_accuracy.resize(parameters.size());
  for (std::size_t p = 0; p < parameters.size(); ++p) {
    double s = 0.0;
    for (double a : report.fold_accuracy[p]) s += a;
    report.mean_accuracy[p] = s / static_cast<double>(F);
  }
  std::size_t best = 0;
  for (std::size_t p = 1; p < parameters.size(); ++p) {
    bool better = report.mean_accuracy[p] > report.mean_accuracy[best];
    bool tie_smaller = report.mean_accuracy[p] == report.mean_accuracy[best] &&
                       report.parameters[p] < report.parameters[best];
    if (better || tie_smaller) best = p;
  }
  report.selected = report.parameters[best];
  report.selected_mean = report.mean_accuracy[best];
  return report;
}

}  // namespace ild
