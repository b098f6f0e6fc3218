#include "ildepth/simdata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ildepth/parallel.hpp"

namespace ild {

Scenario parse_scenario(const std::string& name) {
  if (name == "setup1") return Scenario::Setup1;
  if (name == "setup2") return Scenario::Setup2;
  if (name == "setup3") return Scenario::Setup3;
  if (name == "setup4") return Scenario::Setup4;
  if (name == "toyA" || name == "toya") return Scenario::ToyA;
  if (name == "toyB" || name == "toyb") return Scenario::ToyB;
  throw std::invalid_argument("unknown scenario '" + name +
                              "', expected setup1..setup4 | toyA | toyB");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Setup1: return "setup1";
    case Scenario::Setup2: return "setup2";
    case Scenario::Setup3: return "setup3";
    case Scenario::Setup4: return "setup4";
    case Scenario::ToyA: return "toyA";
    case Scenario::ToyB: return "toyB";
  }
  return "?";
}

bool is_classification(Scenario s) {
  return s == Scenario::Setup1 || s == Scenario::Setup2 || s == Scenario::Setup3 ||
         s == Scenario::Setup4;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Chol2 {
  double l11, l21, l22;
};

// Lower Cholesky factor of [[a, b], [b, c]].
Chol2 chol2(double a, double b, double c) {
  double l11 = std::sqrt(a);
  double l21 = b / l11;
  return {l11, l21, std::sqrt(c - l21 * l21)};
}

void draw_normal2(Rng& rng, double mx, double my, const Chol2& L, double* out) {
  double z1 = rng.normal();
  double z2 = rng.normal();
  out[0] = mx + L.l11 * z1;
  out[1] = my + L.l21 * z1 + L.l22 * z2;
}

// One point of the half-moon body: U ~ Unif(-1,1), V | U ~ Unif(1-u^2, 2(1-u^2)).
void draw_moon(Rng& rng, double* uv) {
  double u = rng.uniform(-1.0, 1.0);
  double s = 1.0 - u * u;
  uv[0] = u;
  uv[1] = rng.uniform(s, 2.0 * s);
}

void draw_class_point(Scenario sc, int cls, Rng& rng, double* out) {
  switch (sc) {
    case Scenario::Setup1: {
      static const Chol2 L1 = chol2(1.0, 0.0, 1.0);
      // The stated class-2 covariance is asymmetric as printed; we use its
      // symmetrized form [[2,1],[1,1]].
      static const Chol2 L2 = chol2(2.0, 1.0, 1.0);
      if (cls == 1)
        draw_normal2(rng, 0.0, 0.0, L1, out);
      else
        draw_normal2(rng, 2.0, 2.0, L2, out);
      break;
    }
    case Scenario::Setup2: {
      double uv[2];
      draw_moon(rng, uv);
      if (cls == 1) {
        out[0] = uv[0];
        out[1] = uv[1];
      } else {
        out[0] = -0.5 + uv[0] + 0.5 * uv[1];
        out[1] = 2.0 + 0.5 * uv[0] - uv[1];
      }
      break;
    }
    case Scenario::Setup3: {
      static const Chol2 L1 = chol2(1.0, 1.0, 2.0);
      static const Chol2 L2 = chol2(4.0, 4.0, 12.0);
      if (cls == 1)
        draw_normal2(rng, 0.0, 0.0, L1, out);
      else
        draw_normal2(rng, 1.0, 1.0, L2, out);
      break;
    }
    case Scenario::Setup4: {
      double r;
      if (cls == 1) {
        // Area-uniform over the annulus 1 <= r <= 2.
        r = std::sqrt(1.0 + 3.0 * rng.uniform());
      } else {
        double rmax = rng.uniform() < 0.7 ? 1.7 : 1.0;
        r = rng.uniform(0.0, rmax);
      }
      double theta = rng.uniform(0.0, 2.0 * kPi);
      out[0] = r * std::cos(theta);
      out[1] = r * std::sin(theta);
      break;
    }
    default:
      throw std::invalid_argument("not a classification scenario");
  }
}

// Standard Cauchy CDF: the df = 1 case of the t distribution.
double t1_cdf(double x) { return 0.5 + std::atan(x) / kPi; }

void draw_copula_inlier(Rng& rng, double rho, double* out) {
  double g1 = rng.normal();
  double g2 = rng.normal();
  double g3 = rng.normal();
  double z1 = g1;
  double z2 = rho * g1 + std::sqrt(1.0 - rho * rho) * g2;
  double w = std::fabs(g3);  // sqrt of a chi-square with 1 df
  out[0] = t1_cdf(z1 / w);
  out[1] = t1_cdf(z2 / w);
}

constexpr std::size_t kRejectionCap = 1000000;

Dataset generate_toy(const ScenarioSpec& spec) {
  Dataset out(2);
  double p[2];
  if (spec.scenario == Scenario::ToyA) {
    const double tau = 0.0638;
    const double rho = std::sin(kPi * tau / 2.0);
    Rng in_rng(Rng::derive(spec.seed, 1));
    std::vector<double> in_pts(spec.inliers * 2);
    for (std::size_t i = 0; i < spec.inliers; ++i) {
      draw_copula_inlier(in_rng, rho, p);
      in_pts[2 * i] = p[0];
      in_pts[2 * i + 1] = p[1];
      out.add({p, 2}, static_cast<std::int64_t>(i), 1);
    }
    Rng out_rng(Rng::derive(spec.seed, 2));
    std::size_t attempts = 0;
    for (std::size_t i = 0; i < spec.outliers;) {
      if (++attempts > kRejectionCap)
        throw std::runtime_error("toyA: rejection sampling exceeded " +
                                 std::to_string(kRejectionCap) + " attempts");
      p[0] = out_rng.uniform(-0.2, 2.0);
      p[1] = out_rng.uniform(-0.2, 2.0);
      bool clear = true;
      for (std::size_t j = 0; j < spec.inliers && clear; ++j) {
        double dx = p[0] - in_pts[2 * j];
        double dy = p[1] - in_pts[2 * j + 1];
        clear = dx * dx + dy * dy >= 0.01;
      }
      if (!clear) continue;
      out.add({p, 2}, static_cast<std::int64_t>(spec.inliers + i), 2);
      ++i;
    }
    return out;
  }

  // ToyB: four unit-variance modes at the corners, outliers with doubled
  // variance between them. Modes are dealt round-robin so each contributes
  // equally.
  static const double in_mean[4][2] = {{4, 4}, {-4, 4}, {-4, -4}, {4, -4}};
  static const double out_mean[4][2] = {{0, 5}, {-5, 0}, {0, -5}, {5, 0}};
  const Chol2 Lin = chol2(1.0, 0.0, 1.0);
  const Chol2 Lout = chol2(2.0, 0.0, 2.0);
  Rng in_rng(Rng::derive(spec.seed, 1));
  for (std::size_t i = 0; i < spec.inliers; ++i) {
    const double* m = in_mean[i % 4];
    draw_normal2(in_rng, m[0], m[1], Lin, p);
    out.add({p, 2}, static_cast<std::int64_t>(i), 1);
  }
  Rng out_rng(Rng::derive(spec.seed, 2));
  for (std::size_t i = 0; i < spec.outliers; ++i) {
    const double* m = out_mean[i % 4];
    draw_normal2(out_rng, m[0], m[1], Lout, p);
    out.add({p, 2}, static_cast<std::int64_t>(spec.inliers + i), 2);
  }
  return out;
}

}  // namespace

Dataset generate(const ScenarioSpec& spec) {
  if (is_classification(spec.scenario)) {
    if (spec.train_per_class == 0 || spec.test_per_class == 0)
      throw std::invalid_argument("scenario: per-class counts must be positive");
    Dataset out(2);
    double p[2];
    std::int64_t next_id = 0;
    // Streams 1..4: (class, role) blocks, so train and test are independent.
    for (int role = 0; role < 2; ++role) {
      std::size_t count = role == 0 ? spec.train_per_class : spec.test_per_class;
      for (int cls = 1; cls <= 2; ++cls) {
        Rng rng(Rng::derive(spec.seed, static_cast<std::uint64_t>(2 * role + cls)));
        for (std::size_t i = 0; i < count; ++i) {
          draw_class_point(spec.scenario, cls, rng, p);
          out.add({p, 2}, next_id++, cls);
        }
      }
    }
    return out;
  }
  if (spec.inliers == 0 || spec.outliers == 0)
    throw std::invalid_argument("scenario: inlier and outlier counts must be positive");
  return generate_toy(spec);
}

TrainTestSplit generate_split(const ScenarioSpec& spec) {
  if (!is_classification(spec.scenario))
    throw std::invalid_argument("scenario: train/test split applies to setup1..setup4");
  Dataset all = generate(spec);
  std::size_t ntrain = 2 * spec.train_per_class;
  std::vector<std::size_t> train_pos(ntrain);
  std::vector<std::size_t> test_pos(all.size() - ntrain);
  for (std::size_t i = 0; i < ntrain; ++i) train_pos[i] = i;
  for (std::size_t i = ntrain; i < all.size(); ++i) test_pos[i - ntrain] = i;
  return {all.subset(train_pos), all.subset(test_pos)};
}

ScenarioSpec rep_spec(const ScenarioSpec& base, std::size_t rep) {
  ScenarioSpec s = base;
  s.seed = Rng::derive(base.seed, 0x7265700000000000ull + rep);
  return s;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
  double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ReplicateSummary summarize(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  ReplicateSummary s;
  s.values = std::move(values);
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(sorted.size());
  s.median = quantile_sorted(sorted, 0.5);
  s.q1 = quantile_sorted(sorted, 0.25);
  s.q3 = quantile_sorted(sorted, 0.75);
  double ss = 0.0;
  for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
  s.stddev = sorted.size() > 1 ? std::sqrt(ss / static_cast<double>(sorted.size() - 1)) : 0.0;
  return s;
}

ReplicateSummary replicate(const ScenarioSpec& spec, std::size_t reps,
                           const std::function<double(const ScenarioSpec&)>& experiment,
                           int threads) {
  if (reps == 0) throw std::invalid_argument("replicate: need at least one repetition");
  std::vector<double> values(reps);
  parallel_for(0, reps, threads, [&](std::size_t r) { values[r] = experiment(rep_spec(spec, r)); });
  return summarize(std::move(values));
}

std::vector<double> random_rotation(std::size_t d, Rng& rng) {
  if (d == 0) throw std::invalid_argument("rotation: dimension must be positive");
  // Gram-Schmidt on a Gaussian matrix, then fix the sign of the last column
  // so the determinant is +1.
  std::vector<double> q(d * d);
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<double> v(d);
    for (std::size_t r = 0; r < d; ++r) v[r] = rng.normal();
    for (std::size_t o = 0; o < c; ++o) {
      double dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += v[r] * q[r * d + o];
      for (std::size_t r = 0; r < d; ++r) v[r] -= dot * q[r * d + o];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) return random_rotation(d, rng);  // retry on degeneracy
    for (std::size_t r = 0; r < d; ++r) q[r * d + c] = v[r] / norm;
  }
  // Sign of det(q) by Gaussian elimination.
  std::vector<double> a = q;
  double det = 1.0;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::fabs(a[r * d + c]) > std::fabs(a[piv * d + c])) piv = r;
    if (piv != c) {
      for (std::size_t k = 0; k < d; ++k) std::swap(a[c * d + k], a[piv * d + k]);
      det = -det;
    }
    det *= a[c * d + c];
    for (std::size_t r = c + 1; r < d; ++r) {
      double f = a[r * d + c] / a[c * d + c];
      for (std::size_t k = c; k < d; ++k) a[r * d + k] -= f * a[c * d + k];
    }
  }
  if (det < 0.0)
    for (std::size_t r = 0; r < d; ++r) q[r * d + d - 1] = -q[r * d + d - 1];
  return q;
}

Dataset apply_similarity(const Dataset& X, double scale, std::span<const double> rot,
                         std::span<const double> shift) {
  std::size_t d = X.dim();
  if (!(scale > 0.0)) throw std::invalid_argument("similarity transform: scale must be positive");
  if (rot.size() != d * d || shift.size() != d)
    throw std::invalid_argument("similarity transform: shape mismatch");
  Dataset out(d);
  std::vector<double> y(d);
  for (std::size_t i = 0; i < X.size(); ++i) {
    auto x = X.point(i);
    for (std::size_t r = 0; r < d; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += rot[r * d + c] * x[c];
      y[r] = scale * s + shift[r];
    }
    out.add({y.data(), d}, X.id(i), X.label(i));
  }
  return out;
}

}  // namespace ild
