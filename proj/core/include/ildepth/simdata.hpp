#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/rng.hpp"

namespace ild {

// Bivariate benchmark scenarios. The four classification setups draw two
// balanced classes; the two outlier scenes mix a clean population (label 1)
// with planted outliers (label 2).
enum class Scenario { Setup1, Setup2, Setup3, Setup4, ToyA, ToyB };

Scenario parse_scenario(const std::string& name);
std::string to_string(Scenario s);
bool is_classification(Scenario s);

struct ScenarioSpec {
  Scenario scenario = Scenario::Setup1;
  std::size_t train_per_class = 200;
  std::size_t test_per_class = 100;
  std::size_t inliers = 400;
  std::size_t outliers = 100;
  std::uint64_t seed = 1;
};

// Classification scenarios produce the training block (class 1 then class 2)
// followed by the test block; outlier scenarios produce inliers then
// outliers. Deterministic in spec.seed, with one derived stream per block.
Dataset generate(const ScenarioSpec& spec);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};
TrainTestSplit generate_split(const ScenarioSpec& spec);

// Spec for replication r of a base experiment: same sizes, derived seed.
ScenarioSpec rep_spec(const ScenarioSpec& base, std::size_t rep);

struct ReplicateSummary {
  std::vector<double> values;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double stddev = 0.0;
};

ReplicateSummary summarize(std::vector<double> values);
double quantile_sorted(std::span<const double> sorted, double p);

// Runs experiment(rep_spec(spec, r)) for r in [0, reps). Replications run in
// parallel over independent seeded streams; the experiment must be pure.
ReplicateSummary replicate(const ScenarioSpec& spec, std::size_t reps,
                           const std::function<double(const ScenarioSpec&)>& experiment,
                           int threads = 0);

// Row-major d x d rotation (det +1) for invariance testing.
std::vector<double> random_rotation(std::size_t d, Rng& rng);

// x -> scale * rot * x + shift, applied to every point; labels and ids kept.
Dataset apply_similarity(const Dataset& X, double scale, std::span<const double> rot,
                         std::span<const double> shift);

}  // namespace ild
