#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ildcli {

// Shared run state: thread budget in, manifest material out.
struct RunContext {
  int threads = 0;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> outputs;
};

struct DepthOpts {
  std::string data;
  std::string query;
  std::string weights = "uniform:auto,1";
  std::string out;
  std::size_t n0 = 3;
};

struct PildOpts {
  std::string data;
  std::string weights = "uniform:auto,1";
  std::string out;
  std::string colsums;
  std::string rowsums;
  std::size_t n0 = 3;
};

struct SimilarityOpts {
  std::string data;
  std::string kind = "pild";
  std::string weights = "uniform:auto,1";
  std::string out;
  std::size_t n0 = 3;
  bool dissimilarity = false;
};

struct ClassifyOpts {
  std::string train;
  std::string test;
  std::string method;
  std::string out;
  double param = 1.0;
  bool param_given = false;
  bool cv = false;
  std::size_t folds = 5;
  std::uint64_t seed = 1;
  std::size_t n0 = 3;
};

struct OutlierOpts {
  std::string data;
  std::string method;
  std::string dissim = "euclid";
  std::string weights = "uniform:auto,1";
  std::string truth_col;
  std::string out;
  double locality = 1.0;
  std::size_t k = 0;
  std::size_t n0 = 3;
  std::optional<std::size_t> count;
  std::optional<double> rate;
  std::optional<int> truth_value;
};

struct SimulateOpts {
  std::string scenario;
  std::string out;
  std::string test_out;
  std::size_t train_per_class = 200;
  std::size_t test_per_class = 100;
  std::size_t inliers = 400;
  std::size_t outliers = 100;
  std::uint64_t seed = 1;
};

struct ReplicateOpts {
  std::string scenario;
  std::string method;
  std::string dissim = "euclid";
  std::string weights = "uniform:auto,1";
  std::string out;
  std::size_t reps = 20;
  double param = 1.0;
  bool param_given = false;
  bool cv = false;
  std::size_t folds = 5;
  std::uint64_t seed = 1;
  std::size_t n0 = 3;
  std::size_t k = 0;
  std::size_t train_per_class = 200;
  std::size_t test_per_class = 100;
  std::size_t inliers = 400;
  std::size_t outliers = 100;
};

struct CheckOpts {
  std::uint64_t seed = 7;
  std::size_t n = 60;
  std::size_t d = 2;
  std::size_t reps = 5;
  std::size_t n0 = 3;
};

void run_depth(const DepthOpts& o, RunContext& ctx);
void run_pild(const PildOpts& o, RunContext& ctx);
void run_similarity(const SimilarityOpts& o, RunContext& ctx);
void run_classify(const ClassifyOpts& o, RunContext& ctx);
void run_outliers(const OutlierOpts& o, RunContext& ctx);
void run_simulate(const SimulateOpts& o, RunContext& ctx);
void run_replicate(const ReplicateOpts& o, RunContext& ctx);
// Prints one line per suite; returns 0 when every suite passes, 1 otherwise.
int run_check(const CheckOpts& o, RunContext& ctx);

}  // namespace ildcli
