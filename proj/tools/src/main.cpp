// ildepth: integrated local depth toolkit. Every successful run appends one
// JSON line (parameters, seed, outputs, wall time) to the manifest so results
// stay traceable. Exit codes: 0 success, 2 bad input, 1 compute failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "ildepth/parallel.hpp"

#ifndef ILDEPTH_VERSION
#define ILDEPTH_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;

void append_manifest(const std::string& path, const json& line) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  out << line.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integrated local depth toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 0;
  std::string manifest_path = "ildepth_runs.jsonl";
  bool no_manifest = false;
  app.add_option("--threads", threads, "worker threads, 0 means all cores")
      ->capture_default_str();
  app.add_option("--manifest", manifest_path, "run manifest path (json lines)")
      ->capture_default_str();
  app.add_flag("--no-manifest", no_manifest, "skip the run manifest");

  ildcli::DepthOpts dop;
  CLI::App* depth = app.add_subcommand(
      "depth", "per-point local depth profile and integrated depth");
  depth->add_option("--data", dop.data, "data csv")->required()->check(CLI::ExistingFile);
  depth->add_option("--query", dop.query, "evaluate at these points instead")
      ->check(CLI::ExistingFile);
  depth->add_option("--weights", dop.weights, "weight spec")->capture_default_str();
  depth->add_option("--n0", dop.n0, "smallest neighborhood size")->capture_default_str();
  depth->add_option("--out", dop.out, "output csv")->required();

  ildcli::PildOpts pop;
  CLI::App* pild = app.add_subcommand("pild", "partitioned integrated-depth matrix");
  pild->add_option("--data", pop.data, "data csv")->required()->check(CLI::ExistingFile);
  pild->add_option("--weights", pop.weights, "weight spec")->capture_default_str();
  pild->add_option("--n0", pop.n0, "smallest neighborhood size")->capture_default_str();
  pild->add_option("--out", pop.out, "matrix csv")->required();
  pild->add_option("--colsums", pop.colsums, "also write column sums");
  pild->add_option("--rowsums", pop.rowsums, "also write row sums (integrated depth)");

  ildcli::SimilarityOpts sop;
  CLI::App* similarity = app.add_subcommand("similarity", "depth-based similarity matrix");
  similarity->add_option("--data", sop.data, "data csv")->required()->check(CLI::ExistingFile);
  similarity->add_option("--kind", sop.kind, "pild or sd")->capture_default_str();
  similarity->add_option("--weights", sop.weights, "weight spec (pild kind)")
      ->capture_default_str();
  similarity->add_option("--n0", sop.n0, "smallest neighborhood size")->capture_default_str();
  similarity->add_flag("--dissimilarity", sop.dissimilarity, "write 1 - similarity");
  similarity->add_option("--out", sop.out, "matrix csv")->required();

  ildcli::ClassifyOpts cop;
  CLI::App* classify = app.add_subcommand("classify", "depth-based classification");
  classify->add_option("--train", cop.train, "labeled training csv")
      ->required()->check(CLI::ExistingFile);
  classify->add_option("--test", cop.test, "query csv")->required()->check(CLI::ExistingFile);
  classify->add_option("--method", cop.method, "md, ld, ild, dknn, or pild")->required();
  CLI::Option* cparam =
      classify->add_option("--param", cop.param, "locality in (0,1], or k for dknn");
  classify->add_flag("--cv", cop.cv, "cross-validate the parameter");
  classify->add_option("--folds", cop.folds, "cv folds")->capture_default_str();
  classify->add_option("--seed", cop.seed, "cv shuffle seed")->capture_default_str();
  classify->add_option("--n0", cop.n0, "smallest neighborhood size")->capture_default_str();
  classify->add_option("--out", cop.out, "predictions csv")->required();

  ildcli::OutlierOpts oop;
  CLI::App* outliers = app.add_subcommand("outliers", "outlyingness scores and flags");
  outliers->add_option("--data", oop.data, "data csv")->required()->check(CLI::ExistingFile);
  outliers->add_option("--method", oop.method, "gd, ld, ild, pildsum, or lof")->required();
  outliers->add_option("--locality", oop.locality, "locality for depth methods")
      ->capture_default_str();
  outliers->add_option("--k", oop.k, "lof neighborhood size");
  outliers->add_option("--dissim", oop.dissim, "lof dissimilarity: euclid, sd, or pild")
      ->capture_default_str();
  outliers->add_option("--weights", oop.weights, "weight spec for pild dissimilarity")
      ->capture_default_str();
  outliers->add_option("--n0", oop.n0, "smallest neighborhood size")->capture_default_str();
  CLI::Option* ocount = outliers->add_option("--count", oop.count, "flag this many points");
  outliers->add_option("--rate", oop.rate, "flag this fraction of points")->excludes(ocount);
  outliers->add_option("--truth-col", oop.truth_col, "column marking true outliers");
  outliers->add_option("--truth-value", oop.truth_value,
                       "outlier value in the truth column (default: any nonzero)");
  outliers->add_option("--out", oop.out, "scores csv")->required();

  ildcli::SimulateOpts mop;
  CLI::App* simulate = app.add_subcommand("simulate", "generate a benchmark dataset");
  simulate->add_option("--scenario", mop.scenario, "setup1..setup4, toyA, or toyB")
      ->required();
  simulate->add_option("--seed", mop.seed, "rng seed")->capture_default_str();
  simulate->add_option("--train-per-class", mop.train_per_class, "")->capture_default_str();
  simulate->add_option("--test-per-class", mop.test_per_class, "")->capture_default_str();
  simulate->add_option("--inliers", mop.inliers, "")->capture_default_str();
  simulate->add_option("--outliers", mop.outliers, "")->capture_default_str();
  simulate->add_option("--out", mop.out, "dataset csv")->required();
  simulate->add_option("--test-out", mop.test_out, "write the test block separately");

  ildcli::ReplicateOpts rop;
  CLI::App* replicate = app.add_subcommand("replicate", "replicated benchmark summary");
  replicate->add_option("--scenario", rop.scenario, "setup1..setup4, toyA, or toyB")
      ->required();
  replicate->add_option("--method", rop.method,
                        "classifiers: md, ld, ild, dknn, pild; outlier scores: gd, "
                        "ld, ild, pildsum, lof")
      ->required();
  replicate->add_option("--reps", rop.reps, "replications")->capture_default_str();
  CLI::Option* rparam =
      replicate->add_option("--param", rop.param, "locality, or k for dknn");
  replicate->add_flag("--cv", rop.cv, "cross-validate per replication");
  replicate->add_option("--folds", rop.folds, "cv folds")->capture_default_str();
  replicate->add_option("--seed", rop.seed, "base seed")->capture_default_str();
  replicate->add_option("--n0", rop.n0, "smallest neighborhood size")->capture_default_str();
  replicate->add_option("--k", rop.k, "lof neighborhood size");
  replicate->add_option("--dissim", rop.dissim, "lof dissimilarity")->capture_default_str();
  replicate->add_option("--weights", rop.weights, "weight spec for pild dissimilarity")
      ->capture_default_str();
  replicate->add_option("--train-per-class", rop.train_per_class, "")->capture_default_str();
  replicate->add_option("--test-per-class", rop.test_per_class, "")->capture_default_str();
  replicate->add_option("--inliers", rop.inliers, "")->capture_default_str();
  replicate->add_option("--outliers", rop.outliers, "")->capture_default_str();
  replicate->add_option("--out", rop.out, "summary csv");

  ildcli::CheckOpts kop;
  CLI::App* check = app.add_subcommand("check-invariants", "run the invariant suites");
  check->add_option("--seed", kop.seed, "rng seed")->capture_default_str();
  check->add_option("--n", kop.n, "points per dataset")->capture_default_str();
  check->add_option("--d", kop.d, "dimension")->capture_default_str();
  check->add_option("--reps", kop.reps, "datasets")->capture_default_str();
  check->add_option("--n0", kop.n0, "smallest neighborhood size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("LOCALDEPTH_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) {
      std::fprintf(stderr, "ildepth: LOCALDEPTH_THREADS must be a nonnegative integer\n");
      return 2;
    }
    threads = static_cast<int>(v);
  }
  cop.param_given = cparam->count() > 0;
  rop.param_given = rparam->count() > 0;

  ildcli::RunContext ctx;
  ctx.threads = threads;
  int rc = 0;
  std::string name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (depth->parsed()) {
      name = "depth";
      ildcli::run_depth(dop, ctx);
    } else if (pild->parsed()) {
      name = "pild";
      ildcli::run_pild(pop, ctx);
    } else if (similarity->parsed()) {
      name = "similarity";
      ildcli::run_similarity(sop, ctx);
    } else if (classify->parsed()) {
      name = "classify";
      ildcli::run_classify(cop, ctx);
    } else if (outliers->parsed()) {
      name = "outliers";
      ildcli::run_outliers(oop, ctx);
    } else if (simulate->parsed()) {
      name = "simulate";
      ildcli::run_simulate(mop, ctx);
    } else if (replicate->parsed()) {
      name = "replicate";
      ildcli::run_replicate(rop, ctx);
    } else {
      name = "check-invariants";
      rc = ildcli::run_check(kop, ctx);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "ildepth: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ildepth: %s\n", e.what());
    return 1;
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  if (!no_manifest) {
    json line = {{"tool", "ildepth"},
                 {"version", ILDEPTH_VERSION},
                 {"subcommand", name},
                 {"argv", std::vector<std::string>(argv + 1, argv + argc)},
                 {"threads", ild::resolve_threads(threads)},
                 {"seed", ctx.parameters.contains("seed") ? ctx.parameters["seed"]
                                                          : json()},
                 {"parameters", ctx.parameters},
                 {"results", ctx.results},
                 {"outputs", ctx.outputs},
                 {"wall_ms", ms},
                 {"status", rc == 0 ? "ok" : "check-failed"}};
    try {
      append_manifest(manifest_path, line);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "ildepth: %s\n", e.what());
      return 2;
    }
  }
  return rc;
}
