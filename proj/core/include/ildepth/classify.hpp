#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/locality.hpp"

namespace ild {

enum class ClassifierKind { MaxDepth, MaxLd, MaxIld, DKnn, PildAvg };

// A classifier choice plus its tuning knob. locality carries the depth
// locality for MaxLd and the integration upper edge for MaxIld and PildAvg;
// k is the neighbor count for DKnn. MaxDepth has no knob.
struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::MaxDepth;
  double locality = 1.0;
  std::size_t k = 1;

  static ClassifierSpec max_depth() { return {ClassifierKind::MaxDepth, 1.0, 1}; }
  static ClassifierSpec max_ld(double beta) { return {ClassifierKind::MaxLd, beta, 1}; }
  static ClassifierSpec max_ild(double b1) { return {ClassifierKind::MaxIld, b1, 1}; }
  static ClassifierSpec dknn(std::size_t k) { return {ClassifierKind::DKnn, 1.0, k}; }
  static ClassifierSpec pild_avg(double b1 = 1.0) { return {ClassifierKind::PildAvg, b1, 1}; }
};

struct Prediction {
  int group = 0;
  std::vector<double> scores;  // per-group criterion values, index g-1
};

// Assigns each query to the group under whose training points it scores
// highest; exact score ties go to the smaller group index. Training data
// must carry labels 1..G with every group nonempty (and at least n0 points
// per group for the locality-based kinds).
std::vector<Prediction> classify_batch(const ClassifierSpec& spec, const Dataset& queries,
                                       const Dataset& train, std::size_t n0 = 3,
                                       int threads = 0);

Prediction classify_max_depth(std::span<const double> z, const Dataset& train);
Prediction classify_max_ld(std::span<const double> z, const Dataset& train, double beta,
                           std::size_t n0 = 3);
Prediction classify_max_ild(std::span<const double> z, const Dataset& train, double b1,
                            std::size_t n0 = 3);
// Majority vote among the k training points ranked deepest around z; vote
// ties go to the smaller group index.
Prediction classify_dknn(std::span<const double> z, const Dataset& train, std::size_t k);
// Builds the partitioned depth matrix over train plus all queries jointly and
// scores each query by its mean column entry within each group's rows.
std::vector<Prediction> classify_pild(const Dataset& queries, const Dataset& train,
                                      double b1 = 1.0, std::size_t n0 = 3, int threads = 0);

// Fraction of queries whose predicted group matches the labels of `truth`.
double accuracy(std::span<const Prediction> predictions, const Dataset& truth);

struct CvReport {
  ClassifierKind kind = ClassifierKind::MaxLd;
  std::vector<double> parameters;
  std::vector<std::vector<double>> fold_accuracy;  // [parameter][fold]
  std::vector<double> mean_accuracy;               // per parameter
  double selected = 0.0;
  double selected_mean = 0.0;
};

// Stratified k-fold selection of the classifier knob. Folds are fixed by the
// seed; mean-accuracy ties select the smaller parameter. MaxDepth has
// nothing to tune and is rejected.
CvReport cross_validate(const Dataset& train, ClassifierKind kind,
                        std::span<const double> parameters, int folds = 5,
                        std::uint64_t seed = 1, std::size_t n0 = 3, int threads = 0);

// Localities 0.025, 0.050, ..., 1 for the depth kinds; 1..floor(n/4) for
// DKnn.
std::vector<double> default_parameter_grid(ClassifierKind kind, std::size_t train_size);

}  // namespace ild
