#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bopgraph/classifiers.hpp"
#include "bopgraph/errors.hpp"
#include "bopgraph/graph.hpp"

namespace bopgraph {

using Rng = std::mt19937_64;

/// Derives an independent generator for a position in the experiment grid
/// (rate index, run, method, fold ...), so results do not depend on the
/// order in which cells are evaluated.
Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

struct MaskedLabels {
  LabelAssignment train;
  /// Labelled nodes whose label was hidden, ascending.
  std::vector<std::size_t> test;
};

/// Keeps ceil(rate * #labelled) labels, allocated to classes in proportion
/// to their size (largest remainder), with at least two per class. Kept
/// nodes are drawn uniformly within each class.
MaskedLabels mask_labels(const LabelAssignment& truth, double rate, Rng& rng);

/// Random partition of the labelled nodes of `train` into
/// min(folds, #labelled) folds.
std::vector<std::vector<std::size_t>> partition_seeds(const LabelAssignment& train, int folds,
                                                      Rng& rng);

struct TuningResult {
  /// Chosen value; empty for methods without a parameter.
  std::optional<double> parameter;
  /// Mean held-out accuracy of the chosen value (NaN when no CV was run).
  double inner_accuracy = 0.0;
  std::size_t folds_used = 0;
  std::size_t folds_skipped = 0;
};

/// Inner cross-validation over `grid` on the seeds of `train`. A fold whose
/// removal leaves some class with fewer than two seeds is skipped with a
/// warning; if every fold is skipped an InputError is thrown. Grid values
/// whose systems cannot be solved are dropped with a warning. Ties go to the
/// smallest value. Grids with at most one value are returned without any
/// classification.
TuningResult nested_cv_tune(Method method, const std::vector<double>& grid, const Graph& graph,
                            const LabelAssignment& train, int inner_folds, Rng& rng,
                            const WarningSink& warnings = stderr_warnings());

/// Fraction of `nodes` whose predicted label equals the true one.
double accuracy(const std::vector<int>& predicted, const LabelAssignment& truth,
                const std::vector<std::size_t>& nodes);

/// Mean wall-clock seconds of full classify calls (model or kernel build
/// included).
double time_method(const ClassifierSpec& spec, const Graph& graph, const LabelAssignment& labels,
                   int repetitions);

struct MethodPlan {
  Method method = Method::kBop;
  std::vector<double> grid;
};

/// One plan per method with its default grid, in reporting order.
std::vector<MethodPlan> default_plans();

struct ExperimentConfig {
  std::vector<double> labeling_rates{0.1, 0.3, 0.5, 0.7, 0.9};
  int runs = 20;
  int outer_folds = 10;
  int inner_folds = 10;
  std::vector<MethodPlan> methods = default_plans();
  std::uint64_t seed = 0;
  /// Worker threads for independent (rate, run) cells.
  int jobs = 1;

  void validate() const;
};

struct ExperimentCell {
  Method method = Method::kBop;
  double rate = 0.0;
  int run = 0;
  /// Empty when the test set is empty.
  std::optional<double> accuracy;
  /// Tuned parameter per outer fold.
  std::vector<std::optional<double>> tuned;
  std::size_t test_size = 0;
  /// Mean wall time of the final classification, seconds.
  double seconds = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t num_nodes = 0;
  int num_classes = 0;
  /// Ordered by rate, then run, then method plan.
  std::vector<ExperimentCell> cells;

  /// Mean accuracy over runs with a nonempty test set.
  std::optional<double> mean_accuracy(Method method, double rate) const;
  /// Mean of the per-cell wall times.
  double mean_seconds(Method method) const;
  std::vector<double> accuracies(Method method, double rate) const;
};

/// For every rate and run: mask labels, then per method and outer fold tune
/// by inner CV on the kept seeds, classify with all kept seeds and score the
/// fold of hidden nodes. Outer folds split the hidden nodes by rotation over
/// ascending node id; a run's accuracy is the mean over its outer folds.
/// Each distinct warning is reported once per experiment.
ExperimentReport run_experiment(const Graph& graph, const LabelAssignment& truth,
                                const ExperimentConfig& config,
                                const WarningSink& warnings = stderr_warnings());

/// Full report as JSON text. Wall times are included only on request, since
/// they are the one nondeterministic field.
std::string report_to_json(const ExperimentReport& report, bool include_timings = false);
/// `method,<rate>...` table of mean accuracies, one row per method.
std::string aggregate_csv(const ExperimentReport& report);
/// `dataset,<method>...` row of mean classification seconds.
std::string timing_csv(const ExperimentReport& report, const std::string& dataset);

/// Number formatting shared by every text output: 12 significant digits.
std::string format_number(double value);

}  // namespace bopgraph
