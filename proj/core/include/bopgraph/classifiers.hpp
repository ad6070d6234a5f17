#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bopgraph/bop_model.hpp"
#include "bopgraph/graph.hpp"

namespace bopgraph {

enum class Method { kBop, kRl, kRnl, kRct, kHf, kRwwr, kDw1, kDw2 };

/// All eight methods in reporting order.
const std::vector<Method>& all_methods();
std::string_view method_name(Method method);
/// Case-insensitive; accepts the names produced by method_name.
std::optional<Method> parse_method(std::string_view name);
/// HF and DW1 take no hyperparameter.
bool method_has_parameter(Method method);
/// Values tried when tuning each method. Methods without a parameter get an
/// empty grid.
std::vector<double> default_grid(Method method);

struct ClassifierSpec {
  Method method = Method::kBop;
  /// theta (BoP), lambda (RL, RNL) or alpha (RCT, RWWR, DW2).
  std::optional<double> parameter;

  /// Throws InputError if the parameter is missing, superfluous or outside
  /// the method's domain.
  void validate() const;
  std::string to_string() const;
};

struct Prediction {
  /// Predicted class per node; labelled nodes keep their given class.
  std::vector<int> labels;
  /// n x m one-hot membership matrix U built from `labels`.
  Matrix memberships;
  /// n x m raw per-class scores (before the labelled-node override).
  Matrix scores;
};

/// Row-wise argmax of `scores` (lowest class index on ties), then
/// labelled nodes are reset to their given class.
Prediction prediction_from_scores(Matrix scores, const LabelAssignment& given);

/// Scores column c = within-class betweenness of class c. Every class needs
/// at least two seeds.
Prediction bop_classify(const BopModel& model, const LabelAssignment& labels);

/// Kernel alignment K Y for RL (K = (I + lambda L)^{-1}), RNL
/// (K = (I + lambda D^{-1/2} L D^{-1/2})^{-1}) and RCT (K = (D - alpha A)^{-1}),
/// with L = D - A and D = Diag(A 1).
Prediction kernel_classify(const Graph& graph, const LabelAssignment& labels, Method method,
                           double parameter);

/// Harmonic function: labelled nodes clamped to their indicator, unlabelled
/// scores solve (I - P_uu) F_u = P_ul Y_l.
Prediction harmonic_classify(const Graph& graph, const LabelAssignment& labels);

/// Random walk with restart: x_c = (1 - alpha) (I - alpha P^T)^{-1} u_c with u_c
/// uniform on the class-c seeds. alpha in (0, 1).
Prediction rwwr_classify(const Graph& graph, const LabelAssignment& labels, double alpha);

/// Discriminative random walks: expected visits to each node of walks that
/// start uniformly on the class-c seeds, continue with probability alpha per
/// step and stop on reaching any class-c seed. alpha = 1 is DW1.
Prediction dwalk_classify(const Graph& graph, const LabelAssignment& labels, double alpha);

/// Label-independent part of a classifier, built once per graph and
/// parameter so that cross-validation folds can reuse it.
class PreparedClassifier {
 public:
  virtual ~PreparedClassifier() = default;
  virtual Prediction predict(const LabelAssignment& labels) const = 0;
};

std::unique_ptr<PreparedClassifier> prepare_classifier(const Graph& graph,
                                                       const ClassifierSpec& spec);

/// prepare_classifier followed by predict.
Prediction classify(const Graph& graph, const LabelAssignment& labels, const ClassifierSpec& spec);

}  // namespace bopgraph
