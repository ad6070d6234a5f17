#include "bopgraph/classifiers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "bopgraph/betweenness.hpp"
#include "bopgraph/errors.hpp"
#include "bopgraph/linalg.hpp"

namespace bopgraph {
namespace {

using Index = Eigen::Index;

std::vector<double> decades(int lowest, int highest) {
  std::vector<double> out;
  for (int e = lowest; e <= highest; ++e) out.push_back(std::stod("1e" + std::to_string(e)));
  return out;
}

std::vector<double> tenths(int highest) {
  std::vector<double> out;
  for (int k = 1; k <= highest; ++k) out.push_back(k / 10.0);
  return out;
}

std::string context(Method method, double parameter) {
  std::ostringstream out;
  out << method_name(method) << " system at parameter " << parameter;
  return out.str();
}

void require_seeds(const LabelAssignment& labels, std::size_t min_seeds) {
  labels.require_min_seeds(min_seeds);
}

void require_size(const Graph& graph, const LabelAssignment& labels) {
  if (labels.size() != graph.size())
    throw InputError("label assignment covers " + std::to_string(labels.size()) +
                     " nodes, graph has " + std::to_string(graph.size()));
}

Vector degrees(const Graph& graph) { return graph.affinities().rowwise().sum(); }

class BopPrepared final : public PreparedClassifier {
 public:
  BopPrepared(const Graph& graph, double theta) : model_(build_model(graph, theta)) {}
  Prediction predict(const LabelAssignment& labels) const override {
    return bop_classify(model_, labels);
  }

 private:
  BopModel model_;
};

class KernelPrepared final : public PreparedClassifier {
 public:
  KernelPrepared(const Graph& graph, Method method, double parameter)
      : n_(graph.size()), lu_(kernel_system(graph, method, parameter), context(method, parameter)) {}

  Prediction predict(const LabelAssignment& labels) const override {
    if (labels.size() != n_) throw InputError("label assignment size does not match graph");
    require_seeds(labels, 1);
    return prediction_from_scores(lu_.solve(labels.indicator()), labels);
  }

 private:
  static Matrix kernel_system(const Graph& graph, Method method, double parameter) {
    const Matrix& a = graph.affinities();
    const Vector d = degrees(graph);
    const Index n = a.rows();
    const Matrix laplacian = Matrix(d.asDiagonal()) - a;
    switch (method) {
      case Method::kRl:
        return Matrix::Identity(n, n) + parameter * laplacian;
      case Method::kRnl: {
        const Vector scale = d.cwiseSqrt().cwiseInverse();
        return Matrix::Identity(n, n) +
               parameter * (scale.asDiagonal() * laplacian * scale.asDiagonal());
      }
      case Method::kRct:
        return Matrix(d.asDiagonal()) - parameter * a;
      default:
        throw InputError("not a kernel method: " + std::string(method_name(method)));
    }
  }

  std::size_t n_;
  GuardedLu lu_;
};

class HarmonicPrepared final : public PreparedClassifier {
 public:
  explicit HarmonicPrepared(const Graph& graph) : p_(reference_transitions(graph).matrix()) {}

  Prediction predict(const LabelAssignment& labels) const override {
    if (labels.size() != static_cast<std::size_t>(p_.rows()))
      throw InputError("label assignment size does not match graph");
    require_seeds(labels, 1);
    const Matrix y = labels.indicator();
    Matrix scores = y;
    const auto unlabeled = labels.unlabeled_nodes();
    const auto labeled = labels.labeled_nodes();
    if (!unlabeled.empty()) {
      const auto nu = static_cast<Index>(unlabeled.size());
      const auto nl = static_cast<Index>(labeled.size());
      Matrix system(nu, nu), rhs = Matrix::Zero(nu, y.cols());
      for (Index r = 0; r < nu; ++r) {
        const auto i = static_cast<Index>(unlabeled[static_cast<std::size_t>(r)]);
        for (Index s = 0; s < nu; ++s)
          system(r, s) = (r == s ? 1.0 : 0.0) - p_(i, static_cast<Index>(unlabeled[static_cast<std::size_t>(s)]));
        for (Index s = 0; s < nl; ++s) {
          const auto l = static_cast<Index>(labeled[static_cast<std::size_t>(s)]);
          rhs.row(r) += p_(i, l) * y.row(l);
        }
      }
      const Matrix harmonic = GuardedLu(system, "harmonic function system").solve(rhs);
      for (Index r = 0; r < nu; ++r)
        scores.row(static_cast<Index>(unlabeled[static_cast<std::size_t>(r)])) = harmonic.row(r);
    }
    return prediction_from_scores(std::move(scores), labels);
  }

 private:
  Matrix p_;
};

class RwwrPrepared final : public PreparedClassifier {
 public:
  RwwrPrepared(const Graph& graph, double alpha)
      : alpha_(alpha),
        lu_(Matrix::Identity(static_cast<Index>(graph.size()), static_cast<Index>(graph.size())) -
                alpha * reference_transitions(graph).matrix().transpose(),
            context(Method::kRwwr, alpha)) {}

  Prediction predict(const LabelAssignment& labels) const override {
    if (labels.size() != static_cast<std::size_t>(lu_.size()))
      throw InputError("label assignment size does not match graph");
    require_seeds(labels, 1);
    Matrix restart = labels.indicator();
    for (Index c = 0; c < restart.cols(); ++c) restart.col(c) /= restart.col(c).sum();
    return prediction_from_scores((1.0 - alpha_) * lu_.solve(restart), labels);
  }

 private:
  double alpha_;
  GuardedLu lu_;
};

class DwalkPrepared final : public PreparedClassifier {
 public:
  DwalkPrepared(const Graph& graph, double alpha)
      : alpha_(alpha), p_(reference_transitions(graph).matrix()) {}

  Prediction predict(const LabelAssignment& labels) const override {
    if (labels.size() != static_cast<std::size_t>(p_.rows()))
      throw InputError("label assignment size does not match graph");
    require_seeds(labels, 1);
    const Index n = p_.rows();
    Matrix scores = Matrix::Zero(n, labels.num_classes());
    for (int c = 0; c < labels.num_classes(); ++c) {
      std::vector<Index> seeds, transient;
      for (Index i = 0; i < n; ++i)
        (labels.label(static_cast<std::size_t>(i)) == c ? seeds : transient).push_back(i);
      if (transient.empty()) continue;
      const auto nt = static_cast<Index>(transient.size());
      // (I - Q)^T x = B^T u, with u uniform over the seeds.
      Matrix system(nt, nt);
      Vector entry = Vector::Zero(nt);
      for (Index r = 0; r < nt; ++r) {
        for (Index s = 0; s < nt; ++s)
          system(s, r) = (r == s ? 1.0 : 0.0) - alpha_ * p_(transient[static_cast<std::size_t>(r)],
                                                            transient[static_cast<std::size_t>(s)]);
        for (Index seed : seeds) entry(r) += alpha_ * p_(seed, transient[static_cast<std::size_t>(r)]);
      }
      entry /= static_cast<double>(seeds.size());
      const Vector visits =
          GuardedLu(system, context(alpha_ == 1.0 ? Method::kDw1 : Method::kDw2, alpha_) +
                                ", class " + std::to_string(c))
              .solve(entry);
      for (Index r = 0; r < nt; ++r) scores(transient[static_cast<std::size_t>(r)], c) = visits(r);
    }
    return prediction_from_scores(std::move(scores), labels);
  }

 private:
  double alpha_;
  Matrix p_;
};

}  // namespace

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::kRl,   Method::kRnl, Method::kRct,
                                           Method::kHf,   Method::kRwwr, Method::kDw1,
                                           Method::kDw2,  Method::kBop};
  return methods;
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kBop: return "BOP";
    case Method::kRl: return "RL";
    case Method::kRnl: return "RNL";
    case Method::kRct: return "RCT";
    case Method::kHf: return "HF";
    case Method::kRwwr: return "RWWR";
    case Method::kDw1: return "DW1";
    case Method::kDw2: return "DW2";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  for (Method m : all_methods())
    if (method_name(m) == upper) return m;
  return std::nullopt;
}

bool method_has_parameter(Method method) {
  return method != Method::kHf && method != Method::kDw1;
}

std::vector<double> default_grid(Method method) {
  switch (method) {
    case Method::kRl:
    case Method::kRnl: return decades(-6, 6);
    case Method::kRct:
    case Method::kRwwr: return tenths(9);
    case Method::kDw2: return tenths(10);
    case Method::kBop: return decades(-6, 2);
    case Method::kHf:
    case Method::kDw1: return {};
  }
  return {};
}

void ClassifierSpec::validate() const {
  const std::string name(method_name(method));
  if (!method_has_parameter(method)) {
    if (parameter) throw InputError(name + " takes no parameter");
    return;
  }
  if (!parameter) throw InputError(name + " requires a parameter");
  const double v = *parameter;
  if (!std::isfinite(v)) throw InputError(name + " parameter must be finite");
  switch (method) {
    case Method::kBop:
      if (!(v > 0.0)) throw InputError("theta must be positive");
      break;
    case Method::kRl:
    case Method::kRnl:
      if (!(v > 0.0)) throw InputError(name + ": lambda must be positive");
      break;
    case Method::kRct:
    case Method::kDw2:
      if (!(v > 0.0 && v <= 1.0)) throw InputError(name + ": alpha must lie in (0, 1]");
      break;
    case Method::kRwwr:
      if (!(v > 0.0 && v < 1.0)) throw InputError(name + ": alpha must lie in (0, 1)");
      break;
    default:
      break;
  }
}

std::string ClassifierSpec::to_string() const {
  std::ostringstream out;
  out << method_name(method);
  if (parameter) out << '(' << *parameter << ')';
  return out.str();
}

Prediction prediction_from_scores(Matrix scores, const LabelAssignment& given) {
  const Index n = scores.rows();
  if (static_cast<std::size_t>(n) != given.size() || scores.cols() != given.num_classes())
    throw InputError("score matrix shape does not match label assignment");
  Prediction out;
  out.labels.resize(static_cast<std::size_t>(n));
  out.memberships = Matrix::Zero(n, scores.cols());
  for (Index i = 0; i < n; ++i) {
    int best = 0;
    for (Index c = 1; c < scores.cols(); ++c)
      if (scores(i, c) > scores(i, best)) best = static_cast<int>(c);
    if (given.is_labeled(static_cast<std::size_t>(i))) best = given.label(static_cast<std::size_t>(i));
    out.labels[static_cast<std::size_t>(i)] = best;
    out.memberships(i, best) = 1.0;
  }
  out.scores = std::move(scores);
  return out;
}

Prediction bop_classify(const BopModel& model, const LabelAssignment& labels) {
  if (labels.size() != model.size()) throw InputError("label assignment size does not match model");
  const auto n = static_cast<Index>(model.size());
  Matrix scores(n, labels.num_classes());
  for (int c = 0; c < labels.num_classes(); ++c)
    scores.col(c) = within_class_betweenness(model, labels.class_indicator(c), c).values;
  return prediction_from_scores(std::move(scores), labels);
}

Prediction kernel_classify(const Graph& graph, const LabelAssignment& labels, Method method,
                           double parameter) {
  if (method != Method::kRl && method != Method::kRnl && method != Method::kRct)
    throw InputError("kernel_classify handles RL, RNL and RCT only");
  require_size(graph, labels);
  ClassifierSpec{method, parameter}.validate();
  return KernelPrepared(graph, method, parameter).predict(labels);
}

Prediction harmonic_classify(const Graph& graph, const LabelAssignment& labels) {
  require_size(graph, labels);
  return HarmonicPrepared(graph).predict(labels);
}

Prediction rwwr_classify(const Graph& graph, const LabelAssignment& labels, double alpha) {
  require_size(graph, labels);
  ClassifierSpec{Method::kRwwr, alpha}.validate();
  return RwwrPrepared(graph, alpha).predict(labels);
}

Prediction dwalk_classify(const Graph& graph, const LabelAssignment& labels, double alpha) {
  require_size(graph, labels);
  ClassifierSpec{Method::kDw2, alpha}.validate();
  return DwalkPrepared(graph, alpha).predict(labels);
}

std::unique_ptr<PreparedClassifier> prepare_classifier(const Graph& graph,
                                                       const ClassifierSpec& spec) {
  spec.validate();
  switch (spec.method) {
    case Method::kBop: return std::make_unique<BopPrepared>(graph, *spec.parameter);
    case Method::kRl:
    case Method::kRnl:
    case Method::kRct: return std::make_unique<KernelPrepared>(graph, spec.method, *spec.parameter);
    case Method::kHf: return std::make_unique<HarmonicPrepared>(graph);
    case Method::kRwwr: return std::make_unique<RwwrPrepared>(graph, *spec.parameter);
    case Method::kDw1: return std::make_unique<DwalkPrepared>(graph, 1.0);
    case Method::kDw2: return std::make_unique<DwalkPrepared>(graph, *spec.parameter);
  }
  throw InputError("unknown method");
}

Prediction classify(const Graph& graph, const LabelAssignment& labels, const ClassifierSpec& spec) {
  require_size(graph, labels);
  return prepare_classifier(graph, spec)->predict(labels);
}

}  // namespace bopgraph
