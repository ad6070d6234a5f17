#include "bopgraph/betweenness.hpp"

#include <string>

#include "bopgraph/errors.hpp"

namespace bopgraph {
namespace {

using Index = Eigen::Index;

void require_pair(const BopModel& model, std::size_t source, std::size_t target) {
  if (model.size() < 3) throw InputError("intermediate posteriors need at least 3 nodes");
  if (source >= model.size() || target >= model.size())
    throw InputError("node id out of range");
  if (source == target) throw InputError("source and target must differ");
}

std::size_t validate_indicator(const Vector& y, std::size_t n, const char* name) {
  if (static_cast<std::size_t>(y.size()) != n)
    throw InputError(std::string(name) + " indicator has wrong length");
  std::size_t members = 0;
  for (Index i = 0; i < y.size(); ++i) {
    if (y(i) != 0.0 && y(i) != 1.0)
      throw InputError(std::string(name) + " indicator must be binary");
    if (y(i) == 1.0) ++members;
  }
  return members;
}

Vector l1_normalised(Vector v) {
  // Round-off in the within-class subtraction can leave tiny negatives.
  v = v.cwiseMax(0.0);
  const double total = v.sum();
  if (total > 0.0) v /= total;
  return v;
}

}  // namespace

IntermediatePosterior intermediate_posterior(const BopModel& model, std::size_t source,
                                             std::size_t target) {
  require_pair(model, source, target);
  const Matrix& z = model.fundamental();
  const Vector& dz = model.fundamental_diagonal();
  const auto i = static_cast<Index>(source);
  const auto k = static_cast<Index>(target);
  IntermediatePosterior out{source, target, Vector::Zero(z.rows())};
  for (Index j = 0; j < z.rows(); ++j)
    if (j != i && j != k) out.probs(j) = z(i, j) * z(j, k) / dz(j);
  const double normaliser = out.probs.sum();
  if (!(normaliser > 0.0))
    throw NumericalError("no intermediate weight between nodes " + std::to_string(source) +
                         " and " + std::to_string(target) + " (underflow at theta=" +
                         std::to_string(model.theta()) + ")");
  out.probs /= normaliser;
  return out;
}

ScoreVector bop_betweenness(const BopModel& model) {
  if (model.size() < 3) throw InputError("betweenness needs at least 3 nodes");
  const Matrix& z0 = model.fundamental_offdiag();
  const Vector inv_dz = model.fundamental_diagonal().cwiseInverse();
  const Index n = z0.rows();

  const Matrix normalisers = z0 * inv_dz.asDiagonal() * z0;
  Matrix inv_normalisers = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i) {
      if (i == k) continue;
      if (!(normalisers(i, k) > 0.0))
        throw NumericalError("betweenness normaliser n_ik vanished for pair (" +
                             std::to_string(i) + ", " + std::to_string(k) +
                             "); theta=" + std::to_string(model.theta()) + " is too large");
      inv_normalisers(i, k) = 1.0 / normalisers(i, k);
    }

  // diag(Z0^T M Z0^T)_j = sum_k (Z0^T M)_jk * z0_jk
  const Matrix left = z0.transpose() * inv_normalisers;
  const Vector diagonal = left.cwiseProduct(z0).rowwise().sum();
  return {inv_dz.cwiseProduct(diagonal), ScoreKind::kBetweenness};
}

ScoreVector group_betweenness(const BopModel& model, const Vector& from_set,
                              const Vector& to_set) {
  const std::size_t n = model.size();
  if (validate_indicator(from_set, n, "source set") == 0 ||
      validate_indicator(to_set, n, "target set") == 0)
    throw InputError("group betweenness sets must be nonempty");
  if (from_set.cwiseProduct(to_set).sum() != 0.0)
    throw InputError("group betweenness sets must be disjoint");
  const Matrix& z0 = model.fundamental_offdiag();
  const Vector numerator = model.fundamental_diagonal().cwiseInverse().cwiseProduct(
      (z0.transpose() * from_set).cwiseProduct(z0 * to_set));
  if (!(numerator.sum() > 0.0))
    throw NumericalError("group betweenness numerator vanished");
  return {l1_normalised(numerator), ScoreKind::kGroupBetweenness};
}

ScoreVector within_class_betweenness(const BopModel& model, const Vector& class_indicator,
                                     int class_id) {
  const std::size_t members = validate_indicator(class_indicator, model.size(), "class");
  if (members < 2)
    throw DegenerateClassError(class_id, "degenerate class " + std::to_string(class_id) + ": " +
                                             std::to_string(members) +
                                             " labeled node(s), at least 2 required");
  const Matrix& z0 = model.fundamental_offdiag();
  const Vector& y = class_indicator;
  const Vector outer = (z0.transpose() * y).cwiseProduct(z0 * y);
  const Vector same_endpoint = z0.transpose().cwiseProduct(z0) * y;
  const Vector numerator =
      model.fundamental_diagonal().cwiseInverse().cwiseProduct(outer - same_endpoint);
  Vector scores = l1_normalised(numerator);
  if (!(scores.sum() > 0.0))
    throw DegenerateClassError(class_id, "degenerate class " + std::to_string(class_id) +
                                             ": within-class betweenness is zero everywhere");
  return {std::move(scores), ScoreKind::kGroupBetweenness};
}

namespace direct {

ScoreVector bop_betweenness(const BopModel& model) {
  if (model.size() < 3) throw InputError("betweenness needs at least 3 nodes");
  const Matrix& z = model.fundamental();
  const Index n = z.rows();
  Vector bet = Vector::Zero(n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) {
      if (i == k) continue;
      double normaliser = 0.0;
      for (Index j = 0; j < n; ++j)
        if (j != i && j != k) normaliser += z(i, j) * z(j, k) / z(j, j);
      if (!(normaliser > 0.0)) throw NumericalError("betweenness normaliser vanished");
      for (Index j = 0; j < n; ++j)
        if (j != i && j != k) bet(j) += z(i, j) * z(j, k) / z(j, j) / normaliser;
    }
  return {std::move(bet), ScoreKind::kBetweenness};
}

ScoreVector group_betweenness(const BopModel& model, const Vector& from_set, const Vector& to_set) {
  const Matrix& z = model.fundamental();
  const Index n = z.rows();
  Vector numerator = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    double sum = 0.0;
    for (Index a = 0; a < n; ++a) {
      if (from_set(a) == 0.0 || a == j) continue;
      for (Index b = 0; b < n; ++b) {
        if (to_set(b) == 0.0 || b == j || b == a) continue;
        sum += z(a, j) * z(j, b);
      }
    }
    numerator(j) = sum / z(j, j);
  }
  const double total = numerator.sum();
  if (!(total > 0.0)) throw NumericalError("group betweenness numerator vanished");
  return {numerator / total, ScoreKind::kGroupBetweenness};
}

}  // namespace direct

}  // namespace bopgraph
