#include "bopgraph/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "bopgraph/errors.hpp"

namespace bopgraph {

double paired_t_test_one_sided(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("paired t-test needs samples of equal length");
  if (a.size() < 2) throw InputError("paired t-test needs at least two pairs");
  const auto n = static_cast<double>(a.size());
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / n;
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) {
    if (mean == 0.0) return 0.5;
    return mean > 0.0 ? 0.0 : 1.0;
  }
  const double t = mean / (sd / std::sqrt(n));
  const boost::math::students_t dist(n - 1.0);
  return boost::math::cdf(boost::math::complement(dist, t));
}

std::vector<BordaEntry> borda_ranking(const std::vector<std::string>& methods,
                                      const std::vector<std::vector<double>>& scores) {
  const std::size_t k = methods.size();
  if (k == 0) throw InputError("Borda ranking needs at least one method");
  std::vector<BordaEntry> totals;
  for (const auto& m : methods) totals.push_back({m, 0.0});

  for (std::size_t d = 0; d < scores.size(); ++d) {
    const auto& row = scores[d];
    if (row.size() != k)
      throw InputError("dataset " + std::to_string(d) + " is missing method scores");
    for (std::size_t m = 0; m < k; ++m)
      if (std::isnan(row[m]))
        throw InputError("missing score for method " + methods[m] + " on dataset " +
                         std::to_string(d));
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return row[x] > row[y]; });
    // Position p (0 = best) is worth k - p points.
    for (std::size_t start = 0; start < k;) {
      std::size_t end = start + 1;
      while (end < k && row[order[end]] == row[order[start]]) ++end;
      double points = 0.0;
      for (std::size_t p = start; p < end; ++p) points += static_cast<double>(k - p);
      points /= static_cast<double>(end - start);
      for (std::size_t p = start; p < end; ++p) totals[order[p]].rating += points;
      start = end;
    }
  }
  std::stable_sort(totals.begin(), totals.end(),
                   [](const BordaEntry& x, const BordaEntry& y) { return x.rating > y.rating; });
  return totals;
}

}  // namespace bopgraph
