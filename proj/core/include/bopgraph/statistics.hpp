#pragma once

#include <span>
#include <string>
#include <vector>

namespace bopgraph {

/// One-sided paired t-test of mean(a) > mean(b) on the differences a - b.
/// Returns the p-value P(T_{n-1} >= t). Degenerate cases: all differences
/// zero gives 0.5; zero variance with a nonzero mean gives 0 (positive
/// mean) or 1 (negative mean). Requires equal lengths >= 2.
double paired_t_test_one_sided(std::span<const double> a, std::span<const double> b);

struct BordaEntry {
  std::string method;
  double rating = 0.0;
};

/// Borda count over datasets. `scores[d][m]` is the mean accuracy of method
/// m on dataset d. On each dataset the best method earns k points and the
/// worst 1; exactly tied methods share the mean of the positions they span.
/// Returns the methods sorted by total rating, highest first (input order
/// breaks ties).
std::vector<BordaEntry> borda_ranking(const std::vector<std::string>& methods,
                                      const std::vector<std::vector<double>>& scores);

}  // namespace bopgraph
