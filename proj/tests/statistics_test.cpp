#include <gtest/gtest.h>

#include <gsl/gsl_cdf.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bopgraph/errors.hpp"
#include "bopgraph/statistics.hpp"

namespace bopgraph {
namespace {

// Paired t statistic computed from scratch, p from GSL's t distribution.
double gsl_one_sided_p(const std::vector<double>& a, const std::vector<double>& b) {
  const auto n = static_cast<double>(a.size());
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double t = mean / std::sqrt(ss / (n - 1.0) / n);
  return gsl_cdf_tdist_Q(t, n - 1.0);
}

TEST(PairedTTest, IdenticalSamples) {
  const std::vector<double> a{0.7, 0.8, 0.9};
  EXPECT_EQ(paired_t_test_one_sided(a, a), 0.5);
}

TEST(PairedTTest, ConstantShift) {
  std::vector<double> b(20), a(20);
  for (int i = 0; i < 20; ++i) {
    b[static_cast<std::size_t>(i)] = i;
    a[static_cast<std::size_t>(i)] = i + 1.0;
  }
  EXPECT_EQ(paired_t_test_one_sided(a, b), 0.0);
  EXPECT_EQ(paired_t_test_one_sided(b, a), 1.0);
}

TEST(PairedTTest, HandComputedExample) {
  EXPECT_EQ(paired_t_test_one_sided(std::vector<double>{3, 4, 5}, std::vector<double>{1, 2, 3}),
            0.0);
  const double p =
      paired_t_test_one_sided(std::vector<double>{3, 4, 5}, std::vector<double>{1, 2, 4});
  // t = 5 with 2 degrees of freedom: p = (1 - 5 / sqrt(27)) / 2.
  EXPECT_NEAR(p, 0.5 * (1.0 - 5.0 / std::sqrt(27.0)), 1e-14);
  EXPECT_NEAR(p, 0.0189, 5e-5);
}

TEST(PairedTTest, MatchesReferenceImplementation) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_int_distribution<int> length(2, 30);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = length(rng);
    const double shift = 0.3 * noise(rng);
    std::vector<double> a, b;
    for (int i = 0; i < n; ++i) {
      b.push_back(noise(rng));
      a.push_back(b.back() + shift + 0.5 * noise(rng));
    }
    EXPECT_NEAR(paired_t_test_one_sided(a, b), gsl_one_sided_p(a, b), 1e-9) << "trial " << trial;
  }
}

TEST(PairedTTest, Preconditions) {
  EXPECT_THROW(paired_t_test_one_sided(std::vector<double>{1}, std::vector<double>{0}),
               InputError);
  EXPECT_THROW(paired_t_test_one_sided(std::vector<double>{1, 2}, std::vector<double>{0}),
               InputError);
}

TEST(Borda, DominantMethod) {
  const auto ranking = borda_ranking({"A", "B"}, {{0.9, 0.1}, {0.8, 0.7}, {0.6, 0.5}});
  ASSERT_EQ(ranking.size(), 2u);
  EXPECT_EQ(ranking[0].method, "A");
  EXPECT_EQ(ranking[0].rating, 6.0);
  EXPECT_EQ(ranking[1].rating, 3.0);
}

TEST(Borda, EightMethodsOneDataset) {
  std::vector<std::string> names;
  std::vector<double> scores;
  for (int i = 0; i < 8; ++i) {
    names.push_back("M" + std::to_string(i));
    scores.push_back(i * 0.1);
  }
  const auto ranking = borda_ranking(names, {scores});
  for (int p = 0; p < 8; ++p) {
    EXPECT_EQ(ranking[static_cast<std::size_t>(p)].method, "M" + std::to_string(7 - p));
    EXPECT_EQ(ranking[static_cast<std::size_t>(p)].rating, 8.0 - p);
  }
}

TEST(Borda, TiesShareMeanPoints) {
  const auto ranking = borda_ranking({"A", "B", "C", "D", "E", "F", "G", "H"},
                                     {{0.9, 0.9, 0.5, 0.4, 0.3, 0.2, 0.1, 0.0}});
  EXPECT_EQ(ranking[0].rating, 7.5);
  EXPECT_EQ(ranking[1].rating, 7.5);
  EXPECT_EQ(ranking[2].rating, 6.0);
}

TEST(Borda, RatingsSumToTotalPoints) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> level(0, 4);
  const std::size_t k = 6, d = 7;
  std::vector<std::string> names(k, "m");
  for (std::size_t i = 0; i < k; ++i) names[i] += std::to_string(i);
  std::vector<std::vector<double>> scores(d, std::vector<double>(k));
  for (auto& row : scores)
    for (auto& s : row) s = level(rng) / 4.0;
  double total = 0.0;
  for (const auto& e : borda_ranking(names, scores)) total += e.rating;
  EXPECT_DOUBLE_EQ(total, d * k * (k + 1) / 2.0);
}

TEST(Borda, MissingCell) {
  EXPECT_THROW(borda_ranking({"A", "B"}, {{0.5, std::nan("")}}), InputError);
  EXPECT_THROW(borda_ranking({"A", "B"}, {{0.5}}), InputError);
}

}  // namespace
}  // namespace bopgraph
