#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace semrel {

struct Correlation {
  double spearman = 0.0;
  double pearson = 0.0;
};

/// 1-based ranks; tied values share the average of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Product-moment correlation. Throws std::invalid_argument on length
/// mismatch or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman (Pearson on average ranks) and Pearson. Needs at least 3 points.
Correlation rank_correlations(std::span<const double> predicted, std::span<const double> gold);

/// Two-tailed p-value for the difference of two independent correlations
/// after Fisher's z-transformation. Requires |r| < 1 and n > 3.
double fisher_z_test(double r1, std::size_t n1, double r2, std::size_t n2);

/// Standard normal upper tail P(Z > z).
double normal_upper_tail(double z);

}  // namespace semrel
