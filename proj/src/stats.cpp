#include "semrel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace semrel {

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("correlation inputs differ in length");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("zero variance in correlation input");
  return sxy / std::sqrt(sxx * syy);
}

Correlation rank_correlations(std::span<const double> predicted, std::span<const double> gold) {
  if (predicted.size() != gold.size()) throw std::invalid_argument("correlation inputs differ in length");
  if (predicted.size() < 3) throw std::invalid_argument("correlation needs at least 3 points");
  Correlation c;
  c.pearson = pearson(predicted, gold);
  auto rp = average_ranks(predicted);
  auto rg = average_ranks(gold);
  c.spearman = pearson(rp, rg);
  return c;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double fisher_z_test(double r1, std::size_t n1, double r2, std::size_t n2) {
  if (!(std::abs(r1) < 1.0) || !(std::abs(r2) < 1.0)) throw std::invalid_argument("Fisher z needs |r| < 1");
  if (n1 <= 3 || n2 <= 3) throw std::invalid_argument("Fisher z needs n > 3");
  const double z1 = std::atanh(r1);
  const double z2 = std::atanh(r2);
  const double se = std::sqrt(1.0 / static_cast<double>(n1 - 3) + 1.0 / static_cast<double>(n2 - 3));
  const double stat = std::abs(z1 - z2) / se;
  return std::min(1.0, 2.0 * normal_upper_tail(stat));
}

}  // namespace semrel
