#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "hre/distributions.hpp"

namespace hre {

// Exact law of S_n = X_1 + ... + X_n for finitely supported X.
struct SumLaw {
  std::vector<double> values;  // ascending
  std::vector<double> probs;

  // P(|S_n| >= x); lattice points within 1e-9 relative of x count as >= x.
  double abs_tail(double x) const;
  // P(|S_n - c| >= x)
  double centered_abs_tail(double c, double x) const;
  // Lower median: smallest v with P(S <= v) >= 1/2.
  double lower_median() const;
  double total() const;
};

// Two-point laws go through log-binomial weights; other atomic laws are
// convolved on their common lattice by repeated squaring.
SumLaw exact_sum_law(const std::vector<std::pair<double, double>>& pmf, long n);
// Atomic X with the summands truncated to |X| < trunc (values outside map to 0).
SumLaw exact_sum_law(const DistModel& d, long n,
                     double trunc = std::numeric_limits<double>::infinity());

// Largest step s with every value an integer multiple of s (within 1e-9), or 0.
double lattice_step(const std::vector<double>& values);

}  // namespace hre
