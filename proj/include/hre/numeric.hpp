#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hre {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

double normal_cdf(double x);
// 1 - Phi(x), accurate in the far tail.
double normal_sf(double x);
// Leading Mills-ratio term phi(x)/x for x > 0.
double normal_sf_mills(double x);
// 1 - Phi(x) <= exp(-x^2/2)/2 for x >= 0.
double normal_sf_chernoff(double x);

// Least-squares slope of y on x.
double ls_slope(std::span<const double> x, std::span<const double> y);

struct Quadrature {
  double value;
  double error;
};

// Adaptive Gauss-Kronrod on [a, b]; b may be +inf. Throws NumericError if the
// error estimate exceeds max(abs_tol, rel_tol*|value|).
Quadrature integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 1e-13);

// n log-spaced integers in [lo, hi], deduplicated and sorted.
std::vector<long> log_grid(long lo, long hi, int n);

}  // namespace hre
