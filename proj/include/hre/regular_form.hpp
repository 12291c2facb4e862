#pragma once

#include <string>
#include <vector>

namespace hre {

struct LogFactor {
  enum class Kind { Log, LogLog };
  Kind kind;
  double shift;     // log(shift + x) or log(log(shift + x))
  double exponent;
};

struct Interval {
  double lo;
  double hi;
};

// c * x^power * prod of log factors, evaluated in log domain. Closed under
// products and real powers, which is all the growth checks need.
class RegularForm {
 public:
  RegularForm() = default;
  RegularForm(double log_constant, double power, std::vector<LogFactor> factors = {});

  double log_constant() const { return log_constant_; }
  double power() const { return power_; }
  const std::vector<LogFactor>& factors() const { return factors_; }

  double log_value(double x) const;
  // Smallest x at which every factor is positive and its elasticity bound applies.
  double min_bound_point() const;
  // Bounds on x f'(x)/f(x) holding for every x >= from.
  Interval elasticity_bounds(double from) const;
  bool pure_power() const;
  // Exponent of the log(shift+x) factor with the given shift (0 if absent).
  double log_exponent() const;
  double loglog_exponent() const;

  RegularForm operator*(const RegularForm& o) const;
  RegularForm pow(double p) const;
  RegularForm times_power(double p) const;

  std::string describe() const;

 private:
  void normalize();
  double log_constant_ = 0.0;
  double power_ = 0.0;
  std::vector<LogFactor> factors_;
};

}  // namespace hre
