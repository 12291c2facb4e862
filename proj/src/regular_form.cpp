#include "hre/regular_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hre/numeric.hpp"

namespace hre {

RegularForm::RegularForm(double log_constant, double power, std::vector<LogFactor> factors)
    : log_constant_(log_constant), power_(power), factors_(std::move(factors)) {
  for (const auto& f : factors_)
    if (f.shift < 0) throw InputError("log factor shift must be >= 0");
  normalize();
}

void RegularForm::normalize() {
  std::vector<LogFactor> merged;
  for (const auto& f : factors_) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const LogFactor& g) {
      return g.kind == f.kind && g.shift == f.shift;
    });
    if (it == merged.end())
      merged.push_back(f);
    else
      it->exponent += f.exponent;
  }
  std::erase_if(merged, [](const LogFactor& f) { return f.exponent == 0.0; });
  factors_ = std::move(merged);
}

double RegularForm::log_value(double x) const {
  if (x <= 0) return kNegInf;
  double v = log_constant_ + power_ * std::log(x);
  for (const auto& f : factors_) {
    double l = std::log(f.shift + x);
    if (f.kind == LogFactor::Kind::LogLog) l = std::log(l);
    if (l <= 0) return f.exponent > 0 ? kNegInf : kInf;
    v += f.exponent * std::log(l);
  }
  return v;
}

double RegularForm::min_bound_point() const {
  double x = 1.0;
  for (const auto& f : factors_) {
    // Log needs log(s+x) > 0; LogLog needs log(s+x) > 1.
    double need = f.kind == LogFactor::Kind::Log ? 1.0 - f.shift : std::exp(1.0) - f.shift;
    x = std::max(x, std::floor(need) + 1.0);
  }
  return x;
}

Interval RegularForm::elasticity_bounds(double from) const {
  if (from < min_bound_point())
    throw DomainError("elasticity bound requested below the form's validity point");
  Interval e{power_, power_};
  for (const auto& f : factors_) {
    double l = std::log(f.shift + from);
    double mag = f.kind == LogFactor::Kind::Log ? 1.0 / l : 1.0 / (l * std::log(l));
    double c = f.exponent * mag;
    if (c > 0)
      e.hi += c;
    else
      e.lo += c;
  }
  return e;
}

bool RegularForm::pure_power() const { return factors_.empty(); }

double RegularForm::log_exponent() const {
  double s = 0;
  for (const auto& f : factors_)
    if (f.kind == LogFactor::Kind::Log) s += f.exponent;
  return s;
}

double RegularForm::loglog_exponent() const {
  double s = 0;
  for (const auto& f : factors_)
    if (f.kind == LogFactor::Kind::LogLog) s += f.exponent;
  return s;
}

RegularForm RegularForm::operator*(const RegularForm& o) const {
  auto fs = factors_;
  fs.insert(fs.end(), o.factors_.begin(), o.factors_.end());
  return RegularForm(log_constant_ + o.log_constant_, power_ + o.power_, std::move(fs));
}

RegularForm RegularForm::pow(double p) const {
  auto fs = factors_;
  for (auto& f : fs) f.exponent *= p;
  return RegularForm(log_constant_ * p, power_ * p, std::move(fs));
}

RegularForm RegularForm::times_power(double p) const {
  RegularForm r = *this;
  r.power_ += p;
  return r;
}

std::string RegularForm::describe() const {
  std::ostringstream os;
  os.precision(6);
  if (log_constant_ != 0) os << std::exp(log_constant_) << "*";
  os << "n^" << power_;
  for (const auto& f : factors_) {
    if (f.kind == LogFactor::Kind::Log)
      os << "*log(" << f.shift << "+n)^" << f.exponent;
    else
      os << "*loglog(" << f.shift << "+n)^" << f.exponent;
  }
  return os.str();
}

}  // namespace hre
