#pragma once

#include <cmath>
#include <compare>

#include "hre/numeric.hpp"

namespace hre {

// Strictly positive real kept as its natural log. Zero is allowed as ln = -inf
// so that sums can start empty.
class LogNumber {
 public:
  LogNumber() = default;
  static LogNumber from_log(double ln) {
    if (std::isnan(ln) || ln == kInf) throw DomainError("LogNumber: log value must be finite or -inf");
    LogNumber r;
    r.ln_ = ln;
    return r;
  }
  static LogNumber from_value(double v) {
    if (!(v >= 0)) throw DomainError("LogNumber: value must be nonnegative");
    return from_log(std::log(v));
  }
  static LogNumber zero() { return from_log(kNegInf); }
  static LogNumber one() { return from_log(0.0); }

  double log() const { return ln_; }
  double value() const { return std::exp(ln_); }
  bool is_zero() const { return ln_ == kNegInf; }

  LogNumber operator*(LogNumber o) const { return from_log(ln_ + o.ln_); }
  LogNumber operator/(LogNumber o) const {
    if (o.is_zero()) throw DomainError("LogNumber: division by zero");
    return from_log(ln_ - o.ln_);
  }
  LogNumber operator+(LogNumber o) const { return from_log(log_add(ln_, o.ln_)); }
  // |a - b| is not needed; a - b for a >= b only.
  LogNumber minus(LogNumber o) const {
    if (o.ln_ > ln_) throw DomainError("LogNumber: negative difference");
    if (o.is_zero()) return *this;
    double d = o.ln_ - ln_;
    return from_log(ln_ + std::log(-std::expm1(d)));
  }
  LogNumber pow(double p) const {
    if (is_zero()) return p > 0 ? zero() : (p == 0 ? one() : throw DomainError("LogNumber: 0^negative"));
    return from_log(ln_ * p);
  }
  LogNumber& operator*=(LogNumber o) { return *this = *this * o; }
  LogNumber& operator+=(LogNumber o) { return *this = *this + o; }

  auto operator<=>(const LogNumber& o) const { return ln_ <=> o.ln_; }
  bool operator==(const LogNumber& o) const { return ln_ == o.ln_; }

 private:
  double ln_ = kNegInf;
};

}  // namespace hre
