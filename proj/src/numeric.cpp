#include "hre/numeric.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <numbers>
#include <vector>

namespace hre {

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_sf_mills(double x) {
  if (x <= 0) throw DomainError("normal_sf_mills requires x > 0");
  return std::exp(-0.5 * x * x) / (x * std::sqrt(2.0 * std::numbers::pi));
}

double normal_sf_chernoff(double x) {
  if (x < 0) throw DomainError("normal_sf_chernoff requires x >= 0");
  return 0.5 * std::exp(-0.5 * x * x);
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InputError("ls_slope needs two equally sized samples of length >= 2");
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) throw InputError("ls_slope: degenerate abscissae");
  return sxy / sxx;
}

Quadrature integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  if (a == b) return {0.0, 0.0};
  double err = 0;
  double v = gauss_kronrod<double, 61>::integrate(f, a, b, 15, rel_tol, &err);
  double l1 = std::abs(v);
  if (!std::isfinite(v) || err > std::max(abs_tol, std::max(100 * rel_tol, 1e-9) * l1))
    throw NumericError("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]",
                       err);
  return {v, err};
}

std::vector<long> log_grid(long lo, long hi, int n) {
  if (lo < 1 || hi < lo || n < 1) throw InputError("log_grid: need 1 <= lo <= hi, n >= 1");
  std::vector<long> out;
  if (n == 1 || lo == hi) {
    out.push_back(lo);
    if (hi != lo) out.push_back(hi);
    return out;
  }
  double l0 = std::log(double(lo)), l1 = std::log(double(hi));
  for (int i = 0; i < n; ++i) {
    long v = std::lround(std::exp(l0 + (l1 - l0) * i / (n - 1)));
    v = std::clamp(v, lo, hi);
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

}  // namespace hre
