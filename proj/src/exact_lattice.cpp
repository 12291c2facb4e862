#include "hre/exact_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hre/numeric.hpp"

namespace hre {

namespace {

bool close_to(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// merge equal values, drop zero mass
std::vector<std::pair<double, double>> tidy(const std::vector<std::pair<double, double>>& pmf) {
  std::map<double, double> m;
  for (auto [v, p] : pmf) {
    if (p < 0 || !std::isfinite(p) || !std::isfinite(v)) throw InputError("pmf entries must be finite and nonnegative");
    if (p > 0) m[v] += p;
  }
  return {m.begin(), m.end()};
}

}  // namespace

double SumLaw::abs_tail(double x) const { return centered_abs_tail(0.0, x); }

double SumLaw::centered_abs_tail(double c, double x) const {
  CompensatedSum s;
  for (size_t i = 0; i < values.size(); ++i) {
    double d = std::abs(values[i] - c);
    if (d >= x || close_to(d, x)) s.add(probs[i]);
  }
  return std::min(1.0, s.value());
}

double SumLaw::lower_median() const {
  double acc = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    acc += probs[i];
    if (acc >= 0.5 - 1e-12) return values[i];
  }
  return values.back();
}

double SumLaw::total() const {
  CompensatedSum s;
  for (double p : probs) s.add(p);
  return s.value();
}

double lattice_step(const std::vector<double>& values) {
  double m = kInf;
  for (double v : values)
    if (std::abs(v) > 0) m = std::min(m, std::abs(v));
  if (!std::isfinite(m)) return 1.0;  // only the point 0
  for (int k = 1; k <= 1000; ++k) {
    double s = m / k;
    bool ok = true;
    for (double v : values) {
      double r = v / s;
      if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, std::abs(r))) {
        ok = false;
        break;
      }
    }
    if (ok) return s;
  }
  return 0.0;
}

SumLaw exact_sum_law(const std::vector<std::pair<double, double>>& raw, long n) {
  if (n < 1) throw InputError("n must be >= 1");
  auto pmf = tidy(raw);
  if (pmf.empty()) throw InputError("empty pmf");
  SumLaw out;
  if (pmf.size() == 1) {
    out.values = {double(n) * pmf[0].first};
    out.probs = {1.0};
    return out;
  }
  if (pmf.size() == 2) {
    auto [u, pu] = pmf[0];
    auto [v, pv] = pmf[1];
    double lp = std::log(pv / (pu + pv)), lq = std::log(pu / (pu + pv));
    for (long k = 0; k <= n; ++k) {  // k copies of v
      double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(double(n - k) + 1.0);
      out.values.push_back(double(k) * v + double(n - k) * u);
      out.probs.push_back(std::exp(lc + k * lp + (n - k) * lq));
    }
    return out;
  }
  std::vector<double> vals;
  for (auto [v, p] : pmf) vals.push_back(v);
  double step = lattice_step(vals);
  if (step == 0.0) throw InputError("atoms do not lie on a common lattice");
  long lo = std::lround(vals.front() / step), hi = std::lround(vals.back() / step);
  if ((hi - lo) * double(n) > 5e5) throw InputError("lattice law too wide for exact convolution");
  std::vector<double> base(hi - lo + 1, 0.0);
  for (auto [v, p] : pmf) base[std::lround(v / step) - lo] += p;
  std::vector<double> acc{1.0}, pw = base;
  long e = n;
  while (e > 0) {
    if (e & 1) acc = convolve(acc, pw);
    e >>= 1;
    if (e) pw = convolve(pw, pw);
  }
  for (size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] <= 0) continue;
    out.values.push_back(double(long(i) + n * lo) * step);
    out.probs.push_back(acc[i]);
  }
  return out;
}

SumLaw exact_sum_law(const DistModel& d, long n, double trunc) {
  if (!d.lattice_like()) throw InputError("exact sum law needs an atomic distribution");
  auto pmf = d.pmf();
  for (auto& [v, p] : pmf)
    if (!(std::abs(v) < trunc)) v = 0.0;
  return exact_sum_law(pmf, n);
}

}  // namespace hre
