#include "hre/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "hre/numeric.hpp"

namespace hre {

namespace {
constexpr double kConvMargin = 0.1;   // slope must be below -1 - margin
constexpr double kDivSlope = -0.02;   // n*t_n may not decay faster than this
constexpr int kDecadeSamples = 64;
}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Converges: return "Converges";
    case Verdict::Diverges: return "Diverges";
    default: return "Inconclusive";
  }
}

double head_sum(const LogTermOracle& log_term, long start, long end) {
  CompensatedSum s;
  for (long n = start; n <= end; ++n) {
    double l = log_term(n);
    if (l != kNegInf) s.add(std::exp(l));
  }
  return s.value();
}

SeriesVerdict classify_log_series(const LogTermOracle& log_term, long start, long horizon) {
  SeriesVerdict out;
  out.horizon = horizon;
  out.method = "final-decade slope fit";
  if (horizon < start) throw InputError("classify_series: horizon below start index");
  out.partial_sum = head_sum(log_term, start, horizon);
  long lo = horizon / 10;
  if (lo < std::max(start, 2L)) {
    out.method += " (horizon shorter than one decade past start)";
    return out;
  }
  auto grid = log_grid(lo, horizon, kDecadeSamples);
  std::vector<double> x, y;
  for (long n : grid) {
    double l = log_term(n);
    if (std::isnan(l) || l == kInf) throw InputError("classify_series: invalid term");
    if (l == kNegInf) {
      out.method += " (zero terms on the final decade; nothing certifies the tail)";
      return out;
    }
    x.push_back(std::log(double(n)));
    y.push_back(l);
  }
  size_t h = x.size() / 2;
  double s = ls_slope(x, y);
  double s1 = ls_slope(std::span(x).first(h + 1), std::span(y).first(h + 1));
  double s2 = ls_slope(std::span(x).subspan(h), std::span(y).subspan(h));
  double worst = std::max({s, s1, s2});
  if (worst < -1.0 - kConvMargin) {
    out.verdict = Verdict::Converges;
    out.tail_bound = std::exp(y.back()) * double(horizon) / (-1.0 - worst);
    std::ostringstream os;
    os << " (slope " << s << ", power envelope extrapolated past horizon)";
    out.method += os.str();
    return out;
  }
  // n t_n bounded below with no decay across the decade.
  std::vector<double> z(y.size());
  for (size_t i = 0; i < y.size(); ++i) z[i] = y[i] + x[i];
  double zs = ls_slope(x, z);
  double zs2 = ls_slope(std::span(x).subspan(h), std::span(z).subspan(h));
  double zmin = *std::min_element(z.begin(), z.end());
  if (zs >= kDivSlope && zs2 >= kDivSlope) {
    out.verdict = Verdict::Diverges;
    out.lower_bound_constant = std::exp(zmin);
    out.rate_exponent = s;
    std::ostringstream os;
    os << "terms >= " << out.lower_bound_constant << "/n on [" << lo << ", " << horizon
       << "], fitted term slope " << s;
    out.lower_bound_rate = os.str();
    return out;
  }
  std::ostringstream os;
  os << " (slope " << s << " too close to -1)";
  out.method += os.str();
  return out;
}

SeriesVerdict classify_series(const TermOracle& term, long start, long horizon) {
  return classify_log_series(
      [&](long n) {
        double t = term(n);
        if (!(t >= 0)) throw InputError("classify_series: negative term at n = " + std::to_string(n));
        return t == 0 ? kNegInf : std::log(t);
      },
      start, horizon);
}

std::optional<double> regular_tail_bound(const RegularForm& f, long H) {
  double x = std::max<double>(H, f.min_bound_point());
  if (x > H) return std::nullopt;
  Interval e = f.elasticity_bounds(double(H));
  if (e.hi >= -1.0) return std::nullopt;
  return std::exp(f.log_value(double(H))) * double(H) / (-1.0 - e.hi);
}

SeriesVerdict certify_regular_series(const RegularForm& term, long start, long horizon) {
  SeriesVerdict out;
  out.horizon = horizon;
  out.method = "head sum + elasticity tail bound";
  if (horizon < start) throw InputError("certify_regular_series: horizon below start index");
  out.partial_sum =
      head_sum([&](long n) { return term.log_value(double(n)); }, start, horizon);
  if (horizon < term.min_bound_point()) {
    out.method += " (horizon below validity point of the bound)";
    return out;
  }
  Interval e = term.elasticity_bounds(double(horizon));
  double lH = term.log_value(double(horizon));
  if (e.hi < -1.0) {
    out.verdict = Verdict::Converges;
    out.tail_bound = std::exp(lH) * double(horizon) / (-1.0 - e.hi);
    return out;
  }
  if (e.lo >= -1.0) {
    // n t_n is non-decreasing beyond the horizon, so t_n >= c/n there.
    out.verdict = Verdict::Diverges;
    out.lower_bound_constant = std::exp(lH + std::log(double(horizon)));
    out.rate_exponent = term.power();
    std::ostringstream os;
    os << "terms ~ " << term.describe() << "; t_n >= " << out.lower_bound_constant
       << "/n for n >= " << horizon;
    out.lower_bound_rate = os.str();
    return out;
  }
  out.method += " (elasticity bounds straddle -1 at the horizon)";
  return out;
}

}  // namespace hre
