#include "hre/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hre/numeric.hpp"
#include "hre/series.hpp"

namespace hre {

namespace {
constexpr double kLoglogShift = 2.0 * std::numbers::e;
constexpr double kDivergenceRatio = 1e6;
constexpr double kFlatSlope = 0.05;
constexpr double kFloorStability = 0.99;

struct FloorStats {
  double first_min;
  double second_min;
};

// Minima of a positive series over the two halves of its index range.
FloorStats half_minima(const std::vector<double>& v) {
  size_t mid = v.size() / 2;
  FloorStats s{kInf, kInf};
  for (size_t i = 0; i < v.size(); ++i) {
    if (i < mid)
      s.first_min = std::min(s.first_min, v[i]);
    else
      s.second_min = std::min(s.second_min, v[i]);
  }
  return s;
}

bool floor_is_stable(const FloorStats& s) {
  return s.second_min > 0 && std::isfinite(s.second_min) &&
         s.second_min >= kFloorStability * s.first_min;
}

// Log-log slope of exp(logv[n - first]) on the final decade of [first, last].
double last_decade_slope(const std::vector<double>& logv, long first, long last) {
  long lo = std::max(first, last / 10);
  if (last - lo < 4) return 0.0;
  auto g = log_grid(lo, last, 200);
  std::vector<double> x, y;
  for (long n : g) {
    double l = logv[n - first];
    if (!std::isfinite(l)) continue;
    x.push_back(std::log(double(n)));
    y.push_back(l);
  }
  if (x.size() < 2) return 0.0;
  return ls_slope(x, y);
}

// log T_{k} = log sum_{n=start}^{k} n tau_n for k in [start-1, last]; index k - start + 1.
std::vector<double> log_prefix_weights(const WeightSequence& tau, long last) {
  std::vector<double> out;
  out.reserve(last - tau.start() + 2);
  out.push_back(kNegInf);
  CompensatedSum s;
  for (long n = tau.start(); n <= last; ++n) {
    s.add(std::exp(std::log(double(n)) + tau.log_eval(n)));
    out.push_back(std::log(s.value()));
  }
  return out;
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "Holds";
    case Outcome::Fails: return "Fails";
    default: return "Inconclusive";
  }
}

const char* to_string(GrowthVariant v) { return v == GrowthVariant::Cubic ? "Cubic" : "Quadratic"; }

RegularForm SlowlyVaryingSpec::to_form() const {
  if (!(constant > 0)) throw InputError("slowly varying constant must be > 0");
  std::vector<LogFactor> fs;
  if (logPower != 0) fs.push_back({LogFactor::Kind::Log, logShift, logPower});
  if (logLogPower != 0) fs.push_back({LogFactor::Kind::LogLog, kLoglogShift, logLogPower});
  return RegularForm(std::log(constant), 0.0, std::move(fs));
}

Sequence Sequence::power_law(double exponent, SlowlyVaryingSpec sv, long start) {
  return from_form(RegularForm(0.0, exponent) * sv.to_form(), start);
}

Sequence Sequence::from_form(RegularForm form, long start) {
  if (start < 1) throw InputError("sequence start index must be >= 1");
  double l = form.log_value(double(start));
  if (!std::isfinite(l))
    throw InputError("sequence is not strictly positive at its start index " + std::to_string(start));
  Sequence s;
  s.start_ = start;
  s.form_ = std::move(form);
  return s;
}

Sequence Sequence::custom(LogOracle log_term, long start, std::string label) {
  if (start < 1) throw InputError("sequence start index must be >= 1");
  if (!log_term) throw InputError("custom sequence needs a term oracle");
  Sequence s;
  s.start_ = start;
  s.oracle_ = std::move(log_term);
  s.label_ = std::move(label);
  return s;
}

double Sequence::log_eval(long n) const {
  if (n < start_)
    throw DomainError("index " + std::to_string(n) + " below sequence start " + std::to_string(start_));
  return form_ ? form_->log_value(double(n)) : oracle_(n);
}

double Sequence::eval(long n) const { return std::exp(log_eval(n)); }

std::string Sequence::describe() const {
  std::ostringstream os;
  os << (form_ ? form_->describe() : label_) << " (n >= " << start_ << ")";
  return os.str();
}

WeightSequence::WeightSequence(Sequence s) : Sequence(std::move(s)) {}

NormingSequence::NormingSequence(Sequence s) : Sequence(std::move(s)) {
  if (const RegularForm* f = form()) {
    double a = f->power(), q = f->log_exponent(), r = f->loglog_exponent();
    bool unbounded = a > 0 || (a == 0 && (q > 0 || (q == 0 && r > 0)));
    if (!unbounded)
      throw DomainError("norming sequence must tend to infinity (got " + f->describe() + ")");
  }
}

std::optional<long> NormingSequence::first_decrease(long from, long to) const {
  from = std::max(from, start());
  double prev = log_eval(from);
  for (long n = from + 1; n <= to; ++n) {
    double cur = log_eval(n);
    if (cur < prev) return n - 1;
    prev = cur;
  }
  return std::nullopt;
}

bool NormingSequence::exceeds(double bound, long max_probe) const {
  double lb = std::log(bound);
  for (long n = std::max(start(), 1L); n <= max_probe; n = n < max_probe / 2 ? 2 * n : max_probe) {
    if (log_eval(n) > lb) return true;
    if (n == max_probe) break;
  }
  return false;
}

WeightSequence sp_weights() { return WeightSequence::power_law(-1.0, {}, 2); }

NormingSequence sp_norming() {
  SlowlyVaryingSpec sv;
  sv.logPower = 0.5;
  sv.logShift = 0.0;
  return NormingSequence::power_law(0.5, sv, 2);
}

double partial_weight_sum(const WeightSequence& tau, long k) {
  if (k < tau.start())
    throw DomainError("partial_weight_sum: k = " + std::to_string(k) + " below start " +
                      std::to_string(tau.start()));
  CompensatedSum s;
  for (long n = tau.start(); n <= k; ++n) s.add(double(n) * tau.eval(n));
  return s.value();
}

ConditionAResult check_condition_a_sufficient(const WeightSequence& tau, int max_level) {
  if (max_level < 4 || max_level > 26) throw InputError("maxLevel must be in [4, 26]");
  const long n0 = tau.start();
  const long end = 1L << max_level;
  ConditionAResult r;
  if (end <= 2 * n0) {
    r.reason = "scan window too short for the start index";
    return r;
  }
  std::vector<double> lt(end - n0 + 1);
  for (long n = n0; n <= end; ++n) lt[n - n0] = tau.log_eval(n);
  auto at = [&](long n) { return lt[n - n0]; };

  // Smallest C with C tau_{2^{j-1}} >= tau_k >= tau_{2^j}/C on every scanned block.
  double logc = 0.0;
  int blocks = 0;
  for (int j = 1; j <= max_level; ++j) {
    long b0 = 1L << (j - 1), b1 = 1L << j;
    if (b0 < n0) continue;
    ++blocks;
    for (long k = b0; k < b1; ++k) logc = std::max({logc, at(k) - at(b0), at(b1) - at(k)});
  }
  std::optional<double> c;
  if (blocks > 0 && std::isfinite(logc)) c = std::exp(logc);

  std::vector<double> tv(lt.size()), ntv(lt.size());
  for (size_t i = 0; i < lt.size(); ++i) {
    tv[i] = std::exp(lt[i]);
    ntv[i] = std::exp(lt[i] + std::log(double(n0 + long(i))));
  }
  if (floor_is_stable(half_minima(tv))) {
    r.established = true;
    r.witness_c = c;
    r.branch = "liminf tau_n > 0";
    return r;
  }
  if (!floor_is_stable(half_minima(ntv))) {
    r.reason = "neither tau_n nor n*tau_n keeps a stable positive floor on the window";
    return r;
  }
  if (!c) {
    r.reason = "no finite dyadic ratio bound on the window";
    return r;
  }
  r.established = true;
  r.witness_c = c;
  r.branch = "liminf n*tau_n > 0 and bounded dyadic ratios";
  return r;
}

std::optional<FalsifierWitness> falsify_condition_a(const WeightSequence& tau,
                                                    const PowerFamily& family, long horizon) {
  for (double p : family.powers)
    if (!(p > 0)) throw InputError("family member c_n = s n^-p with p <= 0 is not decreasing");
  for (double s : family.scales)
    if (!(s > 0)) throw InputError("family scale must be positive");
  const long n0 = tau.start();
  for (double s : family.scales) {
    for (double p : family.powers) {
      SeriesVerdict small, big;
      if (const RegularForm* f = tau.form()) {
        // sum tau_n n c_n, and sum tau_n min(n c_n, 1) whose eventual form is
        // n c_n (p > 1), tau_n (p < 1) or min(s,1) tau_n (p = 1).
        RegularForm bigf = (*f * RegularForm(std::log(s), 1.0 - p));
        RegularForm smallf = p > 1 ? bigf : (p < 1 ? *f : *f * RegularForm(std::log(std::min(s, 1.0)), 0));
        long cross = p > 1 ? long(std::ceil(std::pow(s, 1.0 / (p - 1.0)))) : n0;
        long H = std::max(horizon, cross);
        big = certify_regular_series(bigf, n0, H);
        small = certify_regular_series(smallf, n0, H);
      } else {
        auto lbig = [&](long n) { return tau.log_eval(n) + std::log(s) + (1.0 - p) * std::log(double(n)); };
        auto lsmall = [&](long n) { return tau.log_eval(n) + std::min(0.0, std::log(s) + (1.0 - p) * std::log(double(n))); };
        big = classify_log_series(lbig, n0, horizon);
        small = classify_log_series(lsmall, n0, horizon);
      }
      if (small.verdict == Verdict::Converges && big.verdict == Verdict::Diverges) {
        std::ostringstream os;
        os << "sum tau_n min(n c_n,1) converges (tail <= " << *small.tail_bound
           << ") while sum tau_n n c_n diverges: " << big.lower_bound_rate.value_or("");
        return FalsifierWitness{s, p, os.str()};
      }
    }
  }
  return std::nullopt;
}

GrowthCheckReport growth_scan(const WeightSequence& tau, const NormingSequence& a, double theta,
                              double m, long N, long horizon) {
  if (!(theta >= 1)) throw InputError("theta must be >= 1");
  GrowthCheckReport r;
  r.theta = theta;
  N = std::max({N, tau.start() + 1, a.start() + 1, 2L});
  if (horizon < 10 * N) throw InputError("horizon must be at least 10*N");
  r.n_start = N;
  r.horizon = horizon;
  const double mt = m * theta;

  // Tail factor R(H) = sum_{k>=H} f_k / f_H with f_k = k^theta tau_k a_k^{-m theta}.
  // R_lo from the elasticity lower bound keeps horizon inflation out of the trend.
  double R = 1.0, R_lo = 1.0;
  bool tail_ok = false;
  if (tau.form() && a.form()) {
    RegularForm f = RegularForm(0.0, theta) * *tau.form() * a.form()->pow(-mt);
    if (horizon >= f.min_bound_point()) {
      Interval e = f.elasticity_bounds(double(horizon));
      if (e.hi < -1.0) {
        R = 1.0 + double(horizon) / (-1.0 - e.hi);
        double step = f.log_value(double(horizon + 1)) - f.log_value(double(horizon));
        R_lo = 1.0 + std::exp(step) * double(horizon + 1) / (-1.0 - e.lo);
        tail_ok = true;
      } else if (e.lo >= -1.0) {
        r.verdict = Outcome::Fails;
        r.max_ratio = kInf;
        r.reason = "tail sum of k^theta tau_k / a_k^(m theta) diverges (terms ~ " + f.describe() + ")";
        return r;
      } else {
        r.reason = "elasticity bounds straddle -1 at the horizon";
      }
    }
  } else {
    r.reason = "custom form: tail beyond the horizon is not analytically bounded";
  }

  auto g = [&](long k) { return theta * std::log(double(k)) + tau.log_eval(k) - mt * a.log_eval(k); };
  auto lT = log_prefix_weights(tau, horizon);
  std::vector<double> lratio(horizon - N + 1), lratio_lo(lratio.size());
  double gnext = g(horizon), logR = std::log(R), logR_lo = std::log(R_lo);
  for (long n = horizon; n >= N; --n) {
    double gn = n == horizon ? gnext : g(n);
    if (n < horizon) {
      logR = std::log1p(std::exp(gnext - gn + logR));
      logR_lo = std::log1p(std::exp(gnext - gn + logR_lo));
    }
    gnext = gn;
    double base = std::log(double(n)) + tau.log_eval(n) - lT[n - 1 - tau.start() + 1];
    lratio[n - N] = base + logR;
    lratio_lo[n - N] = base + logR_lo;
  }
  double lmax = *std::max_element(lratio.begin(), lratio.end());
  r.max_ratio = std::exp(lmax);
  r.trend_slope = last_decade_slope(tail_ok ? lratio_lo : lratio, N, horizon);
  if (!tail_ok) {
    r.verdict = Outcome::Inconclusive;
    return r;
  }
  if (r.max_ratio <= kDivergenceRatio && r.trend_slope <= kFlatSlope) {
    r.verdict = Outcome::Holds;
    r.witness_c = r.max_ratio;
  } else if (r.max_ratio > kDivergenceRatio && r.trend_slope > 0) {
    r.verdict = Outcome::Fails;
    r.reason = "ratio exceeds 1e6 with positive log-log trend";
  } else {
    r.reason = "ratio bounded by 1e6 on the window but still trending upward";
  }
  return r;
}

GrowthCheckReport verify_growth_condition(const WeightSequence& tau, const NormingSequence& a,
                                          double theta, GrowthVariant variant, long N,
                                          long horizon) {
  auto r = growth_scan(tau, a, theta, growth_exponent(variant), N, horizon);
  r.variant = variant;
  return r;
}

GrowthCheckReport liminf_scan(const WeightSequence& tau, const NormingSequence& a, double m,
                              long N, long horizon) {
  GrowthCheckReport r;
  N = std::max({N, tau.start() + 1, a.start() + 1, 2L});
  if (horizon < 10 * N) throw InputError("horizon must be at least 10*N");
  r.n_start = N;
  r.horizon = horizon;

  bool tail_ok = false;
  if (const RegularForm* af = a.form()) {
    // a_k^m / k nondecreasing past the horizon means the window minimum is the true infimum.
    RegularForm h = af->pow(m).times_power(-1.0);
    if (horizon >= h.min_bound_point() && h.elasticity_bounds(double(horizon)).lo >= 0) tail_ok = true;
    else r.reason = "a_k^m/k may keep decreasing past the horizon";
  } else {
    r.reason = "custom norming: infimum taken over the finite window only";
  }

  auto lT = log_prefix_weights(tau, horizon);
  std::vector<double> lv(horizon - N + 1), v(lv.size());
  double suffix = kInf;
  for (long n = horizon; n >= N; --n) {
    double la = a.log_eval(n);
    suffix = std::min(suffix, m * la - std::log(double(n)));
    lv[n - N] = suffix - m * la + lT[n - 1 - tau.start() + 1];
    v[n - N] = std::exp(lv[n - N]);
  }
  auto st = half_minima(v);
  r.trend_slope = last_decade_slope(lv, N, horizon);
  r.max_ratio = st.second_min > 0 ? 1.0 / st.second_min : kInf;
  std::ostringstream os;
  os << "second-half floor " << st.second_min << ", first-half floor " << st.first_min;
  if (floor_is_stable(st) && tail_ok) {
    r.verdict = Outcome::Holds;
    r.witness_c = r.max_ratio;
    r.reason = os.str();
  } else if (r.trend_slope < -kFlatSlope) {
    r.verdict = Outcome::Fails;
    r.reason = os.str() + "; floor decays with log-log slope " + std::to_string(r.trend_slope);
  } else {
    r.verdict = Outcome::Inconclusive;
    r.reason = (r.reason.empty() ? "" : r.reason + "; ") + os.str();
  }
  return r;
}

GrowthCheckReport verify_liminf_condition(const WeightSequence& tau, const NormingSequence& a,
                                          GrowthVariant variant, long N, long horizon) {
  auto r = liminf_scan(tau, a, growth_exponent(variant), N, horizon);
  r.variant = variant;
  return r;
}

ThetaRecommendation recommend_theta(const WeightSequence& tau, const NormingSequence& a,
                                    GrowthVariant variant, long N, long horizon) {
  if (!tau.form() || !a.form()) throw InputError("recommend_theta needs regularly varying forms");
  double alpha = a.form()->power();
  if (variant == GrowthVariant::Cubic && !(alpha > 1.0 / 3.0))
    throw InputError("alpha must exceed 1/3 for the cubic growth condition");
  if (variant == GrowthVariant::Quadratic && !(alpha > 0.5))
    throw InputError("alpha must exceed 1/2 for the quadratic growth condition");
  RegularForm ntau = tau.form()->times_power(1.0);
  bool ok = ntau.power() > 0 ||
            (ntau.power() == 0 && ntau.log_exponent() >= 0 && ntau.loglog_exponent() >= 0);
  if (!ok) throw InputError("liminf n*tau_n > 0 is required");

  ThetaRecommendation out;
  out.note = "theta searched over {1,2,4,8,16}; this grid is a pragmatic cap";
  auto lim = verify_liminf_condition(tau, a, variant, N, horizon);
  out.trials.push_back(lim);
  for (double th : kThetaGrid) {
    auto g = verify_growth_condition(tau, a, th, variant, N, horizon);
    out.trials.push_back(g);
    if (g.verdict == Outcome::Holds && lim.verdict == Outcome::Holds) {
      out.theta = th;
      break;
    }
  }
  return out;
}

}  // namespace hre
