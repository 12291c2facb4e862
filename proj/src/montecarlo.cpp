#include "hre/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "hre/exact_lattice.hpp"
#include "hre/numeric.hpp"

namespace hre {

namespace {

// Runs f(r) for r in [0, R); each worker owns a contiguous replicate range.
template <class F>
void parallel_for(long R, int workers, F&& f) {
  if (workers <= 1 || R < 2 * workers) {
    for (long r = 0; r < R; ++r) f(r);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mu;
  for (int w = 0; w < workers; ++w) {
    long lo = R * w / workers, hi = R * (w + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (long r = lo; r < hi; ++r) f(r);
      } catch (...) {
        std::lock_guard<std::mutex> g(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

double se_of(double p, long R) { return std::sqrt(std::max(0.0, p * (1.0 - p)) / double(R)); }

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 2) return std::nan("");
  return ls_slope(lx, ly);
}

}  // namespace

void SimConfig::validate() const {
  if (replicates < 1000) throw InputError("simulation.replicates must be >= 1000");
  if (workers < 1) throw InputError("simulation.workers must be >= 1");
  for (double e : eps_grid)
    if (!(e > 0) || !std::isfinite(e)) throw InputError("epsilon grid values must be positive");
  for (size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw InputError("n grid values must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw InputError("n grid must be strictly increasing");
  }
}

std::vector<double> simulate_sums(const DistModel& d, long n, const SimConfig& cfg, double trunc) {
  if (n < 1) throw InputError("n must be >= 1");
  if (cfg.replicates < 1) throw InputError("replicates must be >= 1");
  Sampler smp(d);
  const std::uint64_t key = derive_key(cfg.seed, std::uint64_t(n), kSampleTag);
  std::vector<double> out(cfg.replicates);
  parallel_for(cfg.replicates, cfg.workers, [&](long r) {
    CounterStream s(key, std::uint64_t(r));
    out[r] = smp.sum(s, n, trunc);
  });
  return out;
}

EmpiricalTail tail_from_sums(const std::vector<double>& sums, long n, double threshold, double center) {
  if (sums.empty()) throw InputError("no replicates");
  long hits = 0;
  for (double s : sums)
    if (std::abs(s - center) >= threshold) ++hits;
  EmpiricalTail t;
  t.n = n;
  t.threshold = threshold;
  t.replicates = long(sums.size());
  t.p_hat = double(hits) / double(sums.size());
  t.std_err = se_of(t.p_hat, t.replicates);
  return t;
}

EmpiricalTail estimate_tail(const DistModel& d, long n, double threshold, const SimConfig& cfg) {
  return tail_from_sums(simulate_sums(d, n, cfg), n, threshold);
}

MedianEstimate median_from_sums(std::vector<double> s, long n) {
  const long R = long(s.size());
  if (R < 1000) throw InputError("median CI needs >= 1000 replicates");
  std::sort(s.begin(), s.end());
  constexpr double z = 2.5758293035489004;  // two-sided 99%
  MedianEstimate m;
  m.n = n;
  m.replicates = R;
  m.mu_hat = s[(R - 1) / 2];
  long j = long(std::floor(0.5 * (R - z * std::sqrt(double(R)))));
  long k = long(std::ceil(1.0 + 0.5 * (R + z * std::sqrt(double(R)))));
  j = std::clamp(j, 1L, R);
  k = std::clamp(k, 1L, R);
  m.ci_lo = s[j - 1];
  m.ci_hi = s[k - 1];
  m.contains_zero = m.ci_lo <= 0.0 && 0.0 <= m.ci_hi;
  return m;
}

MedianEstimate estimate_median(const DistModel& d, long n, const SimConfig& cfg) {
  if (cfg.replicates < 1000) throw InputError("median CI needs >= 1000 replicates");
  return median_from_sums(simulate_sums(d, n, cfg), n);
}

ConditionReport estimate_condition_i(const DistModel& d, const WeightSequence& tau,
                                     const NormingSequence& a, const std::vector<double>& eps,
                                     const SimConfig& cfg) {
  cfg.validate();
  if (cfg.n_grid.empty()) throw InputError("condition (i) needs an n grid");
  std::vector<MedianEstimate> med;
  for (long n : cfg.n_grid) med.push_back(estimate_median(d, n, cfg));
  ConditionReport rep;
  rep.id = ConditionId::I;
  rep.eps_grid = eps;
  // sum tau_n diverging means persistent flags cannot be summable
  bool tau_diverges = tau.form() && tau.form()->power() > -1.0;
  for (double e : eps) {
    if (!(e > 0)) throw InputError("epsilon grid must be positive");
    ConditionEntry en;
    en.epsilon = e;
    CompensatedSum s;
    std::vector<long> flagged;
    for (size_t i = 0; i < med.size(); ++i) {
      long n = cfg.n_grid[i];
      if (n < tau.start() || n < a.start()) continue;
      double b = e * a.eval(n);
      if (med[i].ci_lo > b || med[i].ci_hi < -b) {
        flagged.push_back(n);
        s.add(tau.eval(n));
      }
    }
    en.value = s.value();
    std::ostringstream os;
    os << "flagged " << flagged.size() << " of " << med.size() << " grid points";
    if (!flagged.empty()) {
      os << " (n =";
      for (long n : flagged) os << ' ' << n;
      os << ")";
    }
    size_t tailn = std::min<size_t>(3, med.size());
    bool persistent = flagged.size() >= tailn &&
                      std::equal(flagged.end() - tailn, flagged.end(), cfg.n_grid.end() - tailn);
    if (flagged.empty()) {
      en.outcome = Outcome::Holds;
      os << "; no median exceeds eps a_n on the grid";
    } else if (persistent && tau_diverges) {
      en.outcome = Outcome::Fails;
      os << "; flags persist to the end of the grid and sum tau_n diverges";
    } else {
      en.outcome = Outcome::Inconclusive;
    }
    en.detail = os.str();
    rep.entries.push_back(std::move(en));
  }
  return rep;
}

WeightedSeries estimate_weighted_series(const DistModel& d, const WeightSequence& tau,
                                        const NormingSequence& a, double eps,
                                        const SimConfig& cfg) {
  cfg.validate();
  if (!(eps > 0)) throw InputError("epsilon must be > 0");
  if (cfg.n_grid.empty()) throw InputError("weighted series needs an n grid");
  const long s0 = std::max(tau.start(), a.start());
  if (cfg.n_grid.front() < s0) throw InputError("n grid starts below the sequence domain");
  WeightedSeries out;
  out.epsilon = eps;
  CompensatedSum ps;
  double var = 0;
  const auto& g = cfg.n_grid;
  for (size_t i = 0; i < g.size(); ++i) {
    long n = g[i];
    double b = eps * a.eval(n);
    double trunc = cfg.truncate ? b : kInf;
    auto t = tail_from_sums(simulate_sums(d, n, cfg, trunc), n, b);
    SeriesRow row;
    row.n = n;
    row.epsilon = eps;
    row.p_hat = t.p_hat;
    row.std_err = t.std_err;
    double tn = tau.eval(n);
    row.weighted_term = tn * t.p_hat;
    long end = i + 1 < g.size() ? g[i + 1] : n + 1;
    if (end > n + 1) out.interpolated = true;
    CompensatedSum w;
    for (long k = n; k < end; ++k) w.add(tau.eval(k));
    row.block_weight = w.value();
    ps.add(row.block_weight * t.p_hat);
    var += row.block_weight * row.block_weight * t.std_err * t.std_err;
    row.partial_sum = ps.value();
    row.partial_se = std::sqrt(var);
    out.rows.push_back(row);
  }
  out.note = out.interpolated
                 ? "heuristic: between grid points the tail probability is held at its left value "
                   "(monotone in n assumed); the sum covers the grid range only"
                 : "every n in the range simulated; the sum covers the grid range only";
  if (cfg.truncate) out.note += "; summands truncated at eps a_n";
  return out;
}

namespace {

NagaevResult nagaev_core(const DistModel& d, long n, double trunc, double x, double c) {
  if (!(x > 0)) throw InputError("Nagaev threshold must be > 0");
  NagaevResult r;
  r.n = n;
  r.threshold = x;
  double T = truncated_moment(d, {2.0, trunc, Boundary::Open});
  double E3 = truncated_moment(d, {3.0, trunc, Boundary::Open});
  // Phi(t/0) convention: with T = 0 the Gaussian term vanishes
  r.gaussian = T > 0 ? 2.0 * normal_sf(x / std::sqrt(double(n) * T)) : 0.0;
  r.bound = c * std::min(1.0, double(n) * E3 / (x * x * x));
  return r;
}

}  // namespace

NagaevResult nagaev_gap_check(const DistModel& d, const NormingSequence& a, long n, double eps,
                              double gamma, const SimConfig& cfg, double c) {
  if (!d.symmetric()) throw InputError("Nagaev check needs a symmetric law");
  if (!(eps > 0) || !(gamma > 0)) throw InputError("epsilon and gamma must be > 0");
  double b = eps * a.eval(n);
  NagaevResult r = nagaev_core(d, n, b, gamma * b, c);
  auto t = tail_from_sums(simulate_sums(d, n, cfg, b), n, r.threshold);
  r.p_emp = t.p_hat;
  r.std_err = t.std_err;
  r.gap = std::abs(r.p_emp - r.gaussian);
  r.pass = r.gap <= r.bound + 4.0 * r.std_err;
  return r;
}

NagaevResult nagaev_gap_exact(const DistModel& d, const NormingSequence& a, long n, double eps,
                              double gamma, double c) {
  if (!d.symmetric()) throw InputError("Nagaev check needs a symmetric law");
  if (!(eps > 0) || !(gamma > 0)) throw InputError("epsilon and gamma must be > 0");
  double b = eps * a.eval(n);
  NagaevResult r = nagaev_core(d, n, b, gamma * b, c);
  r.p_emp = exact_sum_law(d, n, b).abs_tail(r.threshold);
  r.exact = true;
  r.gap = std::abs(r.p_emp - r.gaussian);
  r.pass = r.gap <= r.bound;
  return r;
}

double calibrate_nagaev_constant() {
  const std::vector<DistModel> battery{
      DistModel::rademacher(),
      DistModel::atomic_symmetric({{1.0, 1.0 / 6}, {2.0, 1.0 / 6}, {3.0, 1.0 / 6}}),
  };
  double worst = 0;
  for (const auto& d : battery) {
    double V = d.second_moment(), E3 = d.abs_moment(3.0);
    for (long n : {25L, 100L, 400L, 1600L}) {
      SumLaw law = exact_sum_law(d, n);
      for (double k : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        double x = k * std::sqrt(double(n));
        double gap = std::abs(law.abs_tail(x) - 2.0 * normal_sf(x / std::sqrt(n * V)));
        worst = std::max(worst, gap / std::min(1.0, n * E3 / (x * x * x)));
      }
    }
  }
  return 1.2 * worst;
}

NagaevSweep nagaev_sweep_exact(const DistModel& d, const NormingSequence& a,
                               const std::vector<long>& ns, double eps, double gamma,
                               double c) {
  NagaevSweep s;
  std::vector<double> x, y;
  s.all_pass = true;
  for (long n : ns) {
    auto r = nagaev_gap_exact(d, a, n, eps, gamma, c);
    s.all_pass = s.all_pass && r.pass;
    x.push_back(double(n));
    y.push_back(r.gap);
    s.rows.push_back(r);
  }
  s.slope = log_slope(x, y);
  return s;
}

namespace {

void fit_constants(HJFit& f) {
  double cmin = 0;
  for (const auto& p : f.points) {
    if (p.power > 0 || p.lhs == 0) continue;
    if (p.single == 0) throw NumericError("H-J inequality infeasible at lambda = " + std::to_string(p.lambda), p.lhs);
    cmin = std::max(cmin, p.lhs / p.single);
  }
  auto d_for = [&](double C) {
    double D = 0;
    for (const auto& p : f.points)
      if (p.power > 0) D = std::max(D, std::max(0.0, p.lhs - C * p.single) / p.power);
    return D;
  };
  f.C = cmin;
  f.D = d_for(cmin);
  for (double C : {0.0, 0.001, 0.01, 0.03, 0.1, 0.3, 1.0})
    if (C >= cmin) f.frontier.push_back({C, d_for(C)});
}

}  // namespace

HJFit hj_fit_exact(const DistModel& d, long n, int r, const std::vector<double>& lambdas) {
  if (!d.symmetric()) throw InputError("H-J fit needs a symmetric law");
  if (r < 2) throw InputError("r must be >= 2");
  SumLaw law = exact_sum_law(d, n);
  HJFit f;
  f.n = n;
  f.r = r;
  f.exact = true;
  for (double l : lambdas) {
    HJPoint p;
    p.lambda = l;
    p.lhs = law.abs_tail(l);
    p.single = double(n) * tail(d, l / (2.0 * r));
    p.power = std::pow(law.abs_tail(l / (2.0 * r)), r);
    f.points.push_back(p);
  }
  fit_constants(f);
  return f;
}

HJFit hj_fit(const DistModel& d, long n, int r, const std::vector<double>& lambdas,
             const SimConfig& cfg) {
  if (!d.symmetric()) throw InputError("H-J fit needs a symmetric law");
  if (r < 2) throw InputError("r must be >= 2");
  auto sums = simulate_sums(d, n, cfg);
  HJFit f;
  f.n = n;
  f.r = r;
  for (double l : lambdas) {
    HJPoint p;
    p.lambda = l;
    auto t = tail_from_sums(sums, n, l);
    p.lhs = t.p_hat;
    p.lhs_se = t.std_err;
    p.single = double(n) * tail(d, l / (2.0 * r));
    p.power = std::pow(tail_from_sums(sums, n, l / (2.0 * r)).p_hat, r);
    f.points.push_back(p);
  }
  fit_constants(f);
  return f;
}

HJTransfer hj_transfer_check(const HJFit& fit, const DistModel& d, long n,
                             const std::vector<double>& lambdas, const SimConfig& cfg,
                             double slack) {
  HJFit probe = hj_fit(d, n, fit.r, lambdas, cfg);
  HJTransfer t;
  t.n = n;
  t.slack = slack;
  t.pass = true;
  for (const auto& p : probe.points) {
    double rhs = fit.C * p.single + fit.D * p.power;
    if (p.lhs > 0) t.worst_ratio = std::max(t.worst_ratio, rhs > 0 ? p.lhs / rhs : kInf);
    if (p.lhs > slack * rhs + 4.0 * p.lhs_se) t.pass = false;
  }
  t.points = probe.points;
  return t;
}

namespace {

Outcome limit_zero_verdict(const std::vector<LimitRow>& rows) {
  bool all_zero = std::all_of(rows.begin(), rows.end(), [](const LimitRow& r) { return r.value == 0.0; });
  if (all_zero) return Outcome::Holds;
  std::vector<double> x, y;
  for (size_t i = rows.size() / 2; i < rows.size(); ++i) {
    x.push_back(std::log(double(rows[i].n)));
    y.push_back(rows[i].value);
  }
  double s = log_slope(x, y);  // against log log n
  if (std::isnan(s)) return Outcome::Inconclusive;
  if (s <= -0.5 && rows.back().value < rows.front().value) return Outcome::Holds;
  if (s >= 0) return Outcome::Fails;
  return Outcome::Inconclusive;
}

}  // namespace

LemmaSpReport lemma_sp_check(const DistModel& d, const std::vector<long>& n_grid, double delta,
                             const SimConfig& cfg, long analytic_max) {
  if (!(delta > 0)) throw InputError("delta must be > 0");
  if (analytic_max < 100) throw InputError("analytic range too short");
  LemmaSpReport rep;
  rep.delta = delta;
  const auto a = sp_norming();
  rep.log_moment = log_plus_moment(d);
  std::ostringstream note;
  if (!rep.log_moment.finite) note << "E[X^2/log+|X|] diverges; the criteria need not hold. ";

  rep.show1 = eval_condition_ii(d, sp_weights(), a, 1.0, analytic_max);
  rep.show1.method += " (P(|X| >= a_n) dominates P(|X| > a_n))";
  for (long n : log_grid(10, analytic_max, 11)) {
    double an = a.eval(n);
    double m2 = truncated_moment(d, {2.0, an, Boundary::Closed});
    double m1 = truncated_signed_mean(d, an, Boundary::Closed);
    rep.show2.push_back({n, double(n) * m2 / (an * an)});
    rep.show3.push_back({n, double(n) * std::abs(m1) / an});
  }
  rep.show2_verdict = limit_zero_verdict(rep.show2);
  rep.show3_verdict = limit_zero_verdict(rep.show3);

  double mean = d.symmetric() ? 0.0 : d.mean();
  double V = d.kind() == DistKind::Counterexample ? kInf : d.second_moment() - mean * mean;
  if (std::isnan(mean)) {
    note << "E X undefined; empirical part skipped.";
  } else if (d.kind() == DistKind::Counterexample) {
    note << "counterexample law is not simulated; empirical part skipped.";
  } else {
    std::vector<double> x, y;
    for (long n : n_grid) {
      if (n < a.start()) continue;
      double b = delta * a.eval(n);
      auto t = tail_from_sums(simulate_sums(d, n, cfg), n, b, double(n) * mean);
      rep.empirical.push_back(t);
      rep.normal_oracle.push_back(std::isfinite(V) && V > 0 ? 2.0 * normal_sf(b / std::sqrt(n * V)) : std::nan(""));
      x.push_back(double(n));
      y.push_back(t.p_hat);
    }
    rep.empirical_slope = log_slope(x, y);
  }
  rep.note = note.str();
  return rep;
}

}  // namespace hre
