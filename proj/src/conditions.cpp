#include "hre/conditions.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hre/numeric.hpp"

namespace hre {

namespace {

long common_start(const Sequence& a, const Sequence& b) { return std::max(a.start(), b.start()); }

bool is_sp_pair(const WeightSequence& tau, const NormingSequence& a) {
  const RegularForm* tf = tau.form();
  const RegularForm* af = a.form();
  if (!tf || !af) return false;
  if (!(tf->power() == -1.0 && tf->pure_power() && tf->log_constant() == 0.0)) return false;
  if (!(af->power() == 0.5 && af->log_constant() == 0.0 && af->factors().size() == 1)) return false;
  const auto& f = af->factors()[0];
  return f.kind == LogFactor::Kind::Log && f.shift == 0.0 && f.exponent == 0.5;
}

// a is nondecreasing beyond H and both forms have valid bounds there.
bool forms_usable(const WeightSequence& tau, const NormingSequence& a, long H) {
  if (!tau.form() || !a.form()) return false;
  double need = std::max(tau.form()->min_bound_point(), a.form()->min_bound_point());
  if (H < need) return false;
  return a.form()->elasticity_bounds(double(H)).lo >= 0;
}

// Upper bound on sum_{n>H} tau_n exp(-eps^2 a_n^2 / (n V)), or nullopt.
std::optional<double> domination_tail(const WeightSequence& tau, const NormingSequence& a,
                                      double eps, double V, long H, std::string& how) {
  if (!forms_usable(tau, a, H) || !(V > 0) || !std::isfinite(V)) return std::nullopt;
  const RegularForm& tf = *tau.form();
  RegularForm G = a.form()->pow(2.0).times_power(-1.0);  // a_n^2 / n
  if (H < G.min_bound_point()) return std::nullopt;
  const double k = eps * eps / V;
  const double x = double(H);
  double decay;
  if (G.power() > 0 && G.pure_power() && tf.pure_power() && tf.power() <= 0) {
    // tau_n e^{-K n^g} is decreasing, so the tail is at most
    // H^b int_H^inf e^{-K t^g} dt = H^b K^{-1/g} Gamma(1/g, K H^g) / g
    const double g = G.power(), b = tf.power();
    const double K = k * std::exp(G.log_constant());
    double lv = tf.log_constant() + b * std::log(x) - std::log(g) - std::log(K) / g +
                std::log(boost::math::tgamma(1.0 / g, K * std::pow(x, g)));
    how = "domination by E X^2; envelope exp(-c n^gamma), incomplete gamma tail";
    if (std::isfinite(lv)) return std::exp(lv);
    return std::nullopt;
  }
  if (G.power() > 0) {
    Interval eg = G.elasticity_bounds(x);
    if (!(eg.lo > 0)) return std::nullopt;
    decay = k * std::exp(G.log_value(x)) * eg.lo;
    how = "domination by E X^2; envelope exp(-c n^gamma)";
  } else if (G.power() == 0 && G.factors().size() == 1 && G.factors()[0].kind == LogFactor::Kind::Log &&
             G.factors()[0].exponent >= 1.0) {
    const auto& f = G.factors()[0];
    double c = std::exp(G.log_constant());
    double l = std::log(f.shift + x);
    decay = k * c * f.exponent * std::pow(l, f.exponent - 1.0) * x / (f.shift + x);
    how = "domination by E X^2; envelope tau_n n^{-eps^2/E X^2} (critical norming)";
  } else {
    return std::nullopt;
  }
  double hi = tf.elasticity_bounds(x).hi - decay;
  if (!(hi < -1.0)) return std::nullopt;
  double lenv = tau.log_eval(H) - k * std::exp(G.log_value(x));
  return std::exp(lenv + std::log(x) - std::log(-1.0 - hi));
}

double truncated_second(const DistModel& x, double b) {
  return truncated_moment(x, {2.0, b, Boundary::Open});
}

}  // namespace

const char* to_string(ConditionId id) {
  switch (id) {
    case ConditionId::I: return "I";
    case ConditionId::II: return "II";
    case ConditionId::III: return "III";
    case ConditionId::SpA: return "SpA";
    case ConditionId::SpB: return "SpB";
    case ConditionId::SpC: return "SpC";
    case ConditionId::SpWeakB: return "SpWeakB";
    case ConditionId::ShowS1: return "ShowS1";
    case ConditionId::ShowS2: return "ShowS2";
    default: return "ShowS3";
  }
}

double condition_ii_log_term(const DistModel& x, const WeightSequence& tau,
                             const NormingSequence& a, double eps, long n) {
  double t = tail(x, eps * a.eval(n));
  return t > 0 ? std::log(double(n)) + tau.log_eval(n) + std::log(t) : kNegInf;
}

double condition_iii_log_term(const DistModel& x, const WeightSequence& tau,
                              const NormingSequence& a, double eps, long n) {
  double an = a.eval(n);
  double T = truncated_second(x, eps * an);
  if (T <= 0) return kNegInf;  // exp(-t/0) = 0
  return tau.log_eval(n) - eps * eps * std::exp(2.0 * std::log(an) - std::log(double(n))) / T;
}

double cor_sp_log_term(const DistModel& x, double eps, long n) {
  static const NormingSequence a = sp_norming();
  double T = truncated_second(x, eps * a.eval(n));
  return T > 0 ? -(1.0 + eps * eps / T) * std::log(double(n)) : kNegInf;
}

Outcome outcome_of(Verdict v) {
  return v == Verdict::Converges ? Outcome::Holds : v == Verdict::Diverges ? Outcome::Fails : Outcome::Inconclusive;
}

Outcome ConditionReport::overall() const {
  bool all = !entries.empty();
  for (const auto& e : entries) {
    if (e.outcome == Outcome::Fails) return Outcome::Fails;
    all = all && e.outcome == Outcome::Holds;
  }
  return all ? Outcome::Holds : Outcome::Inconclusive;
}

SeriesVerdict eval_condition_ii(const DistModel& x, const WeightSequence& tau,
                                const NormingSequence& a, double eps, long horizon) {
  if (!(eps > 0)) throw InputError("epsilon must be > 0");
  const long s0 = common_start(tau, a);
  if (horizon < s0) throw InputError("horizon below start index");
  auto lterm = [&](long n) { return condition_ii_log_term(x, tau, a, eps, n); };
  SeriesVerdict out;
  out.horizon = horizon;
  out.partial_sum = head_sum(lterm, s0, horizon);

  if (forms_usable(tau, a, horizon)) {
    const double xH = double(horizon);
    const double aH = a.eval(horizon);
    auto bound = x.support_bound();
    if (bound && eps * aH > *bound) {
      out.verdict = Verdict::Converges;
      out.tail_bound = 0.0;
      out.method = "bounded support: terms vanish once eps a_n exceeds max|X|";
      return out;
    }
    if (x.kind() == DistKind::SymmetricPareto && x.symmetric() && eps * aH >= x.scale()) {
      // n tau_n (s / (eps a_n))^q exactly past the horizon
      RegularForm F = RegularForm(x.q() * std::log(x.scale() / eps), 1.0) * *tau.form() * a.form()->pow(-x.q());
      SeriesVerdict t = certify_regular_series(F, horizon, horizon);
      out.verdict = t.verdict;
      out.tail_bound = t.tail_bound;
      out.lower_bound_rate = t.lower_bound_rate;
      out.lower_bound_constant = t.lower_bound_constant;
      out.rate_exponent = t.rate_exponent;
      out.method = "closed-form Pareto tail; " + t.method;
      return out;
    }
    if (x.kind() == DistKind::Gaussian && x.symmetric()) {
      // 2(1 - Phi(z)) <= exp(-z^2/2)
      double z = eps * aH / x.sigma();
      double ea = a.form()->elasticity_bounds(xH).lo;
      double hi = 1.0 + tau.form()->elasticity_bounds(xH).hi - z * z * ea;
      if (hi < -1.0) {
        out.verdict = Verdict::Converges;
        double lenv = std::log(xH) + tau.log_eval(horizon) - 0.5 * z * z;
        out.tail_bound = std::exp(lenv + std::log(xH) - std::log(-1.0 - hi));
        out.method = "Gaussian tail envelope exp(-eps^2 a_n^2 / 2 sigma^2)";
        return out;
      }
    }
  }
  SeriesVerdict c = classify_log_series(lterm, s0, horizon);
  c.partial_sum = out.partial_sum;
  return c;
}

SeriesVerdict eval_condition_iii(const DistModel& x, const WeightSequence& tau,
                                 const NormingSequence& a, double eps, long horizon) {
  if (!(eps > 0)) throw InputError("epsilon must be > 0");
  const long s0 = common_start(tau, a);
  if (horizon < s0) throw InputError("horizon below start index");
  auto lterm = [&](long n) { return condition_iii_log_term(x, tau, a, eps, n); };
  SeriesVerdict out;
  out.horizon = horizon;
  out.partial_sum = head_sum(lterm, s0, horizon);

  if (x.kind() == DistKind::Counterexample) {
    if (is_sp_pair(tau, a) && eps == 1.0 && x.ce()->M() >= 2) {
      auto cert = divergence_certificate(*x.ce());
      out.verdict = Verdict::Diverges;
      double mn = kInf;
      for (const auto& b : cert.blocks) mn = std::min(mn, b.lower_bound);
      out.lower_bound_constant = mn;
      std::ostringstream os;
      os << "each block (K_m, K_{m+1}] contributes >= " << mn << "; cumulative over "
         << cert.blocks.size() << " blocks >= " << cert.cumulative;
      out.lower_bound_rate = os.str();
      out.method = "counterexample divergence certificate";
      return out;
    }
    out.method = "counterexample law: no certificate for this epsilon/sequence pair";
    return out;
  }
  double V = x.second_moment();
  if (V == 0.0) {
    out.verdict = Verdict::Converges;
    out.tail_bound = 0.0;
    out.method = "X = 0 a.s.: every truncated moment vanishes";
    return out;
  }
  std::string how;
  if (auto tb = domination_tail(tau, a, eps, V, horizon, how)) {
    out.verdict = Verdict::Converges;
    out.tail_bound = *tb;
    out.method = how;
    return out;
  }
  SeriesVerdict c = classify_log_series(lterm, s0, horizon);
  c.partial_sum = out.partial_sum;
  return c;
}

SeriesVerdict eval_phi_form(const DistModel& x, const WeightSequence& tau,
                            const NormingSequence& a, double eps, double gamma, long horizon) {
  if (!(eps > 0) || !(gamma > 0)) throw InputError("epsilon and gamma must be > 0");
  const long s0 = common_start(tau, a);
  auto lterm = [&](long n) {
    double an = a.eval(n);
    double T = truncated_second(x, eps * an);
    if (T <= 0) return kNegInf;
    double z = gamma * eps * an / std::sqrt(double(n) * T);
    double p = 2.0 * normal_sf(z);
    return p > 0 ? tau.log_eval(n) + std::log(p) : kNegInf;
  };
  SeriesVerdict out;
  out.horizon = horizon;
  out.partial_sum = head_sum(lterm, s0, horizon);
  double V = x.kind() == DistKind::Counterexample ? kInf : x.second_moment();
  std::string how;
  // 2(1 - Phi(z)) <= exp(-z^2/2) turns the term into a (iii)-type envelope
  if (V == 0.0) {
    out.verdict = Verdict::Converges;
    out.tail_bound = 0.0;
    out.method = "X = 0 a.s.";
    return out;
  }
  if (auto tb = domination_tail(tau, a, gamma * eps / std::numbers::sqrt2, V, horizon, how)) {
    out.verdict = Verdict::Converges;
    out.tail_bound = *tb;
    out.method = "Chernoff bound on the Gaussian term; " + how;
    return out;
  }
  SeriesVerdict c = classify_log_series(lterm, s0, horizon);
  c.partial_sum = out.partial_sum;
  return c;
}

namespace {
ConditionReport per_eps(ConditionId id, const std::vector<double>& eps,
                        const std::function<SeriesVerdict(double)>& f) {
  ConditionReport r;
  r.id = id;
  r.eps_grid = eps;
  for (double e : eps) {
    if (!(e > 0)) throw InputError("epsilon grid must be positive");
    ConditionEntry en;
    en.epsilon = e;
    en.series = f(e);
    en.outcome = outcome_of(en.series->verdict);
    en.detail = en.series->method;
    r.entries.push_back(std::move(en));
  }
  return r;
}
}  // namespace

ConditionReport report_condition_ii(const DistModel& x, const WeightSequence& tau,
                                    const NormingSequence& a, const std::vector<double>& eps,
                                    long horizon) {
  return per_eps(ConditionId::II, eps, [&](double e) { return eval_condition_ii(x, tau, a, e, horizon); });
}

ConditionReport report_condition_iii(const DistModel& x, const WeightSequence& tau,
                                     const NormingSequence& a, const std::vector<double>& eps,
                                     long horizon) {
  return per_eps(ConditionId::III, eps, [&](double e) { return eval_condition_iii(x, tau, a, e, horizon); });
}

CorSpReport eval_cor_sp(const DistModel& x, const std::vector<double>& eps, long horizon) {
  for (double e : eps)
    if (!(e > 0)) throw InputError("epsilon grid must be positive");
  CorSpReport rep;
  const auto tau = sp_weights();
  const auto a = sp_norming();

  rep.a.id = ConditionId::SpA;
  ConditionEntry ea;
  if (x.symmetric()) {
    ea.outcome = Outcome::Holds;
    ea.value = 0.0;
    ea.detail = "symmetric law: E X = 0";
  } else {
    double m = x.mean();
    if (std::isnan(m)) {
      ea.outcome = Outcome::Fails;
      ea.detail = "mean undefined (E|X| infinite)";
    } else {
      ea.value = m;
      ea.outcome = std::abs(m) <= 1e-12 ? Outcome::Holds : Outcome::Fails;
      ea.detail = "analytic mean";
    }
  }
  rep.a.entries.push_back(ea);

  rep.b.id = ConditionId::SpB;
  auto mb = log_plus_moment(x);
  ConditionEntry eb;
  eb.outcome = mb.finite ? Outcome::Holds : Outcome::Fails;
  eb.value = mb.value;
  eb.detail = mb.certificate;
  rep.b.entries.push_back(eb);

  rep.c.id = ConditionId::SpC;
  rep.c.eps_grid = eps;
  double maxdiff = 0;
  const long id_end = std::min(horizon, 20000L);
  for (double e : eps) {
    ConditionEntry ec;
    ec.epsilon = e;
    SeriesVerdict iii = eval_condition_iii(x, tau, a, e, horizon);
    auto lc = [&](long n) { return cor_sp_log_term(x, e, n); };
    SeriesVerdict c = iii;
    c.partial_sum = head_sum(lc, 2, horizon);
    c.method = iii.method + " (summands identical to condition (iii))";
    for (long n = 2; n <= id_end; ++n) {
      double an = a.eval(n);
      double T = truncated_second(x, e * an);
      double vc = T > 0 ? std::exp(-(1.0 + e * e / T) * std::log(double(n))) : 0.0;
      double viii = T > 0 ? std::exp(tau.log_eval(n) - e * e * an * an / (double(n) * T)) : 0.0;
      double den = std::max(std::abs(vc), std::abs(viii));
      if (den > 0) maxdiff = std::max(maxdiff, std::abs(vc - viii) / den);
    }
    ec.series = c;
    ec.outcome = outcome_of(c.verdict);
    ec.detail = c.method;
    rep.c.entries.push_back(std::move(ec));
  }
  rep.max_term_rel_diff = maxdiff;
  rep.term_identity = maxdiff <= 1e-12;
  return rep;
}

SpWeakReport eval_sp_weak_bound(const DistModel& x, double delta, long horizon) {
  auto mom = loglog_moment(x, delta);
  if (!mom.finite) throw InputError("loglog moment is divergent; the bound chain needs it finite");
  if (horizon < 3) throw InputError("horizon must be >= 3");
  SpWeakReport rep;
  rep.moment = mom.value;
  const double C = mom.value;
  const auto a = sp_norming();

  auto lterm = [&](long n) {
    double T = truncated_second(x, a.eval(n));
    return T > 0 ? -(1.0 + 1.0 / T) * std::log(double(n)) : kNegInf;
  };
  SeriesVerdict& out = rep.series;
  out.horizon = horizon;
  out.partial_sum = head_sum(lterm, 2, horizon);
  if (C == 0.0) {
    out.verdict = Verdict::Converges;
    out.tail_bound = 0.0;
    out.method = "X = 0 a.s.";
    return rep;
  }

  // h(u) = (log(2+u))^{1+delta}/u with u = log(2+|x|); T_{1,n} <= C / inf_{u <= U_n} h(u).
  auto h = [delta](double u) { return std::pow(std::log(2.0 + u), 1.0 + delta) / u; };
  const double u0 = std::log(2.0);
  // beyond max(2 delta, u0) the sign of h' can only go from + to - once
  double ustop = std::max(2.0 * delta, u0);
  auto dphi = [delta](double u) { return (1.0 + delta) * u / (2.0 + u) - std::log(2.0 + u); };
  while (dphi(ustop) >= 0) ustop *= 2.0;
  std::vector<std::pair<double, double>> minima;  // interior local minima on [u0, ustop]
  const int G = 4000;
  for (int i = 1; i < G; ++i) {
    double ul = u0 + (ustop - u0) * (i - 1) / G, um = u0 + (ustop - u0) * i / G, ur = u0 + (ustop - u0) * (i + 1) / G;
    if (h(um) <= h(ul) && h(um) <= h(ur)) {
      auto r = boost::math::tools::brent_find_minima(h, ul, ur, 50);
      minima.push_back(r);
    }
  }
  auto inf_h = [&](double U) {
    double m = std::min(h(u0), h(U));
    for (auto [u, v] : minima)
      if (u <= U) m = std::min(m, v);
    return m;
  };
  auto B_of_logn = [&](double L) {
    double la = 0.5 * (L + std::log(L));
    double U = la + std::log1p(2.0 * std::exp(-la));
    return C / inf_h(U);
  };
  auto psi = [&](double L) { return L / B_of_logn(L) - 2.0 * std::log(L); };
  const double Lmax = 690.0, step = 0.01;
  double Lfirst = -1;
  for (double L = std::log(3.0); L <= Lmax; L += step) {
    if (psi(L) < 0)
      Lfirst = -1;
    else if (Lfirst < 0)
      Lfirst = L;
  }
  if (Lfirst < 0 || !(psi(Lmax) > psi(Lmax - 1.0))) {
    out.method = "threshold N beyond e^690; chain not certified";
    rep.log_N = kInf;
    return rep;
  }
  rep.log_N = Lfirst;
  const double lH = std::log(double(horizon));
  double tail;
  if (Lfirst <= lH) {
    tail = 1.0 / lH;
  } else {
    // terms <= 1/n on (H, N], then <= 1/(n log^2 n)
    rep.middle_bound = Lfirst - lH + 1.0 / double(horizon);
    tail = rep.middle_bound + 1.0 / Lfirst;
  }
  out.verdict = Verdict::Converges;
  out.tail_bound = tail;
  std::ostringstream os;
  os << "T_{1,n} <= C/inf h with C = " << C << "; terms <= 1/(n log^2 n) for log n >= " << Lfirst;
  out.method = os.str();
  return rep;
}

ElementaryCheck lemma_elementary_check(const Sequence& rho, const WeightSequence& tau,
                                       const NormingSequence& b, const DistModel& x, double t,
                                       long horizon) {
  if (!(t > 0)) throw InputError("moment order t must be > 0");
  ElementaryCheck r;
  const long s = std::max({rho.start(), tau.start(), b.start()});
  if (horizon < s + 10) throw InputError("horizon too short");
  std::optional<double> rho_tail;
  if (rho.form()) rho_tail = regular_tail_bound(*rho.form(), horizon);
  if (!rho_tail) {
    r.detail = "hypothesis not verified: tail of rho beyond the horizon is not boundable";
    return r;
  }
  // suffix sums of rho and prefix sums T of n tau_n
  std::vector<double> suffix(horizon - s + 2, 0.0);
  {
    CompensatedSum acc;
    acc.add(*rho_tail);
    for (long n = horizon; n >= s; --n) {
      acc.add(rho.eval(n));
      suffix[n - s] = acc.value();
    }
  }
  std::vector<double> T(horizon - s + 1);
  {
    CompensatedSum acc;
    for (long n = s; n <= horizon; ++n) {
      acc.add(double(n) * tau.eval(n));
      T[n - s] = acc.value();
    }
  }
  double C = 0;
  for (long n = s + 1; n <= horizon; ++n)
    C = std::max(C, std::exp(t * b.log_eval(n)) * suffix[n - s] / T[n - 1 - s]);
  if (!std::isfinite(C) || C <= 0) {
    r.detail = "hypothesis not verified: no finite C on the window";
    return r;
  }
  r.c = C;
  auto checkpoints = log_grid(s + 1, horizon, 60);
  size_t ci = 0;
  CompensatedSum lhs, rhs;
  rhs.add(double(s) * tau.eval(s));  // first shell taken from 0
  double worst = 0;
  for (long n = s + 1; n <= horizon; ++n) {
    double bn = b.eval(n);
    lhs.add(rho.eval(n) * truncated_moment(x, {t, bn, Boundary::Open}));
    if (ci < checkpoints.size() && checkpoints[ci] == n) {
      double R = C * rhs.value();
      double ratio = R > 0 ? lhs.value() / R : (lhs.value() > 0 ? kInf : 0.0);
      worst = std::max(worst, ratio);
      if (lhs.value() > R * (1 + 1e-12)) {
        r.outcome = Outcome::Fails;
        r.violated_at = n;
        r.max_ratio = worst;
        r.detail = "truncated inequality violated";
        return r;
      }
      ++ci;
    }
    rhs.add(double(n) * tau.eval(n) * tail(x, bn));
  }
  r.outcome = Outcome::Holds;
  r.max_ratio = worst;
  std::ostringstream os;
  os << "LHS(N) <= C RHS(N-1) at " << checkpoints.size() << " checkpoints; worst ratio " << worst;
  r.detail = os.str();
  return r;
}

KlesovCheck lemma_klesov_check(const WeightSequence& tau, const NormingSequence& b,
                               const DistModel& x, double nu, double theta, long horizon) {
  if (!(nu >= 0)) throw InputError("nu must be >= 0");
  KlesovCheck k;
  auto crit = eval_condition_ii(x, tau, b, 1.0, horizon);
  if (crit.verdict != Verdict::Converges) {
    k.reason = std::string("criterion sum n tau_n P(|X| >= b_n) not certified finite: ") + to_string(crit.verdict);
    return k;
  }
  auto g1 = growth_scan(tau, b, theta, nu, 2, horizon);
  if (g1.verdict != Outcome::Holds) {
    k.reason = "first growth hypothesis not certified: " + g1.reason;
    return k;
  }
  auto g2 = liminf_scan(tau, b, nu, 2, horizon);
  if (g2.verdict != Outcome::Holds) {
    k.reason = "second growth hypothesis not certified: " + g2.reason;
    return k;
  }
  const long s0 = common_start(tau, b);
  auto lterm = [&](long n) {
    double bn = b.eval(n);
    double tn = truncated_moment(x, {nu, bn, Boundary::Open});
    if (tn <= 0) return kNegInf;
    return tau.log_eval(n) + theta * (std::log(double(n)) + std::log(tn) - nu * std::log(bn));
  };
  SeriesVerdict& sv = k.series;
  sv.horizon = horizon;
  sv.partial_sum = head_sum(lterm, s0, horizon);
  double M = x.kind() == DistKind::Counterexample ? kInf : x.abs_moment(nu);
  std::optional<double> tb;
  if (std::isfinite(M) && M > 0 && tau.form() && b.form()) {
    RegularForm F = RegularForm(theta * std::log(M), theta) * *tau.form() * b.form()->pow(-nu * theta);
    tb = regular_tail_bound(F, horizon);
  } else if (M == 0) {
    tb = 0.0;
  }
  if (!tb) {
    k.reason = "tail past the horizon not boundable by the full moment";
    return k;
  }
  sv.verdict = Verdict::Converges;
  sv.tail_bound = *tb;
  sv.method = "head + tail with E|X|^nu domination";
  k.finite_certified = true;
  k.bound = sv.partial_sum + *tb;
  return k;
}

double comp_constant(int r) {
  if (r < 1) throw InputError("r must be a positive integer");
  // p_r(x, y) = sum_{i<r} x^i (x - y)^{r-1-i}, so (x - y)^r = x^r - y p_r(x, y)
  auto p = [r](double x, double y) {
    double s = 0;
    for (int i = 0; i < r; ++i) s += std::pow(x, i) * std::pow(x - y, r - 1 - i);
    return s;
  };
  double best = std::max({p(0, 0), p(0, 1), p(1, 0), p(1, 1)});
  const int G = r <= 4 ? 200 : 600;
  for (int i = 0; i <= G; ++i)
    for (int j = 0; j <= G; ++j) best = std::max(best, p(double(i) / G, double(j) / G));
  return best;
}

CompCheck lemma_comp_check(const std::function<double(long)>& alpha,
                           const std::function<double(long)>& beta, const WeightSequence& tau,
                           int r, long horizon) {
  CompCheck c;
  c.c_r = comp_constant(r);
  const long s = tau.start();
  CompensatedSum A, D, B;
  for (long n = s; n <= horizon; ++n) {
    double a = alpha(n), b = beta(n);
    if (!(a >= 0 && a <= 1 && b >= 0 && b <= 1))
      throw InputError("alpha_n and beta_n must lie in [0,1] (n = " + std::to_string(n) + ")");
    double t = tau.eval(n);
    A.add(t * std::pow(a, r));
    D.add(t * std::pow(std::abs(a - b), r));
    B.add(t * b);
    if (A.value() > (D.value() + c.c_r * B.value()) * (1 + 1e-12) && c.implication_holds) {
      c.implication_holds = false;
      c.witness = n;
    }
  }
  c.sum_alpha_r = A.value();
  c.sum_diff_r = D.value();
  c.sum_beta = B.value();
  auto ld = [&](long n) {
    double v = tau.eval(n) * std::pow(std::abs(alpha(n) - beta(n)), r);
    return v > 0 ? std::log(v) : kNegInf;
  };
  auto lb = [&](long n) {
    double v = tau.eval(n) * beta(n);
    return v > 0 ? std::log(v) : kNegInf;
  };
  c.diff_series = classify_log_series(ld, s, horizon).verdict;
  c.beta_series = classify_log_series(lb, s, horizon).verdict;
  c.hypotheses_certified = c.diff_series == Verdict::Converges && c.beta_series == Verdict::Converges;
  return c;
}

}  // namespace hre
