#include "hre/counterexample.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "hre/numeric.hpp"

namespace hre {

namespace {
constexpr double kSafety = 1.01;
constexpr double kLn2 = std::numbers::ln2;
}  // namespace

double psi(double t) {
  if (t < 0) throw DomainError("psi defined for t >= 0");
  if (t >= 2) return std::sqrt(t * std::log(t));
  return t * std::sqrt(2.0 * kLn2) / 2.0;
}

double phi(double y) {
  if (y < 0) throw DomainError("phi defined for y >= 0");
  double y2 = psi(2.0);
  if (y <= y2) return 2.0 * y / y2;
  // t log t = y^2; Newton from t = y^2/log(y^2)
  double target = y * y;
  double t = std::max(2.0, target / std::log(std::max(target, 3.0)));
  for (int i = 0; i < 100; ++i) {
    double f = t * std::log(t) - target;
    double step = f / (std::log(t) + 1.0);
    t -= step;
    if (std::abs(step) <= 1e-15 * t) break;
  }
  return t;
}

double log_psi_from_log(double lambda) {
  if (lambda < kLn2) throw DomainError("log_psi_from_log needs K >= 2");
  return 0.5 * (lambda + std::log(lambda));
}

double rho_bound(double lambda) {
  if (lambda < 1) throw DomainError("rho bound requires log K >= 1");
  return 1.0 + std::exp(-lambda);
}

double inductive_margin_log(int m, double lambda) {
  return -(m + 1) * kLn2 + std::log(lambda) - std::ldexp(1.0, m) * rho_bound(lambda);
}

double logL_bound_s(double lambda, double s) {
  if (!(s > 0)) throw InputError("logL_bound: s must be positive");
  if (lambda < kLn2) throw InputError("logL_bound: need K >= 2");
  // sum_{n>L} n^{-1-s} <= L^{-s}/s and sum_{n>K} n^{-1-s} >= (K+1)^{-s}/s, so any
  // L >= 2^{1/s}(K+1) works; rounding up to an integer adds at most e^{-lambda}.
  return lambda + kLn2 / s + 2.0 * std::exp(-lambda);
}

double logL_bound(double lambda, int m) {
  if (lambda < kLn2) throw InputError("logL_bound: need K >= 2");
  return logL_bound_s(lambda, std::ldexp(1.0, m) / lambda);
}

LevelSolution solve_level(int m, double lambda_prev) {
  if (m < 1) throw InputError("solve_level: m must be >= 1");
  if (m >= 2 && !(lambda_prev >= kLn2)) throw InputError("solve_level: previous level missing");
  const double pm = std::ldexp(1.0, m);
  // In u = log lambda: u - 2^m (1 + exp(-e^u)) - (m+1) log 2 = 0, increasing in u.
  auto f = [&](double u) { return u - pm * (1.0 + std::exp(-std::exp(u))) - (m + 1) * kLn2; };
  double lo = 0.0, hi = pm * 2.0 + (m + 1) * kLn2 + 1.0;
  if (!(f(lo) < 0 && f(hi) > 0)) throw NumericError("solve_level: bracket failed", f(hi));
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  if (iters >= 200) throw NumericError("solve_level: root finder did not converge", b - a);
  LevelSolution s;
  s.root = std::exp(b);
  s.lambda = s.root * kSafety;
  s.l_bound_active = false;
  if (m >= 2) {
    double lb = logL_bound(lambda_prev, m - 1);
    if (lb > s.lambda) {
      s.lambda = lb;
      s.l_bound_active = true;
    }
  }
  if (!(s.lambda > lambda_prev)) s.lambda = std::nextafter(lambda_prev, kInf);
  if (inductive_margin_log(m, s.lambda) < 0)
    throw NumericError("solve_level: inductive inequality fails after solve",
                       inductive_margin_log(m, s.lambda));
  return s;
}

CounterexampleDist build_counterexample(int M) {
  if (M < 1 || M > 8) throw InputError("levels M must be in [1, 8]");
  CounterexampleDist ce;
  double prev = kNegInf;
  LogNumber nonzero = LogNumber::zero();
  for (int m = 1; m <= M; ++m) {
    auto s = solve_level(m, prev);
    CounterexampleLevel lv;
    lv.m = m;
    lv.lambda = s.lambda;
    lv.root = s.root;
    lv.l_bound_active = s.l_bound_active;
    lv.atom = LogNumber::from_log(log_psi_from_log(s.lambda));
    lv.prob = LogNumber::from_log(-(m + 1) * kLn2 - s.lambda);
    nonzero += lv.prob * LogNumber::from_value(2.0);
    ce.levels.push_back(lv);
    prev = s.lambda;
  }
  LogNumber p0 = LogNumber::one().minus(nonzero);
  ce.zero_mass = p0.value();
  ce.total_mass = p0 + nonzero;
  return ce;
}

double phi_moment_truncated(const CounterexampleDist& ce) {
  // 2 * (2^{-m-1}/K_m) * phi(psi(K_m)) = 2^{-m}; summed exactly in binary.
  double s = 0;
  for (const auto& lv : ce.levels) s += std::ldexp(1.0, -lv.m);
  return s;
}

T1nBound T1n_lower_bound(const CounterexampleDist& ce, int m) {
  if (m < 1 || m > ce.M()) throw InputError("T1n_lower_bound: level out of range");
  // 2 * (2^{-j-1}/K_j) * psi(K_j)^2 = 2^{-j} log K_j
  CompensatedSum s;
  for (int j = 1; j <= m; ++j) s.add(std::ldexp(ce.levels[j - 1].lambda, -j));
  return {s.value(), std::ldexp(ce.levels[m - 1].lambda, -m)};
}

bool replay_levels(const CounterexampleDist& ce) {
  for (size_t i = 0; i < ce.levels.size(); ++i) {
    const auto& lv = ce.levels[i];
    // fresh arithmetic: log of 2^{-m-1} * lambda * exp(-2^m (1 + e^{-lambda}))
    double lhs = std::log(std::pow(2.0, -(lv.m + 1)) * lv.lambda) -
                 std::pow(2.0, lv.m) * (1.0 + 1.0 / std::exp(lv.lambda));
    if (!(lhs >= 0)) return false;
    if (i > 0) {
      double lp = ce.levels[i - 1].lambda;
      double s = std::pow(2.0, lv.m - 1) / lp;
      if (!(lv.lambda >= lp + std::log(2.0) / s + 2.0 / std::exp(lp))) return false;
      if (!(lv.lambda > lp)) return false;
    }
  }
  return true;
}

DivergenceCertificate divergence_certificate(const CounterexampleDist& ce) {
  if (ce.M() < 2) throw InputError("divergence certificate needs M >= 2 (no complete block)");
  DivergenceCertificate cert;
  cert.replay_ok = replay_levels(ce);
  CompensatedSum cum;
  for (int m = 1; m < ce.M(); ++m) {
    const auto& lv = ce.levels[m - 1];
    // For n in (K_m, K_{m+1}], T_{1,n} >= 2^{-m} lambda_m =: 1/s, so terms >= n^{-1-s};
    // the block is at least half the full tail, >= (1/2) s^{-1} (K_m+1)^{-s}.
    double s = std::ldexp(1.0, m) / lv.lambda;
    double logb = -kLn2 - std::log(s) - s * (lv.lambda + std::exp(-lv.lambda));
    BlockBound b{m, lv.lambda, std::exp(logb)};
    cum.add(b.lower_bound);
    cert.blocks.push_back(b);
  }
  cert.cumulative = cum.value();
  return cert;
}

}  // namespace hre
