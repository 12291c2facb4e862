#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hre/exact_lattice.hpp"
#include "hre/montecarlo.hpp"
#include "hre/numeric.hpp"

using namespace hre;

namespace {
SimConfig cfg_with(long R, std::uint64_t seed = 7) {
  SimConfig c;
  c.replicates = R;
  c.seed = seed;
  return c;
}
double binom(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }
}  // namespace

TEST_CASE("exact sum laws") {
  auto r4 = exact_sum_law(DistModel::rademacher(), 4);
  CHECK(r4.total() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r4.abs_tail(4.0) == doctest::Approx(2.0 / 16).epsilon(1e-14));
  CHECK(r4.abs_tail(2.0) == doctest::Approx(10.0 / 16).epsilon(1e-14));
  CHECK(r4.abs_tail(5.0) == 0.0);

  // uniform {-3..3} \ {0}: S_2 = 6 only from (3,3)
  auto u = DistModel::atomic_symmetric({{1.0, 1.0 / 6}, {2.0, 1.0 / 6}, {3.0, 1.0 / 6}});
  auto u2 = exact_sum_law(u, 2);
  CHECK(u2.abs_tail(6.0) == doctest::Approx(2.0 / 36).epsilon(1e-14));
  CHECK(u2.abs_tail(5.0) == doctest::Approx(6.0 / 36).epsilon(1e-14));
  CHECK(u2.total() == doctest::Approx(1.0).epsilon(1e-13));

  // convolution path against the binomial path on the same law
  auto conv = exact_sum_law({{-1.0, 0.25}, {1.0, 0.25}, {3.0, 0.5}}, 30);
  CHECK(conv.total() == doctest::Approx(1.0).epsilon(1e-12));
  auto bin = exact_sum_law(DistModel::rademacher(), 30);
  auto conv2 = exact_sum_law({{-1.0, 0.5}, {1.0, 0.5}, {7.0, 0.0}}, 30);  // zero atom is dropped
  for (double x : {0.0, 2.0, 10.0, 20.0}) CHECK(conv2.abs_tail(x) == doctest::Approx(bin.abs_tail(x)).epsilon(1e-12));

  // binomial closed form
  double p = 0;
  for (int k = 0; k <= 45; ++k) p += binom(100, k);
  p = 2 * p / std::pow(2.0, 100);
  CHECK(exact_sum_law(DistModel::rademacher(), 100).abs_tail(10.0) == doctest::Approx(p).epsilon(1e-12));

  // shifted law: Rademacher + 1 has values {0, 2}
  auto sh = exact_sum_law(DistModel::rademacher().shifted(1.0), 10);
  CHECK(sh.lower_median() == doctest::Approx(10.0));
  CHECK(lattice_step({-0.9, 1.1}) == doctest::Approx(0.1));
}

TEST_CASE("tail estimates") {
  auto d = DistModel::rademacher();
  auto t = estimate_tail(d, 4, 4.0, cfg_with(100000));
  CHECK(std::abs(t.p_hat - 0.125) <= 4 * t.std_err);
  CHECK(t.std_err == doctest::Approx(std::sqrt(t.p_hat * (1 - t.p_hat) / 1e5)));
  CHECK(estimate_tail(d, 4, 5.0, cfg_with(10000)).p_hat == 0.0);
  CHECK(estimate_tail(DistModel::gaussian(1.0), 7, 0.0, cfg_with(10000)).p_hat == 1.0);
  CHECK(estimate_tail(d, 9, 0.0, cfg_with(10000)).p_hat == 1.0);
}

TEST_CASE("sums do not depend on the worker count") {
  for (const auto& d : {DistModel::rademacher(), DistModel::gaussian(2.0), DistModel::symmetric_pareto(1.5, 1.0)}) {
    SimConfig c1 = cfg_with(5000, 99), c4 = c1;
    c4.workers = 4;
    auto a = simulate_sums(d, 37, c1);
    auto b = simulate_sums(d, 37, c4);
    CHECK(a == b);
    CHECK(a[123] == sample_sum(d, 37, 99, 123));
  }
}

TEST_CASE("coverage against exact oracles") {
  auto rad = DistModel::rademacher();
  auto u = DistModel::atomic_symmetric({{1.0, 1.0 / 6}, {2.0, 1.0 / 6}, {3.0, 1.0 / 6}});
  struct Cell {
    const DistModel* d;
    long n;
    double x;
    double p;
  };
  std::vector<Cell> cells;
  for (const DistModel* d : {&rad, &u})
    for (long n : {4L, 10L, 25L}) {
      auto law = exact_sum_law(*d, n);
      for (double k : {0.5, 1.0, 2.0}) cells.push_back({d, n, k * std::sqrt(double(n)), law.abs_tail(k * std::sqrt(double(n)))});
    }
  long inside = 0, total = 0;
  const long R = 2000;
  for (std::uint64_t seed = 1; seed <= 100; ++seed)
    for (const auto& c : cells) {
      auto t = estimate_tail(*c.d, c.n, c.x, cfg_with(R, seed));
      double se = std::sqrt(c.p * (1 - c.p) / R);
      inside += std::abs(t.p_hat - c.p) <= 4 * se;
      ++total;
    }
  CHECK(double(inside) / total >= 0.99);
}

TEST_CASE("medians") {
  auto m2 = estimate_median(DistModel::rademacher(), 2, cfg_with(10000));
  CHECK(m2.mu_hat == 0.0);
  CHECK(m2.contains_zero);
  for (long n : {1L, 5L, 50L}) {
    auto m = estimate_median(DistModel::gaussian(1.0), n, cfg_with(4000, 3));
    CHECK(m.contains_zero);
    CHECK(m.ci_lo <= m.mu_hat);
    CHECK(m.mu_hat <= m.ci_hi);
  }
  auto sh = estimate_median(DistModel::rademacher().shifted(1.0), 10, cfg_with(10000));
  CHECK(sh.ci_lo <= 10.0);
  CHECK(10.0 <= sh.ci_hi);
  // CI endpoints are realized sample values
  auto sums = simulate_sums(DistModel::gaussian(1.0), 3, cfg_with(2000));
  auto m = median_from_sums(sums, 3);
  CHECK(std::find(sums.begin(), sums.end(), m.ci_lo) != sums.end());
  CHECK(std::find(sums.begin(), sums.end(), m.ci_hi) != sums.end());
  CHECK_THROWS_AS(estimate_median(DistModel::rademacher(), 2, cfg_with(999)), InputError);
}

TEST_CASE("condition (i) from medians") {
  auto a = NormingSequence::power_law(0.5);
  auto tau = WeightSequence::power_law(0.0);
  SimConfig c = cfg_with(2000);
  c.n_grid = log_grid(1, 2000, 10);
  auto sym = estimate_condition_i(DistModel::rademacher(), tau, a, {1.0}, c);
  CHECK(sym.entries[0].outcome == Outcome::Holds);
  CHECK(*sym.entries[0].value == 0.0);

  auto one = estimate_condition_i(DistModel::constant(1.0), tau, a, {1.0}, c);
  CHECK(one.entries[0].outcome == Outcome::Fails);
  CHECK(*one.entries[0].value == doctest::Approx(double(c.n_grid.size() - 1)));  // all but n = 1

  auto drift = estimate_condition_i(DistModel::rademacher().shifted(0.1), tau, a, {1.0}, c);
  CHECK(drift.entries[0].outcome == Outcome::Fails);
  CHECK(drift.entries[0].detail.find(std::to_string(c.n_grid.back())) != std::string::npos);
  // small n are not flagged: 0.1 n < sqrt(n) below n = 100
  CHECK(drift.entries[0].detail.find("(n = 1 ") == std::string::npos);
}

TEST_CASE("weighted series") {
  SimConfig c = cfg_with(10000);
  c.n_grid = log_grid(1, 500, 12);
  auto zero = estimate_weighted_series(DistModel::rademacher(), WeightSequence::power_law(0.0),
                                       NormingSequence::power_law(1.0), 1.5, c);
  for (const auto& r : zero.rows) CHECK(r.p_hat == 0.0);
  CHECK(zero.rows.back().partial_sum == 0.0);
  CHECK(zero.interpolated);

  SimConfig cs = cfg_with(20000);
  cs.n_grid = log_grid(50, 2000, 10);
  auto sp = estimate_weighted_series(DistModel::rademacher(), sp_weights(), sp_norming(), 1.0, cs);
  for (size_t i = 1; i < sp.rows.size(); ++i) {
    double se = std::hypot(sp.rows[i].std_err / sp.rows[i].n, sp.rows[i - 1].std_err / sp.rows[i - 1].n);
    CHECK(sp.rows[i].weighted_term <= sp.rows[i - 1].weighted_term + 3 * se);
  }

  SimConfig cp = cfg_with(4000);
  cp.n_grid = {1, 10, 100, 1000};
  auto par = estimate_weighted_series(DistModel::symmetric_pareto(1.5, 1.0), WeightSequence::power_law(0.0),
                                      NormingSequence::power_law(1.0), 1.0, cp);
  // increments n^{-1/2}: the partial sum keeps growing across decades
  for (size_t i = 1; i < par.rows.size(); ++i) CHECK(par.rows[i].partial_sum > par.rows[i - 1].partial_sum);
  CHECK(par.rows.back().partial_sum > 10.0);
}

TEST_CASE("Nagaev gap") {
  auto a = NormingSequence::power_law(0.5);
  auto r = nagaev_gap_exact(DistModel::rademacher(), a, 100, 1.0, 1.0, 1.0);
  CHECK(r.p_emp == doctest::Approx(0.368).epsilon(0.002));
  CHECK(r.gaussian == doctest::Approx(2 * normal_sf(1.0)).epsilon(1e-14));
  CHECK(r.gap == doctest::Approx(0.0509).epsilon(0.01));
  CHECK(r.bound == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.pass);

  CHECK(calibrate_nagaev_constant() == doctest::Approx(kNagaevC).epsilon(1e-12));

  auto sweep = nagaev_sweep_exact(DistModel::rademacher(), a, {25, 100, 400, 1600}, 1.0, 1.0);
  CHECK(sweep.all_pass);
  CHECK(sweep.slope >= -0.7);
  CHECK(sweep.slope <= -0.3);

  // T = 0: eps a_n below the support, both terms vanish
  auto far = DistModel::atomic_symmetric({{50.0, 0.5}});
  auto z = nagaev_gap_exact(far, a, 9, 1.0, 1.0);
  CHECK(z.gaussian == 0.0);
  CHECK(z.p_emp == 0.0);
  CHECK(z.gap == 0.0);
  CHECK(z.pass);

  auto u = DistModel::atomic_symmetric({{1.0, 1.0 / 6}, {2.0, 1.0 / 6}, {3.0, 1.0 / 6}});
  for (const auto& d : {DistModel::rademacher(), u})
    for (long n : {25L, 100L, 400L}) {
      auto m = nagaev_gap_check(d, a, n, 1.0, 1.0, cfg_with(20000));
      CHECK(m.pass);
    }
  CHECK_THROWS_AS(nagaev_gap_exact(DistModel::rademacher().shifted(0.5), a, 10, 1, 1), InputError);
}

TEST_CASE("Hoffmann-Jorgensen fit") {
  auto d = DistModel::rademacher();
  auto lam = [](long n) {
    std::vector<double> l;
    for (double x : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) l.push_back(x * std::sqrt(double(n)));
    return l;
  };
  // below every mass threshold: lhs <= 1 <= C n
  auto tiny = hj_fit_exact(d, 10, 2, {0.1, 0.2});
  CHECK(tiny.points[0].single == 10.0);
  CHECK(std::isfinite(tiny.D));

  auto ex = hj_fit_exact(d, 10, 2, lam(10));
  for (const auto& p : ex.points) CHECK(p.lhs <= ex.C * p.single + ex.D * p.power + 1e-15);
  auto f1 = hj_fit(d, 10, 2, lam(10), cfg_with(100000, 1));
  auto f2 = hj_fit(d, 10, 2, lam(10), cfg_with(100000, 2));
  CHECK(std::isfinite(f1.D));
  CHECK(std::max(f1.D, f2.D) / std::min(f1.D, f2.D) < 1.1);
  CHECK(f1.C == f2.C);
  for (auto [C, D] : ex.frontier) CHECK(D <= ex.D + 1e-15);

  auto t = hj_transfer_check(ex, d, 100, lam(100), cfg_with(100000));
  CHECK(t.pass);
  CHECK_THROWS_AS(hj_fit_exact(d, 10, 1, lam(10)), InputError);
}

TEST_CASE("Lemma Sp criteria") {
  SimConfig c = cfg_with(20000);
  auto rad = lemma_sp_check(DistModel::rademacher(), {100, 1000}, 1.0, c);
  CHECK(rad.log_moment.finite);
  CHECK(rad.show1.verdict == Verdict::Converges);
  for (const auto& r : rad.show2) CHECK(r.value == doctest::Approx(1.0 / std::log(double(r.n))).epsilon(1e-12));
  for (const auto& r : rad.show3) CHECK(r.value == 0.0);
  CHECK(rad.show2_verdict == Outcome::Holds);
  CHECK(rad.show3_verdict == Outcome::Holds);
  CHECK(rad.empirical.size() == 2);

  auto g = lemma_sp_check(DistModel::gaussian(1.0), {100}, 1.0, c);
  CHECK(g.show2_verdict == Outcome::Holds);
  CHECK(g.show2.back().value == doctest::Approx(1.0 / std::log(1e6)).epsilon(1e-6));

  auto p = lemma_sp_check(DistModel::symmetric_pareto(2.0, 1.0), {100}, 1.0, c);
  CHECK_FALSE(p.log_moment.finite);
  CHECK(p.show2_verdict != Outcome::Holds);
  CHECK(p.empirical.size() == 1);
}
