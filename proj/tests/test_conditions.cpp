#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "hre/conditions.hpp"
#include "hre/counterexample.hpp"
#include "hre/numeric.hpp"

using namespace hre;

namespace {
WeightSequence ones() { return WeightSequence::power_law(0.0); }
NormingSequence linear() { return NormingSequence::power_law(1.0); }
std::shared_ptr<const CounterexampleDist> ce4() {
  static auto d = std::make_shared<const CounterexampleDist>(build_counterexample(4));
  return d;
}
}  // namespace

TEST_CASE("condition (ii): closed-form examples") {
  auto r = eval_condition_ii(DistModel::rademacher(), ones(), linear(), 0.5, 1000);
  CHECK(r.verdict == Verdict::Converges);
  REQUIRE(r.tail_bound);
  CHECK(*r.tail_bound == 0.0);
  // terms n P(|X| >= n/2): 1*1 + 2*1, then zero
  CHECK(r.partial_sum == doctest::Approx(3.0).epsilon(1e-15));

  auto p15 = eval_condition_ii(DistModel::symmetric_pareto(1.5, 1.0), ones(), linear(), 1.0, 100000);
  CHECK(p15.verdict == Verdict::Diverges);
  REQUIRE(p15.rate_exponent);
  CHECK(*p15.rate_exponent == doctest::Approx(-0.5));
  CHECK(p15.lower_bound_rate.has_value());
  // n * n^{-1.5} summed directly
  CompensatedSum s;
  for (long n = 1; n <= 100000; ++n) s.add(std::pow(double(n), -0.5));
  CHECK(p15.partial_sum == doctest::Approx(s.value()).epsilon(1e-10));

  auto p3 = eval_condition_ii(DistModel::symmetric_pareto(3.0, 1.0), ones(), linear(), 1.0, 100000);
  CHECK(p3.verdict == Verdict::Converges);
  REQUIRE(p3.tail_bound);
  // tail of n^{-2} past H is below 1/H
  CHECK(*p3.tail_bound <= 1.0 / 1e5 * 1.0000001);
  CHECK(*p3.tail_bound >= 1.0 / (1e5 + 1));
  CHECK(p3.partial_sum + *p3.tail_bound >= M_PI * M_PI / 6 - 1e-12);

  CHECK_THROWS_AS(eval_condition_ii(DistModel::rademacher(), ones(), linear(), 0.0, 100), InputError);
}

TEST_CASE("condition (ii): Gaussian envelope") {
  auto r = eval_condition_ii(DistModel::gaussian(1.0), sp_weights(), sp_norming(), 1.0, 10000);
  CHECK(r.verdict == Verdict::Converges);
  REQUIRE(r.tail_bound);
  CHECK(*r.tail_bound < 1e-3);
}

TEST_CASE("condition (iii): Rademacher with the corollary sequences matches p-series") {
  const long H = 200000;
  for (double eps : kDefaultEpsGrid) {
    auto r = eval_condition_iii(DistModel::rademacher(), sp_weights(), sp_norming(), eps, H);
    CHECK(r.verdict == Verdict::Converges);
    // oracle: T = 1 once eps a_n > 1, else T = 0 and the term is 0
    CompensatedSum s;
    for (long n = 2; n <= H; ++n)
      if (eps * std::sqrt(n * std::log(double(n))) > 1.0) s.add(std::pow(double(n), -1.0 - eps * eps));
    CHECK(std::abs(r.partial_sum - s.value()) <= 1e-10 * s.value());
    REQUIRE(r.tail_bound);
    double expect = std::pow(double(H), -eps * eps) / (eps * eps);
    CHECK(*r.tail_bound == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("condition (iii): slow stretched-exponential envelope is certified") {
  // a_n = n^0.6, tau = 1: terms <= exp(-eps^2 n^0.2), summable but far from
  // decaying like 1/n at any reachable horizon
  const long H = 100000;
  const double eps = 0.25, k = eps * eps;
  auto r = eval_condition_iii(DistModel::rademacher(), ones(), NormingSequence::power_law(0.6), eps, H);
  CHECK(r.verdict == Verdict::Converges);
  REQUIRE(r.tail_bound);
  // oracle: t = u^5 turns the tail integral into int 5 u^4 e^{-k u} du
  double u0 = std::pow(double(H), 0.2);
  double integral =
      integrate([&](double u) { return 5.0 * std::pow(u, 4) * std::exp(-k * u); }, u0, INFINITY).value;
  CHECK(*r.tail_bound == doctest::Approx(integral).epsilon(1e-8));
  CompensatedSum direct;
  for (long n = H + 1; n <= 10 * H; ++n) direct.add(std::exp(-k * std::pow(double(n), 0.2)));
  CHECK(direct.value() <= *r.tail_bound);
}

TEST_CASE("condition (iii): zero truncated moment gives zero terms") {
  auto x = DistModel::atomic_symmetric({{5.0, 0.5}});
  // eps a_n <= 5 means T = 0; with a_n = n^{0.1} that covers a long head
  auto a = NormingSequence::power_law(0.1);
  auto r = eval_condition_iii(x, ones(), a, 0.25, 1000);
  CHECK(r.partial_sum == 0.0);
  auto z = eval_condition_iii(DistModel::constant(0.0), ones(), linear(), 1.0, 1000);
  CHECK(z.verdict == Verdict::Converges);
  CHECK(z.partial_sum == 0.0);
  CHECK(*z.tail_bound == 0.0);
}

TEST_CASE("condition (iii): counterexample diverges at eps = 1") {
  auto x = DistModel::counterexample(ce4());
  auto r = eval_condition_iii(x, sp_weights(), sp_norming(), 1.0, 10000);
  CHECK(r.verdict == Verdict::Diverges);
  CHECK(r.lower_bound_rate.has_value());
  CHECK(r.lower_bound_constant >= 1.0);
}

TEST_CASE("corollary checks") {
  auto rad = eval_cor_sp(DistModel::rademacher(), kDefaultEpsGrid, 50000);
  CHECK(rad.a.overall() == Outcome::Holds);
  CHECK(rad.b.overall() == Outcome::Holds);
  CHECK(rad.c.overall() == Outcome::Holds);
  CHECK(rad.c.entries.size() == kDefaultEpsGrid.size());
  CHECK(rad.term_identity);

  auto g = eval_cor_sp(DistModel::gaussian(1.0), kDefaultEpsGrid, 20000);
  CHECK(g.a.overall() == Outcome::Holds);
  CHECK(g.b.overall() == Outcome::Holds);
  CHECK(g.c.overall() == Outcome::Holds);
  CHECK(g.term_identity);

  auto c = eval_cor_sp(DistModel::counterexample(ce4()), {1.0}, 10000);
  CHECK(c.a.overall() == Outcome::Holds);
  CHECK(c.b.overall() == Outcome::Holds);
  CHECK(c.c.overall() == Outcome::Fails);
  CHECK(c.term_identity);

  CHECK_THROWS_AS(eval_cor_sp(DistModel::rademacher(), {0.5, -1.0}, 100), InputError);
}

TEST_CASE("Gaussian truncated moments stay below 1 so corollary terms are dominated") {
  auto x = DistModel::gaussian(1.0);
  auto a = sp_norming();
  for (long n : {2L, 10L, 100L, 1000L}) {
    double T = truncated_moment(x, {2.0, a.eval(n), Boundary::Open});
    CHECK(T <= 1.0 + 1e-15);
    CHECK(std::pow(double(n), -1.0 - 1.0 / T) <= std::pow(double(n), -2.0) * (1 + 1e-12));
  }
}

TEST_CASE("weak-moment bound chain") {
  auto r = eval_sp_weak_bound(DistModel::rademacher(), 1.0, 10000);
  CHECK(r.series.verdict == Verdict::Converges);
  REQUIRE(r.series.tail_bound);
  CHECK(std::isfinite(*r.series.tail_bound));
  CHECK(std::isfinite(r.log_N));
  CHECK(r.moment > 0);

  auto g = eval_sp_weak_bound(DistModel::gaussian(1.0), 0.5, 10000);
  CHECK(g.series.verdict == Verdict::Converges);
  CHECK(g.series.tail_bound.has_value());

  CHECK_THROWS_AS(eval_sp_weak_bound(DistModel::symmetric_pareto(2.0, 1.0), 0.5, 1000), InputError);
}

TEST_CASE("weak-moment chain terms really fall below 1/(n log^2 n) past N") {
  auto x = DistModel::rademacher();
  auto r = eval_sp_weak_bound(x, 1.0, 1000);
  REQUIRE(std::isfinite(r.log_N));
  auto a = sp_norming();
  long N = std::max(3L, long(std::ceil(std::exp(r.log_N))));
  for (long n = N; n < N + 2000; n += 37) {
    double T = truncated_moment(x, {2.0, a.eval(n), Boundary::Open});
    double term = std::pow(double(n), -1.0 - 1.0 / T);
    CHECK(term <= 1.0 / (n * std::log(double(n)) * std::log(double(n))));
  }
}

TEST_CASE("elementary lemma") {
  auto rho = Sequence::from_form(RegularForm(0.0, -1.5, {{LogFactor::Kind::Log, 0.0, -1.5}}), 2);
  auto r = lemma_elementary_check(rho, sp_weights(), sp_norming(), DistModel::rademacher(), 3.0, 20000);
  CHECK(r.outcome == Outcome::Holds);
  CHECK(r.c > 0);
  CHECK(r.max_ratio <= 1.0);

  auto g = lemma_elementary_check(rho, sp_weights(), sp_norming(), DistModel::gaussian(1.0), 3.0, 5000);
  CHECK(g.outcome == Outcome::Holds);

  // no mass below b_n while b_n < 100 (n <= 1000): the left side is identically 0
  auto far = DistModel::atomic_symmetric({{100.0, 0.5}});
  auto f = lemma_elementary_check(rho, sp_weights(), sp_norming(), far, 3.0, 1000);
  CHECK(f.outcome == Outcome::Holds);
  CHECK(f.max_ratio == 0.0);

  auto custom = Sequence::custom([](long n) { return -2.0 * std::log(double(n)); }, 2, "n^-2");
  auto c = lemma_elementary_check(custom, sp_weights(), sp_norming(), DistModel::rademacher(), 3.0, 2000);
  CHECK(c.outcome == Outcome::Inconclusive);
}

TEST_CASE("Klesov-type lemma") {
  auto rad = DistModel::rademacher();
  auto k3 = lemma_klesov_check(sp_weights(), sp_norming(), rad, 3.0, 1.0, 100000);
  CHECK(k3.finite_certified);
  CHECK(k3.bound >= k3.series.partial_sum);
  // nu = 2: terms are 1/(n log n) once b_n > 1, so the sum diverges and
  // the growth hypothesis cannot be certified
  auto k2 = lemma_klesov_check(sp_weights(), sp_norming(), rad, 2.0, 1.0, 100000);
  CHECK_FALSE(k2.finite_certified);
  CHECK_FALSE(k2.reason.empty());
  auto bad = lemma_klesov_check(ones(), linear(), DistModel::symmetric_pareto(1.5, 1.0), 2.0, 1.0, 10000);
  CHECK_FALSE(bad.finite_certified);
  CHECK(bad.reason.find("criterion") != std::string::npos);
}

TEST_CASE("comparison lemma constant") {
  CHECK(comp_constant(1) == 1.0);
  // p_r(1, 0) = r is the maximum on the unit square
  for (int r = 2; r <= 6; ++r) CHECK(comp_constant(r) == doctest::Approx(double(r)).epsilon(1e-12));
  CHECK_THROWS_AS(comp_constant(0), InputError);
}

TEST_CASE("comparison lemma checks") {
  auto inv = [](long n) { return 1.0 / double(n); };
  auto inv2 = [](long n) { return 1.0 / double(n) / double(n); };
  auto same = lemma_comp_check(inv2, inv2, ones(), 2, 10000);
  CHECK(same.implication_holds);
  CHECK(same.sum_diff_r == 0.0);
  CHECK(same.sum_alpha_r <= same.c_r * same.sum_beta);

  auto r1 = lemma_comp_check(inv, inv2, ones(), 1, 1000);
  CHECK(r1.c_r == 1.0);
  CHECK(r1.implication_holds);

  auto r2 = lemma_comp_check(inv, [](long n) { return std::min(1.0, 1.0 / n + 1.0 / (double(n) * n)); },
                             ones(), 2, 100000);
  CHECK(r2.implication_holds);
  CHECK(std::isfinite(r2.sum_alpha_r));
  CHECK(r2.diff_series == Verdict::Converges);
  CHECK_FALSE(r2.hypotheses_certified);

  CHECK_THROWS_AS(lemma_comp_check([](long) { return 1.5; }, inv, ones(), 2, 10), InputError);
}

TEST_CASE("sufficiency of growth plus (ii) for (iii) on power norming") {
  struct Case {
    double beta, alpha;
    DistModel x;
  };
  std::vector<Case> cases{
      {0.0, 1.0, DistModel::rademacher()},
      {0.0, 1.0, DistModel::gaussian(2.0)},
      {0.0, 1.0, DistModel::symmetric_pareto(3.0, 1.0)},
      {-1.0, 0.75, DistModel::gaussian(1.0)},
      {-0.5, 1.0, DistModel::atomic_symmetric({{1.0, 0.25}, {3.0, 0.25}})},
      {1.0, 1.5, DistModel::symmetric_pareto(4.0, 1.0)},
  };
  int exercised = 0;
  for (auto& c : cases) {
    auto tau = WeightSequence::power_law(c.beta);
    auto a = NormingSequence::power_law(c.alpha);
    bool grows = false;
    for (double th : kThetaGrid)
      grows = grows || verify_growth_condition(tau, a, th, GrowthVariant::Quadratic, 2, 100000).verdict == Outcome::Holds;
    auto ii = eval_condition_ii(c.x, tau, a, 1.0, 100000);
    if (!grows || ii.verdict != Verdict::Converges) continue;
    ++exercised;
    for (double eps : kDefaultEpsGrid) {
      auto iii = eval_condition_iii(c.x, tau, a, eps, 100000);
      CHECK(iii.verdict == Verdict::Converges);
    }
  }
  CHECK(exercised >= 4);
}
