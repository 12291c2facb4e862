#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hre/counterexample.hpp"
#include "hre/numeric.hpp"
#include "hre/rng.hpp"

using namespace hre;

TEST_CASE("philox known-answer vectors") {
  auto z = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(z == std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  auto f = philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  CHECK(f == std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  auto p = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  CHECK(p == std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter streams are position-pure") {
  CounterStream a(derive_key(1, 2, 3), 7), b(derive_key(1, 2, 3), 7), c(derive_key(1, 2, 3), 8);
  for (int i = 0; i < 10; ++i) {
    auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CounterStream u(5, 0);
  double mn = 1, mx = 0, mean = 0;
  for (int i = 0; i < 100000; ++i) {
    double v = u.next_uniform();
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    mean += v;
  }
  CHECK(mn > 0);
  CHECK(mx <= 1);
  CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("psi and phi") {
  CHECK(psi(0.0) == 0.0);
  CHECK(psi(2.0) == doctest::Approx(std::sqrt(2 * std::log(2.0))));
  CHECK(psi(1.0) == doctest::Approx(psi(2.0) / 2));
  for (double t : {2.0, 10.0, 1e6, 1e12}) CHECK(phi(psi(t)) == doctest::Approx(t).epsilon(1e-12));
  CHECK(log_psi_from_log(std::log(1e6)) == doctest::Approx(std::log(psi(1e6))));
}

TEST_CASE("solve_level examples") {
  auto l1 = solve_level(1, kNegInf);
  // independent oracle: lambda e^{-2(1+e^{-lambda})} = 4 solved by bisection
  double lo = 2, hi = 100;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (mid * std::exp(-2 * (1 + std::exp(-mid))) < 4 ? lo : hi) = mid;
  }
  CHECK(l1.root == doctest::Approx(lo).epsilon(1e-12));
  CHECK(l1.root == doctest::Approx(4 * std::exp(2.0)).epsilon(1e-9));
  CHECK(l1.lambda == doctest::Approx(1.01 * l1.root));
  auto l2 = solve_level(2, l1.lambda);
  CHECK(l2.root == doctest::Approx(8 * std::exp(4.0)).epsilon(1e-9));
  CHECK(l2.lambda > l1.lambda);
  for (int m = 1; m <= 6; ++m) {
    auto ce = build_counterexample(m);
    for (const auto& lv : ce.levels) CHECK(inductive_margin_log(lv.m, lv.lambda) >= 0);
  }
  CHECK_THROWS_AS(solve_level(0, 0.0), InputError);
}

TEST_CASE("logL bound") {
  // s = 1: log L = lambda + log 2 + margin
  double lam = 8.0;
  CHECK(logL_bound(lam, 3) == doctest::Approx(lam + std::log(2.0) + 2 * std::exp(-lam)));
  // monotone decreasing in s
  double prev = kInf;
  for (double s : {0.01, 0.1, 0.5, 1.0, 2.0, 4.0}) {
    double v = logL_bound_s(10.0, s);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(logL_bound_s(10.0, 1e-4) - 10.0 > 1000.0);
  CHECK_THROWS_AS(logL_bound_s(10.0, 0.0), InputError);

  // K = 10, m = 0: s = 1/log 10; brute-force partial sum vs bracketed full tail
  const double K = 10, lamK = std::log(K), s = 1.0 / lamK;
  long L = long(std::floor(std::exp(logL_bound(lamK, 0))));
  const long N = 2000000;
  CompensatedSum head, part;
  for (long n = 11; n <= N; ++n) {
    double t = std::pow(double(n), -1 - s);
    head.add(t);
    if (n <= L) part.add(t);
  }
  REQUIRE(L < N);
  double tail_upper = head.value() + std::pow(double(N), -s) / s;  // + integral from N
  CHECK(part.value() >= 0.5 * tail_upper);
}

TEST_CASE("build_counterexample") {
  auto c1 = build_counterexample(1);
  REQUIRE(c1.levels.size() == 1);
  CHECK(c1.levels[0].prob.log() == doctest::Approx(-2 * std::log(2.0) - c1.levels[0].lambda));
  CHECK(c1.levels[0].atom.log() == doctest::Approx(0.5 * (c1.levels[0].lambda + std::log(c1.levels[0].lambda))));
  for (int M = 1; M <= 8; ++M) {
    auto ce = build_counterexample(M);
    CHECK(std::abs(ce.total_mass.log()) < 1e-12);
    CHECK(replay_levels(ce));
    for (int m = 1; m < M; ++m) CHECK(ce.levels[m].lambda > ce.levels[m - 1].lambda);
  }
  CHECK_THROWS_AS(build_counterexample(0), InputError);
  CHECK_THROWS_AS(build_counterexample(9), InputError);
}

TEST_CASE("phi moment and T1n") {
  CHECK(phi_moment_truncated(build_counterexample(3)) == 7.0 / 8.0);
  CHECK(phi_moment_truncated(build_counterexample(1)) == 0.5);
  for (int M = 1; M <= 8; ++M) CHECK(phi_moment_truncated(build_counterexample(M)) + std::ldexp(1.0, -M) == 1.0);

  auto ce = build_counterexample(4);
  auto t1 = T1n_lower_bound(ce, 1);
  CHECK(t1.exact == doctest::Approx(ce.levels[0].lambda / 2));
  CHECK(t1.single == t1.exact);
  auto t2 = T1n_lower_bound(ce, 2);
  CHECK(t2.exact == doctest::Approx(ce.levels[0].lambda / 2 + ce.levels[1].lambda / 4));
  CHECK(t2.single == doctest::Approx(ce.levels[1].lambda / 4));
  for (int m = 1; m <= 4; ++m) CHECK(T1n_lower_bound(ce, m).exact >= T1n_lower_bound(ce, m).single);
}

TEST_CASE("divergence certificate") {
  double prev = 0;
  for (int M = 2; M <= 8; ++M) {
    auto cert = divergence_certificate(build_counterexample(M));
    CHECK(cert.replay_ok);
    CHECK(cert.blocks.size() == size_t(M - 1));
    for (const auto& b : cert.blocks) CHECK(b.lower_bound >= 0.5);
    CHECK(cert.cumulative >= M / 2.0);
    CHECK(cert.cumulative >= prev);
    prev = cert.cumulative;
  }
  CHECK(divergence_certificate(build_counterexample(4)).cumulative >= 2.0);
  CHECK_THROWS_AS(divergence_certificate(build_counterexample(1)), InputError);
}
