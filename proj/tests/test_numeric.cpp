#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hre/log_number.hpp"
#include "hre/numeric.hpp"
#include "hre/regular_form.hpp"

using namespace hre;

TEST_CASE("compensated sum beats naive accumulation") {
  CompensatedSum s;
  double naive = 0;
  s.add(1.0);
  naive += 1.0;
  for (int i = 0; i < 1000000; ++i) {
    s.add(1e-16);
    naive += 1e-16;
  }
  CHECK(naive == 1.0);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-15));
}

TEST_CASE("normal tail utilities") {
  CHECK(normal_sf(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-14));
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  // far tail relative accuracy, reference value 1-Phi(10) = 7.619853024160527e-24
  CHECK(normal_sf(10.0) == doctest::Approx(7.619853024160527e-24).epsilon(1e-12));
  for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) CHECK(normal_sf(x) <= normal_sf_chernoff(x));
  // Mills ratio: phi(x)/x overestimates and the ratio tends to 1
  for (double x : {2.0, 5.0, 20.0}) CHECK(normal_sf(x) <= normal_sf_mills(x));
  CHECK(normal_sf(20.0) / normal_sf_mills(20.0) == doctest::Approx(1.0).epsilon(3e-3));
  CHECK_THROWS_AS(normal_sf_mills(0.0), DomainError);
}

TEST_CASE("least squares slope and grids") {
  std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  CHECK(ls_slope(x, y) == doctest::Approx(2.0));
  auto g = log_grid(2, 2000, 20);
  CHECK(g.front() == 2);
  CHECK(g.back() == 2000);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
}

TEST_CASE("quadrature on finite and infinite ranges") {
  auto q = integrate([](double x) { return std::exp(-x); }, 0.0, kInf);
  CHECK(q.value == doctest::Approx(1.0).epsilon(1e-12));
  auto q2 = integrate([](double x) { return x * x; }, 0.0, 3.0);
  CHECK(q2.value == doctest::Approx(9.0).epsilon(1e-13));
}

TEST_CASE("LogNumber arithmetic") {
  auto a = LogNumber::from_value(3.0), b = LogNumber::from_value(4.0);
  CHECK((a * b).value() == doctest::Approx(12.0));
  CHECK((b / a).value() == doctest::Approx(4.0 / 3.0));
  CHECK(a.pow(2.0).value() == doctest::Approx(9.0));
  CHECK(a < b);
  CHECK(b.minus(a).value() == doctest::Approx(1.0));
  CHECK((LogNumber::zero() + a) == a);

  // log-sum-exp against a long double oracle, relative error < 1e-12
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int i = 0; i < 2000; ++i) {
    double x = u(rng), y = u(rng);
    long double ref = std::log(std::exp((long double)x) + std::exp((long double)y));
    double got = (LogNumber::from_log(x) + LogNumber::from_log(y)).log();
    CHECK(std::abs((long double)got - ref) <= 1e-12 * std::max(1.0L, std::abs(ref)));
  }
  // huge magnitudes stay representable
  auto big = LogNumber::from_log(1e6);
  CHECK((big * big).log() == doctest::Approx(2e6));
  CHECK_THROWS_AS(LogNumber::from_value(-1.0), DomainError);
}

TEST_CASE("regular form elasticity bounds contain numeric elasticities") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pw(-3, 3), ex(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    RegularForm f(0.3, pw(rng),
                  {{LogFactor::Kind::Log, std::numbers::e, ex(rng)},
                   {LogFactor::Kind::LogLog, 2 * std::numbers::e, ex(rng)}});
    double H = 50.0 * (1 + trial % 7);
    auto e = f.elasticity_bounds(H);
    for (double x : {H, 3 * H, 100 * H, 1e7 * H}) {
      double h = 1e-6 * x;
      double el = (f.log_value(x + h) - f.log_value(x - h)) / (std::log(x + h) - std::log(x - h));
      CHECK(el >= e.lo - 1e-6);
      CHECK(el <= e.hi + 1e-6);
    }
  }
}

TEST_CASE("regular form algebra") {
  RegularForm a(0.0, 0.5, {{LogFactor::Kind::Log, 0.0, 0.5}});
  auto sq = a.pow(2.0);
  CHECK(sq.power() == 1.0);
  CHECK(sq.log_value(100.0) == doctest::Approx(std::log(100.0 * std::log(100.0))));
  auto prod = sq * RegularForm(0.0, -1.0);
  CHECK(prod.log_value(50.0) == doctest::Approx(std::log(std::log(50.0))));
  CHECK((a * a.pow(-1.0)).pure_power());
}
