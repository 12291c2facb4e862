#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <algorithm>
#include <random>

#include "hre/distributions.hpp"
#include "hre/numeric.hpp"

using namespace hre;

namespace {
std::vector<DistModel> continuous_battery() {
  return {DistModel::gaussian(1.0), DistModel::gaussian(2.5), DistModel::symmetric_pareto(3.0, 1.0),
          DistModel::symmetric_pareto(4.0, 0.5), DistModel::gaussian(1.0).shifted(0.7),
          DistModel::symmetric_pareto(3.5, 1.0).shifted(-0.4)};
}
}  // namespace

TEST_CASE("tail examples") {
  auto r = DistModel::rademacher();
  CHECK(tail(r, 0.5) == 1.0);
  CHECK(tail(r, 1.5) == 0.0);
  CHECK(tail(r, 1.0) == 1.0);
  CHECK(tail(r, 1.0, Boundary::Open) == 0.0);
  CHECK(tail(DistModel::symmetric_pareto(2, 1), 10) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(tail(DistModel::gaussian(1), 1.0) == doctest::Approx(2 * normal_sf(1.0)));
  CHECK_THROWS_AS(tail(r, -1.0), InputError);
}

TEST_CASE("tail is a non-increasing probability") {
  std::vector<DistModel> all = continuous_battery();
  all.push_back(DistModel::rademacher());
  all.push_back(DistModel::atomic_symmetric({{1, 0.2}, {3, 0.1}}));
  all.push_back(DistModel::rademacher().shifted(1.0));
  all.push_back(DistModel::counterexample(std::make_shared<CounterexampleDist>(build_counterexample(3))));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 30);
  for (const auto& d : all) {
    CHECK(tail(d, 0) <= 1.0);
    for (int i = 0; i < 200; ++i) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      double ta = tail(d, a), tb = tail(d, b);
      CHECK(ta >= tb);
      CHECK(tb >= 0);
      CHECK(ta <= 1);
    }
  }
}

TEST_CASE("atomic masses") {
  auto d = DistModel::atomic_symmetric({{1, 0.2}, {3, 0.1}});
  double tot = d.zero_mass();
  for (auto a : d.atoms()) tot += 2 * a.prob;
  CHECK(std::abs(tot - 1.0) < 1e-12);
  CHECK_THROWS_AS(DistModel::atomic_symmetric({{1, 0.4}, {2, 0.2}}), InputError);
  CHECK_THROWS_AS(DistModel::atomic_symmetric({{-1, 0.2}}), InputError);
}

TEST_CASE("truncated moment examples") {
  auto r = DistModel::rademacher();
  CHECK(truncated_moment(r, {2, 2}) == 1.0);
  CHECK(truncated_moment(r, {2, 1}) == 0.0);
  CHECK(truncated_moment(r, {2, 1, Boundary::Closed}) == 1.0);
  auto g = DistModel::gaussian(1);
  CHECK(std::abs(truncated_moment(g, {2, 10}) - 1.0) < 1e-8);
  // quadrature oracle for the closed forms
  for (double b : {0.3, 1.0, 2.5, 7.0})
    for (double nu : {2.0, 3.0}) {
      double q = integrate([&](double x) { return 2 * std::pow(x, nu) * std::exp(-x * x / 2) / std::sqrt(2 * M_PI); }, 0, b).value;
      CHECK(truncated_moment(g, {nu, b}) == doctest::Approx(q).epsilon(1e-10));
    }
  auto p = DistModel::symmetric_pareto(3, 1);
  for (double b : {0.5, 2.0, 50.0})
    for (double nu : {2.0, 3.0}) {
      double q = b <= 1 ? 0 : integrate([&](double x) { return std::pow(x, nu) * 3 * std::pow(x, -4.0); }, 1, b).value;
      CHECK(truncated_moment(p, {nu, b}) == doctest::Approx(q).epsilon(1e-10));
    }
  CHECK_THROWS_AS(truncated_moment(r, {2, 0}), InputError);
}

TEST_CASE("layer-cake consistency for continuous kinds") {
  for (const auto& d : continuous_battery()) {
    for (double b : {0.8, 2.0, 5.0}) {
      double tb = tail(d, b);
      // split at the kinks of the tail function
      std::vector<double> cuts{0.0, b};
      if (d.kind() == DistKind::SymmetricPareto)
        for (double k : {d.scale() + d.shift(), d.scale() - d.shift()})
          if (k > 0 && k < b) cuts.push_back(std::abs(k));
      std::sort(cuts.begin(), cuts.end());
      double lc = 0;
      for (size_t i = 0; i + 1 < cuts.size(); ++i)
        lc += integrate([&](double l) { return 2 * l * (tail(d, l) - tb); }, cuts[i], cuts[i + 1], 1e-12).value;
      CHECK(std::abs(truncated_moment(d, {2, b}) - lc) < 1e-8);
    }
  }
}

TEST_CASE("truncated moments increase to the full moment") {
  for (const auto& d : continuous_battery()) {
    double prev = 0;
    for (double b : {0.5, 1.0, 4.0, 16.0, 64.0}) {
      double v = truncated_moment(d, {2, b});
      CHECK(v >= prev - 1e-14);
      prev = v;
    }
  }
  auto g = DistModel::gaussian(1.5);
  CHECK(truncated_moment(g, {3, 1e3}) == doctest::Approx(g.abs_moment(3)).epsilon(1e-10));
  auto p = DistModel::symmetric_pareto(5, 1);
  CHECK(truncated_moment(p, {3, 1e7}) == doctest::Approx(p.abs_moment(3)).epsilon(1e-8));
  CHECK(p.abs_moment(3) == doctest::Approx(5.0 / 2.0));
}

TEST_CASE("log-plus moment") {
  auto r = log_plus_moment(DistModel::rademacher());
  CHECK(r.finite);
  CHECK(r.value == doctest::Approx(1 / std::log(3.0)));
  auto p = log_plus_moment(DistModel::symmetric_pareto(2, 1));
  CHECK_FALSE(p.finite);
  CHECK(p.truncated[0] < p.truncated[1]);
  CHECK(p.truncated[1] < p.truncated[2]);
  // truncated growth ~ 2 log log T: increments between decades shrink
  CHECK(p.truncated[2] - p.truncated[1] < p.truncated[1] - p.truncated[0]);
  auto g = log_plus_moment(DistModel::gaussian(1));
  CHECK(g.finite);
  CHECK(g.value < 1.0);
  CHECK(g.value <= 1 / std::log(2.0));
  double q = integrate([](double x) { return 2 * x * x / std::log(2 + x) * std::exp(-x * x / 2) / std::sqrt(2 * M_PI); }, 0, kInf).value;
  CHECK(g.value == doctest::Approx(q).epsilon(1e-9));
  auto ce = log_plus_moment(DistModel::counterexample(std::make_shared<CounterexampleDist>(build_counterexample(4))));
  CHECK(ce.finite);
  CHECK(ce.value < 2.0);
}

TEST_CASE("loglog moment") {
  auto r = loglog_moment(DistModel::rademacher(), 1.0);
  double l3 = std::log(3.0);
  CHECK(r.value == doctest::Approx(std::pow(std::log(2 + l3), 2) / l3));
  CHECK(loglog_moment(DistModel::symmetric_pareto(3, 1), 0.5).finite);
  CHECK_FALSE(loglog_moment(DistModel::symmetric_pareto(2, 1), 0.5).finite);
  CHECK_THROWS_AS(loglog_moment(DistModel::rademacher(), 0.0), InputError);
}

TEST_CASE("weak mean domination") {
  auto x = DistModel::rademacher();
  std::vector<TailOracle> same{[&](double l) { return tail(x, l); }, [&](double l) { return tail(x, l); }};
  CHECK(weak_mean_domination_check(same, x, 1.0, {0.0, 0.5, 1.0, 2.0}).dominated);
  auto half = DistModel::atomic_symmetric({{0.5, 0.5}});
  std::vector<TailOracle> rad{[&](double l) { return tail(x, l); }};
  auto v = weak_mean_domination_check(rad, half, 1.0, {1.0});
  CHECK_FALSE(v.dominated);
  CHECK(*v.violation == 1.0);
  CHECK(v.lhs == 1.0);
  CHECK(v.rhs == 0.0);
  auto g = DistModel::gaussian(1);
  std::vector<TailOracle> any{[&](double l) { return tail(DistModel::gaussian(3), l); }};
  CHECK(weak_mean_domination_check(any, g, 1.0 / tail(g, 2.0), {0.0, 1.0, 2.0}).dominated);
  CHECK_THROWS_AS(weak_mean_domination_check({}, x, 1.0, {1.0}), InputError);
}

TEST_CASE("sample_sum support and reproducibility") {
  auto r = DistModel::rademacher();
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    double v = sample_sum(r, 1, 9, rep);
    CHECK((v == 1.0 || v == -1.0));
  }
  auto three = DistModel::atomic_symmetric({{3, 0.5}});
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    double v = sample_sum(three, 2, 9, rep);
    CHECK((v == -6.0 || v == 0.0 || v == 6.0));
  }
  CHECK_THROWS_AS(sample_sum(r, 0, 1), DomainError);
  CHECK(sample_sum(DistModel::gaussian(1), 7, 42, 3) == sample_sum(DistModel::gaussian(1), 7, 42, 3));
  auto ce = DistModel::counterexample(std::make_shared<CounterexampleDist>(build_counterexample(2)));
  CHECK_THROWS_AS(sample_sum(ce, 1, 1), DomainError);
}

TEST_CASE("empirical single-draw tails match analytic tails") {
  const long R = 1000000;
  for (const auto& d : {DistModel::gaussian(1), DistModel::symmetric_pareto(2.5, 1), DistModel::rademacher(),
                        DistModel::atomic_symmetric({{1, 0.2}, {2.5, 0.15}})}) {
    std::vector<double> grid{0.5, 1.0, 1.5, 2.2, 3.0};
    std::vector<long> hits(grid.size(), 0);
    Sampler smp(d);
    CounterStream s(derive_key(123, 1, 0), 0);
    for (long i = 0; i < R; ++i) {
      double x = std::abs(smp.draw(s));
      for (size_t j = 0; j < grid.size(); ++j) hits[j] += x >= grid[j];
    }
    for (size_t j = 0; j < grid.size(); ++j) {
      double p = tail(d, grid[j]);
      double se = std::sqrt(std::max(p * (1 - p), 1e-12) / R);
      CHECK(std::abs(double(hits[j]) / R - p) <= 4 * se + 1e-12);
    }
  }
}

TEST_CASE("symmetric sums have mean zero") {
  for (const auto& d : {DistModel::gaussian(1), DistModel::rademacher(), DistModel::symmetric_pareto(3, 1)}) {
    const long R = 20000, n = 25;
    CompensatedSum s, s2;
    for (long r = 0; r < R; ++r) {
      double v = sample_sum(d, n, 77, r);
      s.add(v);
      s2.add(v * v);
    }
    double m = s.value() / R, var = s2.value() / R - m * m;
    CHECK(std::abs(m) <= 4 * std::sqrt(var / R));
  }
}
