#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hre/conditions.hpp"
#include "hre/distributions.hpp"
#include "hre/sequences.hpp"

namespace hre {

struct SimConfig {
  std::uint64_t seed = 20240601;
  long replicates = 10000;
  std::vector<long> n_grid;
  std::vector<double> eps_grid = kDefaultEpsGrid;
  bool truncate = false;  // simulate S_n(eps) with summands X 1{|X| < eps a_n}
  int workers = 1;
  bool operator==(const SimConfig&) const = default;

  // replicates >= 1000, positive eps, grid ascending and >= 1, workers >= 1
  void validate() const;
};

// Replicate sums indexed by replicate number. Replicate r always reads the
// stream (derive_key(seed, n, kSampleTag), r), so the vector does not depend
// on the worker count.
std::vector<double> simulate_sums(const DistModel& d, long n, const SimConfig& cfg,
                                  double trunc = std::numeric_limits<double>::infinity());

struct EmpiricalTail {
  long n = 0;
  double threshold = 0.0;
  double p_hat = 0.0;
  double std_err = 0.0;
  long replicates = 0;
};
// Fraction of |S - center| >= threshold.
EmpiricalTail tail_from_sums(const std::vector<double>& sums, long n, double threshold,
                             double center = 0.0);
EmpiricalTail estimate_tail(const DistModel& d, long n, double threshold, const SimConfig& cfg);

struct MedianEstimate {
  long n = 0;
  double mu_hat = 0.0;  // lower sample median
  double ci_lo = 0.0, ci_hi = 0.0;  // 99% order-statistic interval
  long replicates = 0;
  bool contains_zero = false;
};
MedianEstimate median_from_sums(std::vector<double> sums, long n);
MedianEstimate estimate_median(const DistModel& d, long n, const SimConfig& cfg);

// Flags grid indices whose median CI lies outside [-eps a_n, eps a_n].
ConditionReport estimate_condition_i(const DistModel& d, const WeightSequence& tau,
                                     const NormingSequence& a, const std::vector<double>& eps,
                                     const SimConfig& cfg);

struct SeriesRow {
  long n = 0;
  double epsilon = 0.0;
  double p_hat = 0.0;
  double std_err = 0.0;
  double weighted_term = 0.0;  // tau_n p_hat
  double block_weight = 0.0;   // sum of tau_k over [n, next grid point)
  double partial_sum = 0.0;
  double partial_se = 0.0;
};
struct WeightedSeries {
  double epsilon = 0.0;
  std::vector<SeriesRow> rows;
  bool interpolated = false;
  std::string note;
};
// Between grid points the tail probability is held at its left-endpoint
// value, which over-counts when it is nonincreasing in n.
WeightedSeries estimate_weighted_series(const DistModel& d, const WeightSequence& tau,
                                        const NormingSequence& a, double eps,
                                        const SimConfig& cfg);

// Calibrated on the exact Rademacher / uniform {1,2,3} battery; see
// calibrate_nagaev_constant.
inline constexpr double kNagaevC = 1.0932162954838758;

struct NagaevResult {
  long n = 0;
  double threshold = 0.0;  // gamma eps a_n
  double p_emp = 0.0;      // P(|S_n(eps)| >= threshold), simulated or exact
  double gaussian = 0.0;   // 2(1 - Phi(threshold / (n T)^{1/2}))
  double gap = 0.0;
  double bound = 0.0;      // c min(1, n E|X^{(n)}|^3 / threshold^3)
  double std_err = 0.0;
  bool pass = false;
  bool exact = false;
};
NagaevResult nagaev_gap_check(const DistModel& d, const NormingSequence& a, long n, double eps,
                              double gamma, const SimConfig& cfg, double c = kNagaevC);
NagaevResult nagaev_gap_exact(const DistModel& d, const NormingSequence& a, long n, double eps,
                              double gamma, double c = kNagaevC);
// 1.2 x the largest gap / min(1, n E|X|^3 / x^3) over the battery.
double calibrate_nagaev_constant();

struct NagaevSweep {
  std::vector<NagaevResult> rows;
  double slope = 0.0;  // log gap against log n
  bool all_pass = false;
};
NagaevSweep nagaev_sweep_exact(const DistModel& d, const NormingSequence& a,
                               const std::vector<long>& ns, double eps, double gamma,
                               double c = kNagaevC);

struct HJPoint {
  double lambda = 0.0;
  double lhs = 0.0;     // P(|S_n| >= lambda)
  double single = 0.0;  // n P(|X| >= lambda / 2r)
  double power = 0.0;   // P(|S_n| >= lambda / 2r)^r
  double lhs_se = 0.0;
};
struct HJFit {
  long n = 0;
  int r = 2;
  double C = 0.0, D = 0.0;
  std::vector<HJPoint> points;
  std::vector<std::pair<double, double>> frontier;  // (C, smallest feasible D)
  bool exact = false;
};
// Lexicographic fit: smallest C, then smallest D, with lhs <= C single + D power
// at every lambda.
HJFit hj_fit(const DistModel& d, long n, int r, const std::vector<double>& lambdas,
             const SimConfig& cfg);
HJFit hj_fit_exact(const DistModel& d, long n, int r, const std::vector<double>& lambdas);

struct HJTransfer {
  long n = 0;
  double worst_ratio = 0.0;  // max lhs / (C single + D power)
  double slack = 1.5;
  bool pass = false;
  std::vector<HJPoint> points;
};
// Passes if lhs <= slack (C single + D power) + 4 SE at every lambda.
HJTransfer hj_transfer_check(const HJFit& fit, const DistModel& d, long n,
                             const std::vector<double>& lambdas, const SimConfig& cfg,
                             double slack = 1.5);

struct LimitRow {
  long n = 0;
  double value = 0.0;
};
struct LemmaSpReport {
  double delta = 1.0;
  MomentResult log_moment;
  SeriesVerdict show1;                // sum P(|X| > a_n)
  std::vector<LimitRow> show2, show3;  // n E[Y_n^2]/a_n^2 and n |E Y_n| / a_n
  Outcome show2_verdict = Outcome::Inconclusive, show3_verdict = Outcome::Inconclusive;
  std::vector<EmpiricalTail> empirical;  // P(|S_n - E S_n| >= delta a_n)
  std::vector<double> normal_oracle;     // 2(1 - Phi(delta a_n / (n Var X)^{1/2}))
  double empirical_slope = 0.0;
  std::string note;
};
LemmaSpReport lemma_sp_check(const DistModel& d, const std::vector<long>& n_grid, double delta,
                             const SimConfig& cfg, long analytic_max = 1000000);

}  // namespace hre
