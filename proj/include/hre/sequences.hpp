#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hre/regular_form.hpp"

namespace hre {

// c * log(logShift + n)^logPower * loglog(2e + n)^logLogPower
struct SlowlyVaryingSpec {
  double logPower = 0.0;
  double logLogPower = 0.0;
  double constant = 1.0;
  double logShift = 2.718281828459045;

  RegularForm to_form() const;
};

enum class Outcome { Holds, Fails, Inconclusive };
const char* to_string(Outcome o);

// A positive sequence indexed from start(). Either a regular form or a custom
// log-term oracle.
class Sequence {
 public:
  using LogOracle = std::function<double(long)>;

  static Sequence power_law(double exponent, SlowlyVaryingSpec sv = {}, long start = 1);
  static Sequence from_form(RegularForm form, long start = 1);
  static Sequence custom(LogOracle log_term, long start, std::string label);

  double log_eval(long n) const;
  double eval(long n) const;
  long start() const { return start_; }
  const RegularForm* form() const { return form_ ? &*form_ : nullptr; }
  std::string describe() const;

 protected:
  long start_ = 1;
  std::optional<RegularForm> form_;
  LogOracle oracle_;
  std::string label_;
};

class WeightSequence : public Sequence {
 public:
  WeightSequence() = default;
  explicit WeightSequence(Sequence s);
  static WeightSequence power_law(double beta, SlowlyVaryingSpec sv = {}, long start = 1) {
    return WeightSequence(Sequence::power_law(beta, sv, start));
  }
  static WeightSequence custom(LogOracle log_term, long start, std::string label) {
    return WeightSequence(Sequence::custom(std::move(log_term), start, std::move(label)));
  }
};

class NormingSequence : public Sequence {
 public:
  NormingSequence() = default;
  // Rejects forms that do not tend to infinity.
  explicit NormingSequence(Sequence s);
  static NormingSequence power_law(double alpha, SlowlyVaryingSpec sv = {}, long start = 1) {
    return NormingSequence(Sequence::power_law(alpha, sv, start));
  }
  static NormingSequence custom(LogOracle log_term, long start, std::string label) {
    return NormingSequence(Sequence::custom(std::move(log_term), start, std::move(label)));
  }
  // First n in [from, to) with a_{n+1} < a_n, if any.
  std::optional<long> first_decrease(long from, long to) const;
  // True if a_probe > bound at some probe n <= max_probe.
  bool exceeds(double bound, long max_probe) const;
};

// tau_n = 1/n, a_n = (n log n)^{1/2}, both from n = 2.
WeightSequence sp_weights();
NormingSequence sp_norming();

double partial_weight_sum(const WeightSequence& tau, long k);

struct ConditionAResult {
  bool established = false;
  std::optional<double> witness_c;
  std::string branch;
  std::string reason;
};
ConditionAResult check_condition_a_sufficient(const WeightSequence& tau, int max_level);

struct PowerFamily {
  std::vector<double> scales{0.5, 1.0, 2.0};
  std::vector<double> powers{0.5, 1.0, 1.5, 2.0, 3.0};
};
struct FalsifierWitness {
  double scale;
  double power;
  std::string detail;
};
std::optional<FalsifierWitness> falsify_condition_a(const WeightSequence& tau,
                                                    const PowerFamily& family, long horizon);

enum class GrowthVariant { Cubic, Quadratic };
const char* to_string(GrowthVariant v);
inline int growth_exponent(GrowthVariant v) { return v == GrowthVariant::Cubic ? 3 : 2; }

struct GrowthCheckReport {
  GrowthVariant variant = GrowthVariant::Cubic;
  double theta = 1.0;
  std::optional<double> witness_c;
  long n_start = 0;
  long horizon = 0;
  double max_ratio = 0.0;
  double trend_slope = 0.0;
  Outcome verdict = Outcome::Inconclusive;
  std::string reason;
};

GrowthCheckReport verify_growth_condition(const WeightSequence& tau, const NormingSequence& a,
                                          double theta, GrowthVariant variant, long N,
                                          long horizon);

// Same ratio with a general exponent m on a_k (m*theta overall); used by the
// Klesov-type lemma with m = nu.
GrowthCheckReport growth_scan(const WeightSequence& tau, const NormingSequence& a, double theta,
                              double m, long N, long horizon);

GrowthCheckReport verify_liminf_condition(const WeightSequence& tau, const NormingSequence& a,
                                          GrowthVariant variant, long N, long horizon);
GrowthCheckReport liminf_scan(const WeightSequence& tau, const NormingSequence& a, double m,
                              long N, long horizon);

struct ThetaRecommendation {
  std::optional<double> theta;
  std::vector<GrowthCheckReport> trials;
  std::string note;
};
inline const std::vector<double> kThetaGrid{1, 2, 4, 8, 16};

ThetaRecommendation recommend_theta(const WeightSequence& tau, const NormingSequence& a,
                                    GrowthVariant variant, long N, long horizon);

}  // namespace hre
