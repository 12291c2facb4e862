#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hre/distributions.hpp"
#include "hre/sequences.hpp"
#include "hre/series.hpp"

namespace hre {

enum class ConditionId { I, II, III, SpA, SpB, SpC, SpWeakB, ShowS1, ShowS2, ShowS3 };
const char* to_string(ConditionId id);

inline const std::vector<double> kDefaultEpsGrid{0.25, 0.5, 1.0, 2.0};

Outcome outcome_of(Verdict v);

struct ConditionEntry {
  double epsilon = 0.0;
  Outcome outcome = Outcome::Inconclusive;
  std::optional<SeriesVerdict> series;
  std::optional<double> value;
  std::string detail;
};

struct ConditionReport {
  ConditionId id = ConditionId::II;
  std::vector<double> eps_grid;
  std::vector<ConditionEntry> entries;
  // Holds if every entry holds, Fails if any fails, else Inconclusive.
  Outcome overall() const;
};

// log of the n-th summand (-inf for a zero term)
double condition_ii_log_term(const DistModel& x, const WeightSequence& tau,
                             const NormingSequence& a, double eps, long n);
double condition_iii_log_term(const DistModel& x, const WeightSequence& tau,
                              const NormingSequence& a, double eps, long n);
// n^{-1-eps^2/T_{eps,n}} with a_n = (n log n)^{1/2}
double cor_sp_log_term(const DistModel& x, double eps, long n);

// sum n tau_n P(|X| >= eps a_n)
SeriesVerdict eval_condition_ii(const DistModel& x, const WeightSequence& tau,
                                const NormingSequence& a, double eps, long horizon);
// sum tau_n exp(-eps^2 a_n^2 / (n T_{eps,n})) with exp(-t/0) = 0
SeriesVerdict eval_condition_iii(const DistModel& x, const WeightSequence& tau,
                                 const NormingSequence& a, double eps, long horizon);
// sum tau_n 2(1 - Phi(gamma eps a_n / (n T_{eps,n})^{1/2})), Phi(t/0) = 1
SeriesVerdict eval_phi_form(const DistModel& x, const WeightSequence& tau,
                            const NormingSequence& a, double eps, double gamma, long horizon);

ConditionReport report_condition_ii(const DistModel& x, const WeightSequence& tau,
                                    const NormingSequence& a, const std::vector<double>& eps,
                                    long horizon);
ConditionReport report_condition_iii(const DistModel& x, const WeightSequence& tau,
                                     const NormingSequence& a, const std::vector<double>& eps,
                                     long horizon);

struct CorSpReport {
  ConditionReport a, b, c;
  bool term_identity = false;
  double max_term_rel_diff = 0.0;
};
CorSpReport eval_cor_sp(const DistModel& x, const std::vector<double>& eps, long horizon);

struct SpWeakReport {
  SeriesVerdict series;
  double moment = 0.0;     // E[X^2 (log+ log+ |X|)^{1+delta} / log+ |X|]
  double log_N = 0.0;      // log of the index past which terms <= 1/(n log^2 n)
  double middle_bound = 0.0;
};
SpWeakReport eval_sp_weak_bound(const DistModel& x, double delta, long horizon);

struct ElementaryCheck {
  Outcome outcome = Outcome::Inconclusive;  // Inconclusive: hypothesis not verified
  double c = 0.0;
  double max_ratio = 0.0;  // max over checkpoints of LHS(N) / RHS(N-1)
  std::optional<long> violated_at;
  std::string detail;
};
ElementaryCheck lemma_elementary_check(const Sequence& rho, const WeightSequence& tau,
                                       const NormingSequence& b, const DistModel& x, double t,
                                       long horizon);

struct KlesovCheck {
  bool finite_certified = false;
  double bound = 0.0;
  SeriesVerdict series;
  std::string reason;
};
KlesovCheck lemma_klesov_check(const WeightSequence& tau, const NormingSequence& b,
                               const DistModel& x, double nu, double theta, long horizon);

double comp_constant(int r);

struct CompCheck {
  bool implication_holds = true;
  std::optional<long> witness;
  double c_r = 0.0;
  double sum_alpha_r = 0.0, sum_diff_r = 0.0, sum_beta = 0.0;
  Verdict diff_series = Verdict::Inconclusive, beta_series = Verdict::Inconclusive;
  bool hypotheses_certified = false;
};
CompCheck lemma_comp_check(const std::function<double(long)>& alpha,
                           const std::function<double(long)>& beta, const WeightSequence& tau,
                           int r, long horizon);

}  // namespace hre
