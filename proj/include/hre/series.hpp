#pragma once

#include <functional>
#include <optional>
#include <string>

#include "hre/regular_form.hpp"

namespace hre {

enum class Verdict { Converges, Diverges, Inconclusive };
const char* to_string(Verdict v);

struct SeriesVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double partial_sum = 0.0;
  std::optional<double> tail_bound;
  // Diverges: description of the certified lower bound, plus its constant
  // and (for power-type terms) the exponent of the term rate.
  std::optional<std::string> lower_bound_rate;
  double lower_bound_constant = 0.0;
  std::optional<double> rate_exponent;
  long horizon = 0;
  std::string method;
};

// Terms are nonnegative; the oracle returns log t_n (-inf for zero terms).
using LogTermOracle = std::function<double(long)>;
using TermOracle = std::function<double(long)>;

// Log-log slope diagnostics on the final decade [horizon/10, horizon].
SeriesVerdict classify_log_series(const LogTermOracle& log_term, long start, long horizon);
// Same on linear terms; negative terms are an input error.
SeriesVerdict classify_series(const TermOracle& term, long start, long horizon);

// Head summed exactly; tail from elasticity bounds of the form at the horizon.
SeriesVerdict certify_regular_series(const RegularForm& term, long start, long horizon);

// Upper bound on sum_{n > H} f(n) for a form that is decreasing with
// elasticity < -1 beyond H, else nullopt.
std::optional<double> regular_tail_bound(const RegularForm& f, long H);

// Sum of exp(log_term(n)) for n in [start, end], compensated.
double head_sum(const LogTermOracle& log_term, long start, long end);

}  // namespace hre
