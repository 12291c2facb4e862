#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hre/counterexample.hpp"
#include "hre/rng.hpp"

namespace hre {

enum class DistKind { Rademacher, Gaussian, SymmetricPareto, AtomicSymmetric, Counterexample };
const char* to_string(DistKind k);

// Mass `prob` at each of +value and -value.
struct Atom {
  double value;
  double prob;
};

// Closed: P(|X| >= l) for tails, |X| <= b for truncation. Open: strict versions.
enum class Boundary { Closed, Open };

class DistModel {
 public:
  static DistModel rademacher();
  static DistModel gaussian(double sigma);
  static DistModel symmetric_pareto(double q, double scale);
  static DistModel atomic_symmetric(std::vector<Atom> atoms);
  static DistModel counterexample(std::shared_ptr<const CounterexampleDist> ce);
  // X = v almost surely.
  static DistModel constant(double v);
  // Location shift X + mu; not available for the counterexample law.
  DistModel shifted(double mu) const;

  DistKind kind() const { return kind_; }
  bool symmetric() const { return shift_ == 0.0; }
  double shift() const { return shift_; }
  double sigma() const { return sigma_; }
  double q() const { return q_; }
  double scale() const { return scale_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double zero_mass() const { return p0_; }
  const CounterexampleDist* ce() const { return ce_.get(); }
  bool lattice_like() const;

  // Support points (value, prob) of X for Rademacher/AtomicSymmetric, including 0.
  std::vector<std::pair<double, double>> pmf() const;

  double mean() const;  // NaN when undefined
  double second_moment() const;
  double abs_moment(double nu) const;  // +inf when infinite
  std::optional<double> support_bound() const;
  std::string describe() const;

 private:
  DistKind kind_ = DistKind::Rademacher;
  double sigma_ = 1.0, q_ = 0.0, scale_ = 1.0, p0_ = 0.0, shift_ = 0.0;
  std::vector<Atom> atoms_;
  std::shared_ptr<const CounterexampleDist> ce_;
};

double tail(const DistModel& d, double lambda, Boundary b = Boundary::Closed);

struct TruncatedMomentQuery {
  double nu;
  double b;
  Boundary boundary = Boundary::Open;
};
// E[|X|^nu 1{|X| < b}] (or <= b for Boundary::Closed).
double truncated_moment(const DistModel& d, const TruncatedMomentQuery& q);
// E[X 1{|X| < b}] (or <= b).
double truncated_signed_mean(const DistModel& d, double b, Boundary boundary = Boundary::Open);

struct MomentResult {
  bool finite = false;
  double value = 0.0;  // +inf when divergent
  std::array<double, 3> truncated{};  // at T = 1e3, 1e6, 1e9
  std::string certificate;
};
// E[X^2 / log(2+|X|)]
MomentResult log_plus_moment(const DistModel& d);
// E[X^2 (log(2+log(2+|X|)))^{1+delta} / log(2+|X|)]
MomentResult loglog_moment(const DistModel& d, double delta);

using TailOracle = std::function<double(double)>;
struct DominationResult {
  bool dominated = true;
  std::optional<double> violation;
  double lhs = 0.0;
  double rhs = 0.0;
};
DominationResult weak_mean_domination_check(const std::vector<TailOracle>& rows,
                                            const DistModel& x, double K,
                                            const std::vector<double>& lambdas);

// Draws sums of n copies (optionally with each X replaced by X 1{|X| < trunc}).
class Sampler {
 public:
  explicit Sampler(const DistModel& d);
  double draw(CounterStream& s) const;
  double sum(CounterStream& s, long n, double trunc = std::numeric_limits<double>::infinity()) const;

 private:
  const DistModel* d_;
  std::vector<double> values_, cdf_;
};

// Key tag for replicate sums; the key is derive_key(seed, n, kSampleTag).
inline constexpr std::uint64_t kSampleTag = 0x53554d53ull;  // "SUMS"

// One realization of S_n; stream position depends only on (seed, n, replicate).
double sample_sum(const DistModel& d, long n, std::uint64_t seed, std::uint64_t replicate = 0);

}  // namespace hre
