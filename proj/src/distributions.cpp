#include "hre/distributions.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hre/numeric.hpp"

namespace hre {

namespace {

constexpr std::array<double, 3> kCertLevels{1e3, 1e6, 1e9};

bool keep(double absx, double b, Boundary bd) { return bd == Boundary::Open ? absx < b : absx <= b; }
bool reaches(double absx, double l, Boundary bd) { return bd == Boundary::Closed ? absx >= l : absx > l; }

double log_log2plus_from_log(double lx) {
  // log(log(2 + x)) given log x, stable for huge x
  double l2x = lx > 40 ? lx + std::log1p(2.0 * std::exp(-lx)) : std::log(2.0 + std::exp(lx));
  return std::log(l2x);
}

// P(Y >= t) for the unshifted symmetric Pareto.
double pareto_upper(double q, double s, double t) {
  if (t >= s) return 0.5 * std::pow(s / t, q);
  if (t > -s) return 0.5;
  return 1.0 - 0.5 * std::pow(s / -t, q);
}

double base_density(const DistModel& d, double y) {
  if (d.kind() == DistKind::Gaussian) {
    double z = y / d.sigma();
    return std::exp(-0.5 * z * z) / (d.sigma() * std::sqrt(2.0 * std::numbers::pi));
  }
  double a = std::abs(y);
  if (a < d.scale()) return 0.0;
  return 0.5 * d.q() * std::pow(d.scale(), d.q()) * std::pow(a, -d.q() - 1.0);
}

// E[g(|X|) 1{|X| < T}] for continuous kinds by quadrature on the density.
// lg(log x) = log g(x) keeps the heavy-tailed integrand finite at huge x.
double expect_continuous(const DistModel& d, const std::function<double(double)>& g,
                         const std::function<double(double)>& lg, double T) {
  const double mu = d.shift();
  if (mu == 0.0) {
    if (d.kind() == DistKind::SymmetricPareto) {
      double s = d.scale(), q = d.q();
      if (T <= s) return 0.0;
      // y = e^u spreads the mass evenly across decades
      const double lq = std::log(q), ls = std::log(s);
      auto f = [&](double u) { return std::exp(lg(u) + lq + q * (ls - u)); };
      return integrate(f, std::log(s), std::isinf(T) ? kInf : std::log(T)).value;
    }
    auto f = [&](double y) { return 2.0 * g(y) * base_density(d, y); };
    double sig = d.sigma();
    double cut = std::min(T, 40.0 * sig);
    double v = integrate(f, 0.0, cut).value;
    return v;  // beyond 40 sigma the density is below 1e-340
  }
  std::vector<double> pts{-T, T, 0.0};
  if (d.kind() == DistKind::SymmetricPareto) {
    pts.push_back(mu - d.scale());
    pts.push_back(mu + d.scale());
  } else {
    pts.push_back(mu - 40 * d.sigma());
    pts.push_back(mu + 40 * d.sigma());
  }
  std::vector<double> cuts;
  for (double p : pts)
    if (p >= -T && p <= T) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto f = [&](double x) {
    double dens = base_density(d, x - mu);
    if (dens == 0.0) return 0.0;
    double ax = std::abs(x);
    return ax == 0.0 ? g(0.0) * dens : std::exp(lg(std::log(ax)) + std::log(dens));
  };
  CompensatedSum acc;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (d.kind() == DistKind::Gaussian && (b <= mu - 40 * d.sigma() || a >= mu + 40 * d.sigma())) continue;
    acc.add(integrate(f, a, b).value);
  }
  return acc.value();
}

MomentResult special_moment(const DistModel& d, const std::function<double(double)>& g,
                            const std::function<double(double)>& log_g_of_log) {
  MomentResult r;
  switch (d.kind()) {
    case DistKind::Rademacher:
    case DistKind::AtomicSymmetric: {
      CompensatedSum s;
      for (auto [v, p] : d.pmf())
        if (v != 0) s.add(p * g(std::abs(v)));
      r.finite = true;
      r.value = s.value();
      for (size_t i = 0; i < 3; ++i) {
        CompensatedSum t;
        for (auto [v, p] : d.pmf())
          if (v != 0 && std::abs(v) < kCertLevels[i]) t.add(p * g(std::abs(v)));
        r.truncated[i] = t.value();
      }
      r.certificate = "exact sum over atoms";
      return r;
    }
    case DistKind::Counterexample: {
      CompensatedSum s;
      for (const auto& lv : d.ce()->levels)
        s.add(std::exp(std::log(2.0) + lv.prob.log() + log_g_of_log(lv.atom.log())));
      r.finite = true;
      r.value = s.value();
      for (size_t i = 0; i < 3; ++i) {
        CompensatedSum t;
        for (const auto& lv : d.ce()->levels)
          if (lv.atom.log() < std::log(kCertLevels[i]))
            t.add(std::exp(std::log(2.0) + lv.prob.log() + log_g_of_log(lv.atom.log())));
        r.truncated[i] = t.value();
      }
      r.certificate = "exact sum over levels in log domain";
      return r;
    }
    case DistKind::Gaussian:
    case DistKind::SymmetricPareto: {
      for (size_t i = 0; i < 3; ++i) r.truncated[i] = expect_continuous(d, g, log_g_of_log, kCertLevels[i]);
      if (d.kind() == DistKind::SymmetricPareto && d.q() <= 2.0) {
        r.finite = false;
        r.value = kInf;
        std::ostringstream os;
        os << "divergent: tail exponent q = " << d.q()
           << " <= 2; truncated integral at T = 1e3, 1e6, 1e9: " << r.truncated[0] << ", "
           << r.truncated[1] << ", " << r.truncated[2];
        bool increasing = r.truncated[0] < r.truncated[1] && r.truncated[1] < r.truncated[2];
        if (!increasing) os << " (warning: truncated values not increasing)";
        r.certificate = os.str();
        return r;
      }
      r.finite = true;
      r.value = expect_continuous(d, g, log_g_of_log, kInf);
      r.certificate = d.kind() == DistKind::Gaussian ? "quadrature, Gaussian tails"
                                                     : "quadrature; finite since q > 2 dominates";
      return r;
    }
  }
  return r;
}

}  // namespace

const char* to_string(DistKind k) {
  switch (k) {
    case DistKind::Rademacher: return "Rademacher";
    case DistKind::Gaussian: return "Gaussian";
    case DistKind::SymmetricPareto: return "SymmetricPareto";
    case DistKind::AtomicSymmetric: return "AtomicSymmetric";
    default: return "Counterexample";
  }
}

DistModel DistModel::rademacher() {
  DistModel d;
  d.kind_ = DistKind::Rademacher;
  d.atoms_ = {{1.0, 0.5}};
  d.p0_ = 0.0;
  return d;
}

DistModel DistModel::gaussian(double sigma) {
  if (!(sigma > 0)) throw InputError("gaussian sigma must be > 0");
  DistModel d;
  d.kind_ = DistKind::Gaussian;
  d.sigma_ = sigma;
  return d;
}

DistModel DistModel::symmetric_pareto(double q, double scale) {
  if (!(q > 0)) throw InputError("pareto tail exponent q must be > 0");
  if (!(scale > 0)) throw InputError("pareto scale must be > 0");
  DistModel d;
  d.kind_ = DistKind::SymmetricPareto;
  d.q_ = q;
  d.scale_ = scale;
  return d;
}

DistModel DistModel::atomic_symmetric(std::vector<Atom> atoms) {
  CompensatedSum mass;
  for (const auto& a : atoms) {
    if (!(a.value > 0)) throw InputError("atom values must be > 0");
    if (!(a.prob >= 0)) throw InputError("atom probabilities must be >= 0");
    mass.add(2.0 * a.prob);
  }
  double p0 = 1.0 - mass.value();
  if (p0 < -1e-12) throw InputError("atom probabilities exceed total mass 1/2 per side");
  DistModel d;
  d.kind_ = DistKind::AtomicSymmetric;
  d.atoms_ = std::move(atoms);
  std::sort(d.atoms_.begin(), d.atoms_.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  d.p0_ = std::max(0.0, p0);
  return d;
}

DistModel DistModel::counterexample(std::shared_ptr<const CounterexampleDist> ce) {
  if (!ce) throw InputError("counterexample handle is null");
  DistModel d;
  d.kind_ = DistKind::Counterexample;
  d.ce_ = std::move(ce);
  d.p0_ = d.ce_->zero_mass;
  return d;
}

DistModel DistModel::constant(double v) {
  DistModel d = atomic_symmetric({});
  d.shift_ = v;
  return d;
}

DistModel DistModel::shifted(double mu) const {
  if (kind_ == DistKind::Counterexample) throw InputError("the counterexample law cannot be shifted");
  if (!std::isfinite(mu)) throw InputError("shift must be finite");
  DistModel d = *this;
  d.shift_ += mu;
  return d;
}

bool DistModel::lattice_like() const {
  return kind_ == DistKind::Rademacher || kind_ == DistKind::AtomicSymmetric;
}

std::vector<std::pair<double, double>> DistModel::pmf() const {
  if (!lattice_like()) throw InputError("pmf only available for atomic kinds");
  std::vector<std::pair<double, double>> out;
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) out.push_back({-it->value + shift_, it->prob});
  if (p0_ > 0) out.push_back({shift_, p0_});
  for (const auto& a : atoms_) out.push_back({a.value + shift_, a.prob});
  return out;
}

double DistModel::mean() const {
  if (kind_ == DistKind::SymmetricPareto && q_ <= 1.0) return std::numeric_limits<double>::quiet_NaN();
  return shift_;
}

double DistModel::second_moment() const { return abs_moment(2.0); }

double DistModel::abs_moment(double nu) const {
  if (!(nu >= 0)) throw InputError("moment order must be >= 0");
  switch (kind_) {
    case DistKind::Rademacher:
    case DistKind::AtomicSymmetric: {
      CompensatedSum s;
      for (auto [v, p] : pmf()) s.add(p * std::pow(std::abs(v), nu));
      return s.value();
    }
    case DistKind::Counterexample: {
      double l = kNegInf;
      for (const auto& lv : ce_->levels) l = log_add(l, std::log(2.0) + lv.prob.log() + nu * lv.atom.log());
      return std::exp(l);
    }
    case DistKind::Gaussian:
      if (shift_ == 0)
        return std::pow(sigma_, nu) * std::pow(2.0, nu / 2) * std::tgamma((nu + 1) / 2) / std::sqrt(std::numbers::pi);
      return expect_continuous(*this, [nu](double x) { return std::pow(x, nu); },
                               [nu](double lx) { return nu * lx; }, kInf);
    case DistKind::SymmetricPareto:
      if (q_ <= nu) return kInf;
      if (shift_ == 0) return q_ * std::pow(scale_, nu) / (q_ - nu);
      return expect_continuous(*this, [nu](double x) { return std::pow(x, nu); },
                               [nu](double lx) { return nu * lx; }, kInf);
  }
  return kInf;
}

std::optional<double> DistModel::support_bound() const {
  if (lattice_like()) {
    double m = std::abs(shift_);
    for (auto [v, p] : pmf())
      if (p > 0) m = std::max(m, std::abs(v));
    return m;
  }
  return std::nullopt;
}

std::string DistModel::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case DistKind::Gaussian: os << "(sigma=" << sigma_ << ")"; break;
    case DistKind::SymmetricPareto: os << "(q=" << q_ << ", s=" << scale_ << ")"; break;
    case DistKind::AtomicSymmetric:
      os << "(";
      for (size_t i = 0; i < atoms_.size(); ++i) os << (i ? ", " : "") << "+-" << atoms_[i].value << ":" << atoms_[i].prob;
      os << "; p0=" << p0_ << ")";
      break;
    case DistKind::Counterexample: os << "(M=" << ce_->M() << ")"; break;
    default: break;
  }
  if (shift_ != 0) os << " + " << shift_;
  return os.str();
}

double tail(const DistModel& d, double lambda, Boundary b) {
  if (!(lambda >= 0)) throw InputError("tail threshold must be >= 0");
  switch (d.kind()) {
    case DistKind::Rademacher:
    case DistKind::AtomicSymmetric: {
      CompensatedSum s;
      for (auto [v, p] : d.pmf())
        if (reaches(std::abs(v), lambda, b)) s.add(p);
      return std::min(1.0, s.value());
    }
    case DistKind::Counterexample: {
      if (lambda == 0 && b == Boundary::Closed) return 1.0;
      double ll = std::log(lambda);
      double l = kNegInf;
      for (const auto& lv : d.ce()->levels)
        if (b == Boundary::Closed ? lv.atom.log() >= ll : lv.atom.log() > ll)
          l = log_add(l, std::log(2.0) + lv.prob.log());
      return std::exp(l);
    }
    case DistKind::Gaussian: {
      double mu = d.shift(), s = d.sigma();
      if (lambda == 0) return 1.0;
      return std::min(1.0, normal_sf((lambda - mu) / s) + normal_sf((lambda + mu) / s));
    }
    case DistKind::SymmetricPareto: {
      double mu = d.shift();
      if (lambda == 0) return 1.0;
      if (mu == 0) return std::min(1.0, std::pow(d.scale() / lambda, d.q()));
      return std::min(1.0, pareto_upper(d.q(), d.scale(), lambda - mu) +
                               pareto_upper(d.q(), d.scale(), lambda + mu));
    }
  }
  return 0.0;
}

double truncated_moment(const DistModel& d, const TruncatedMomentQuery& q) {
  if (!(q.nu >= 0)) throw InputError("moment order must be >= 0");
  if (!(q.b > 0)) throw InputError("truncation level must be > 0");
  switch (d.kind()) {
    case DistKind::Rademacher:
    case DistKind::AtomicSymmetric: {
      CompensatedSum s;
      for (auto [v, p] : d.pmf())
        if (v != 0 && keep(std::abs(v), q.b, q.boundary)) s.add(p * std::pow(std::abs(v), q.nu));
      return s.value();
    }
    case DistKind::Counterexample: {
      double lb = std::log(q.b), l = kNegInf;
      for (const auto& lv : d.ce()->levels) {
        bool in = q.boundary == Boundary::Open ? lv.atom.log() < lb : lv.atom.log() <= lb;
        if (in) l = log_add(l, std::log(2.0) + lv.prob.log() + q.nu * lv.atom.log());
      }
      return std::exp(l);
    }
    case DistKind::Gaussian:
      if (d.shift() == 0) {
        double a = (q.nu + 1) / 2, s = d.sigma();
        double x = q.b * q.b / (2 * s * s);
        return std::pow(s, q.nu) * std::pow(2.0, q.nu / 2) * std::tgamma(a) / std::sqrt(std::numbers::pi) *
               boost::math::gamma_p(a, x);
      }
      break;
    case DistKind::SymmetricPareto:
      if (d.shift() == 0) {
        double s = d.scale(), qq = d.q();
        if (q.b <= s) return 0.0;
        double c = qq * std::pow(s, qq);
        if (q.nu == qq) return c * std::log(q.b / s);
        return c * (std::pow(q.b, q.nu - qq) - std::pow(s, q.nu - qq)) / (q.nu - qq);
      }
      break;
  }
  double nu = q.nu;
  return expect_continuous(d, [nu](double x) { return std::pow(x, nu); },
                           [nu](double lx) { return nu * lx; }, q.b);
}

double truncated_signed_mean(const DistModel& d, double b, Boundary boundary) {
  if (!(b > 0)) throw InputError("truncation level must be > 0");
  if (d.symmetric()) return 0.0;
  if (d.lattice_like()) {
    CompensatedSum s;
    for (auto [v, p] : d.pmf())
      if (keep(std::abs(v), b, boundary)) s.add(p * v);
    return s.value();
  }
  // X = Y + mu with Y symmetric: integrate x f(x - mu) over |x| < b.
  const double mu = d.shift();
  auto f = [&](double x) {
    if (d.kind() == DistKind::Gaussian) {
      double z = (x - mu) / d.sigma();
      return x * std::exp(-0.5 * z * z) / (d.sigma() * std::sqrt(2.0 * std::numbers::pi));
    }
    double a = std::abs(x - mu);
    return a < d.scale() ? 0.0 : x * 0.5 * d.q() * std::pow(d.scale(), d.q()) * std::pow(a, -d.q() - 1);
  };
  std::vector<double> cuts{-b, b};
  if (d.kind() == DistKind::SymmetricPareto) {
    for (double p : {mu - d.scale(), mu + d.scale()})
      if (p > -b && p < b) cuts.push_back(p);
  } else {
    for (double p : {mu - 40 * d.sigma(), mu + 40 * d.sigma()})
      if (p > -b && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin(), cuts.end());
  CompensatedSum s;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) s.add(integrate(f, cuts[i], cuts[i + 1]).value);
  return s.value();
}

MomentResult log_plus_moment(const DistModel& d) {
  auto g = [](double x) { return x * x / std::log(2.0 + x); };
  auto lg = [](double lx) { return 2.0 * lx - log_log2plus_from_log(lx); };
  return special_moment(d, g, lg);
}

MomentResult loglog_moment(const DistModel& d, double delta) {
  if (!(delta > 0)) throw InputError("delta must be > 0");
  auto g = [delta](double x) {
    double l = std::log(2.0 + x);
    return x * x * std::pow(std::log(2.0 + l), 1.0 + delta) / l;
  };
  auto lg = [delta](double lx) {
    double ll = log_log2plus_from_log(lx);  // log log(2+x)
    double l = std::exp(ll);
    return 2.0 * lx + (1.0 + delta) * std::log(std::log(2.0 + l)) - ll;
  };
  return special_moment(d, g, lg);
}

DominationResult weak_mean_domination_check(const std::vector<TailOracle>& rows,
                                            const DistModel& x, double K,
                                            const std::vector<double>& lambdas) {
  if (rows.empty()) throw InputError("domination check needs a non-empty row");
  if (lambdas.empty()) throw InputError("lambda grid must be non-empty");
  if (!(K > 0)) throw InputError("K must be > 0");
  DominationResult r;
  for (double l : lambdas) {
    if (!(l >= 0)) throw InputError("lambda grid must be non-negative");
    CompensatedSum s;
    for (const auto& row : rows) s.add(row(l));
    double lhs = s.value() / double(rows.size());
    double rhs = K * tail(x, l);
    if (lhs > rhs * (1 + 1e-12) + 1e-300) {
      r.dominated = false;
      r.violation = l;
      r.lhs = lhs;
      r.rhs = rhs;
      return r;
    }
  }
  return r;
}

Sampler::Sampler(const DistModel& d) : d_(&d) {
  if (d.kind() == DistKind::Counterexample)
    throw DomainError(
        "sampling the counterexample law is not supported: its atoms carry probability about "
        "1/K_m, far below any simulable rate");
  if (d.lattice_like()) {
    double acc = 0;
    for (auto [v, p] : d.pmf()) {
      values_.push_back(v);
      acc += p;
      cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
  }
}

double Sampler::draw(CounterStream& s) const {
  const DistModel& d = *d_;
  switch (d.kind()) {
    case DistKind::Rademacher:
      return ((s.next_u64() >> 63) ? 1.0 : -1.0) + d.shift();
    case DistKind::AtomicSymmetric: {
      double u = s.next_uniform();
      auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
      if (it == cdf_.end()) --it;
      return values_[it - cdf_.begin()];
    }
    case DistKind::Gaussian: {
      double u1 = s.next_uniform(), u2 = s.next_uniform();
      return d.sigma() * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2) + d.shift();
    }
    case DistKind::SymmetricPareto: {
      std::uint64_t w = s.next_u64();
      double u = (double(w >> 11) + 1.0) * 0x1.0p-53;
      double sign = (s.next_u64() >> 63) ? 1.0 : -1.0;
      return sign * d.scale() * std::pow(u, -1.0 / d.q()) + d.shift();
    }
    default:
      throw DomainError("unsupported kind for sampling");
  }
}

double Sampler::sum(CounterStream& s, long n, double trunc) const {
  if (n < 1) throw DomainError("sum needs n >= 1");
  const DistModel& d = *d_;
  if (d.kind() == DistKind::Rademacher) {
    // each bit is one sign; S = k v+ + (n-k) v-
    double vp = 1.0 + d.shift(), vm = -1.0 + d.shift();
    if (!(std::abs(vp) < trunc)) vp = 0.0;
    if (!(std::abs(vm) < trunc)) vm = 0.0;
    long ones = 0, left = n;
    while (left >= 64) {
      ones += std::popcount(s.next_u64());
      left -= 64;
    }
    if (left > 0) ones += std::popcount(s.next_u64() >> (64 - left));
    return double(ones) * vp + double(n - ones) * vm;
  }
  if (d.kind() == DistKind::Gaussian && std::isinf(trunc)) {
    double u1 = s.next_uniform(), u2 = s.next_uniform();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return d.sigma() * std::sqrt(double(n)) * z + double(n) * d.shift();
  }
  CompensatedSum acc;
  for (long i = 0; i < n; ++i) {
    double x = draw(s);
    if (std::abs(x) < trunc) acc.add(x);
  }
  return acc.value();
}

double sample_sum(const DistModel& d, long n, std::uint64_t seed, std::uint64_t replicate) {
  if (n < 1) throw DomainError("sample_sum needs n >= 1");
  Sampler smp(d);
  CounterStream s(derive_key(seed, std::uint64_t(n), kSampleTag), replicate);
  return smp.sum(s, n);
}

}  // namespace hre
