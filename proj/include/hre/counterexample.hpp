#pragma once

#include <vector>

#include "hre/log_number.hpp"

namespace hre {

// psi(t) = (t log t)^{1/2} for t >= 2, linear on [0, 2].
double psi(double t);
// Inverse of psi(t)^2 = t log t, i.e. phi(psi(t)) = t; phi(y) = y^2 / log(phi(y)) on y >= psi(2).
double phi(double y);
// log psi(K) from lambda = log K (K >= 2).
double log_psi_from_log(double lambda);

struct CounterexampleLevel {
  int m;
  double lambda;       // log K_m
  LogNumber atom;      // psi(K_m)
  LogNumber prob;      // 2^{-m-1}/K_m, mass at each of +-psi(K_m)
  double root;         // solution of the inductive equation before the safety margin
  bool l_bound_active; // lambda_m was raised to the half-tail bound
};

struct CounterexampleDist {
  std::vector<CounterexampleLevel> levels;
  double zero_mass;      // P(X = 0)
  LogNumber total_mass;  // p0 + 2 sum prob, should be 1
  int M() const { return int(levels.size()); }
};

// Upper bound for log(K+1)/log K at log K = lambda >= 1.
double rho_bound(double lambda);

struct LevelSolution {
  double root;
  double lambda;
  bool l_bound_active;
};
LevelSolution solve_level(int m, double lambda_prev);

// Certified upper bound on log L(K, m) with lambda = log K.
double logL_bound(double lambda, int m);
// Same with the tail exponent s given directly.
double logL_bound_s(double lambda, double s);

// 2^{-m-1} lambda exp(-2^m rho(lambda)) in log domain; >= 0 means the level holds.
double inductive_margin_log(int m, double lambda);

CounterexampleDist build_counterexample(int M);

double phi_moment_truncated(const CounterexampleDist& ce);

struct T1nBound {
  double exact;   // sum_{j<=m} 2^{-j} lambda_j
  double single;  // 2^{-m} lambda_m
};
T1nBound T1n_lower_bound(const CounterexampleDist& ce, int m);

struct BlockBound {
  int m;
  double log_k;
  double lower_bound;  // certified lower bound on sum over (K_m, K_{m+1}]
};
struct DivergenceCertificate {
  std::vector<BlockBound> blocks;
  double cumulative;
  bool replay_ok;
};
DivergenceCertificate divergence_certificate(const CounterexampleDist& ce);

// Independent replay of the two inductive inequalities for every level.
bool replay_levels(const CounterexampleDist& ce);

}  // namespace hre
