#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hre/distributions.hpp"
#include "hre/montecarlo.hpp"
#include "hre/numeric.hpp"
#include "hre/sequences.hpp"

namespace hre {

inline constexpr int kScenarioVersion = 1;

// Validation or syntax error; line is 0 when no source line applies.
class ScenarioError : public InputError {
 public:
  ScenarioError(const std::string& field, const std::string& msg, int line)
      : InputError(format(field, msg, line)), field_(field), line_(line) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& msg, int line);
  std::string field_;
  int line_;
};

struct DistSpec {
  std::string kind = "rademacher";  // rademacher gaussian pareto atomic counterexample constant
  double sigma = 1.0;
  double q = 2.0;
  double scale = 1.0;
  double shift = 0.0;
  std::vector<Atom> atoms;  // atomic: positive values, mass of +v and of -v each
  int levels = 4;           // counterexample
  bool operator==(const DistSpec&) const;

  DistModel build() const;
};

struct SeqSpec {
  std::string kind = "power";  // power, or sp for the corollary's fixed sequences
  double exponent = 0.0;
  double log_power = 0.0;
  double loglog_power = 0.0;
  double constant = 1.0;
  long start = 1;
  bool operator==(const SeqSpec&) const = default;

  WeightSequence weights() const;
  NormingSequence norming() const;
};

struct EvalSpec {
  std::vector<double> eps = kDefaultEpsGrid;
  long horizon = 100000;
  double delta = 1.0;  // weak-moment bound and Lemma Sp threshold
  double gamma = 1.0;
  double nu = 3.0;     // Klesov-type lemma
  double theta = 1.0;
  double t = 3.0;      // elementary lemma moment order
  int r = 2;           // Hoffmann-Jorgensen power
  std::vector<double> hj_x{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};  // lambda = x sqrt(n)
  bool operator==(const EvalSpec&) const = default;
};

struct BatterySpec {
  std::vector<double> r;
  std::vector<double> p;
  bool operator==(const BatterySpec&) const = default;
};

struct Scenario {
  int version = kScenarioVersion;
  std::string name;
  std::string anchor;
  std::string description;
  DistSpec dist;
  SeqSpec weights;
  SeqSpec norming;
  EvalSpec eval;
  SimConfig sim;
  BatterySpec battery;
  std::vector<std::string> checks;
  std::map<std::string, std::string> expect;  // check -> holds | fails | inconclusive
  bool operator==(const Scenario&) const;
};

const std::vector<std::string>& known_checks();

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
// Lossless: parse_scenario(to_ini(s)) == s.
std::string to_ini(const Scenario& s);

struct CatalogEntry {
  std::string name;
  std::string anchor;
  std::string text;
};
const std::vector<CatalogEntry>& catalog();
// Catalog name or a file path.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace hre
