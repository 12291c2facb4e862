#include "hre/scenario.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace hre {

namespace pt = boost::property_tree;

std::string ScenarioError::format(const std::string& field, const std::string& msg, int line) {
  std::string out = field.empty() ? msg : field + ": " + msg;
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  return out;
}

bool DistSpec::operator==(const DistSpec& o) const {
  if (atoms.size() != o.atoms.size()) return false;
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].value != o.atoms[i].value || atoms[i].prob != o.atoms[i].prob) return false;
  return kind == o.kind && sigma == o.sigma && q == o.q && scale == o.scale && shift == o.shift &&
         levels == o.levels;
}

bool Scenario::operator==(const Scenario& o) const {
  return version == o.version && name == o.name && anchor == o.anchor && description == o.description &&
         dist == o.dist && weights == o.weights && norming == o.norming && eval == o.eval && sim == o.sim &&
         battery == o.battery && checks == o.checks && expect == o.expect;
}

DistModel DistSpec::build() const {
  DistModel d = DistModel::rademacher();
  if (kind == "rademacher")
    d = DistModel::rademacher();
  else if (kind == "gaussian")
    d = DistModel::gaussian(sigma);
  else if (kind == "pareto")
    d = DistModel::symmetric_pareto(q, scale);
  else if (kind == "atomic")
    d = DistModel::atomic_symmetric(atoms);
  else if (kind == "constant")
    return DistModel::constant(shift);
  else if (kind == "counterexample")
    return DistModel::counterexample(std::make_shared<const CounterexampleDist>(build_counterexample(levels)));
  else
    throw InputError("unknown distribution kind '" + kind + "'");
  return shift != 0.0 ? d.shifted(shift) : d;
}

WeightSequence SeqSpec::weights() const {
  if (kind == "sp") return sp_weights();
  SlowlyVaryingSpec sv;
  sv.logPower = log_power;
  sv.logLogPower = loglog_power;
  sv.constant = constant;
  return WeightSequence::power_law(exponent, sv, start);
}

NormingSequence SeqSpec::norming() const {
  if (kind == "sp") return sp_norming();
  SlowlyVaryingSpec sv;
  sv.logPower = log_power;
  sv.logLogPower = loglog_power;
  sv.constant = constant;
  return NormingSequence::power_law(exponent, sv, start);
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> k{
      "condition-a", "growth",      "ii",    "iii",          "cor-sp",          "sp-weak",
      "baum-katz",   "counterexample", "elementary", "klesov", "condition-i", "weighted-series",
      "nagaev",      "hj",          "lemma-sp"};
  return k;
}

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"", {"version", "name", "anchor", "description"}},
      {"distribution", {"kind", "sigma", "q", "scale", "shift", "atoms", "levels"}},
      {"weights", {"kind", "exponent", "log_power", "loglog_power", "constant", "start"}},
      {"norming", {"kind", "exponent", "log_power", "loglog_power", "constant", "start"}},
      {"evaluation", {"eps", "horizon", "delta", "gamma", "nu", "theta", "t", "r", "hj_x"}},
      {"simulation", {"seed", "replicates", "n_grid", "truncate", "workers"}},
      {"battery", {"r", "p"}},
      {"checks", {"run"}},
      {"expect", {}},
  };
  return s;
}

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream is(text);
    std::string line, section;
    int no = 0;
    while (std::getline(is, line)) {
      ++no;
      std::string t = trim(line);
      if (t.empty() || t[0] == ';' || t[0] == '#') continue;
      if (t.front() == '[') {
        section = trim(t.substr(1, t.find(']') - 1));
        lines_[section] = no;
        continue;
      }
      auto eq = t.find('=');
      if (eq == std::string::npos) continue;  // the ini parser reports it
      std::string key = trim(t.substr(0, eq));
      lines_[section.empty() ? key : section + "." + key] = no;
    }
    std::istringstream in(text);
    try {
      pt::read_ini(in, tree_);
    } catch (const pt::ini_parser_error& e) {
      throw ScenarioError("", e.message(), int(e.line()));
    }
    for (const auto& [sec, body] : tree_) {
      if (body.empty()) {
        if (!schema().at("").count(sec)) fail(sec, "unknown top-level key");
        continue;
      }
      auto it = schema().find(sec);
      if (it == schema().end() || sec.empty()) fail(sec, "unknown section");
      if (sec == "expect") continue;
      for (const auto& [k, v] : body)
        if (!it->second.count(k)) fail(sec + "." + k, "unknown key");
    }
  }

  int line(const std::string& field) const {
    auto it = lines_.find(field);
    return it == lines_.end() ? 0 : it->second;
  }
  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ScenarioError(field, msg, line(field));
  }
  bool has(const std::string& field) const { return bool(tree_.get_optional<std::string>(pt::ptree::path_type(field, '.'))); }
  std::string str(const std::string& field, const std::string& dflt) const {
    return tree_.get<std::string>(pt::ptree::path_type(field, '.'), dflt);
  }
  double num(const std::string& field, double dflt) const {
    if (!has(field)) return dflt;
    return to_double(field, str(field, ""));
  }
  long integer(const std::string& field, long dflt) const {
    if (!has(field)) return dflt;
    std::string s = str(field, "");
    try {
      size_t pos = 0;
      long v = std::stol(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(field, "expected an integer, got '" + s + "'");
    }
  }
  std::uint64_t u64(const std::string& field, std::uint64_t dflt) const {
    if (!has(field)) return dflt;
    std::string s = str(field, "");
    try {
      size_t pos = 0;
      if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
      std::uint64_t v = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(field, "expected a nonnegative integer, got '" + s + "'");
    }
  }
  bool boolean(const std::string& field, bool dflt) const {
    if (!has(field)) return dflt;
    std::string s = str(field, "");
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    fail(field, "expected true or false, got '" + s + "'");
  }
  std::vector<double> nums(const std::string& field, const std::vector<double>& dflt) const {
    if (!has(field)) return dflt;
    std::vector<double> out;
    for (const auto& p : split(str(field, ""), ',')) out.push_back(to_double(field, p));
    return out;
  }
  std::vector<long> grid(const std::string& field) const {
    if (!has(field)) return {};
    std::string s = str(field, "");
    if (s.rfind("log:", 0) == 0) {
      auto parts = split(s.substr(4), ':');
      if (parts.size() != 3) fail(field, "log grid form is log:LO:HI:COUNT");
      try {
        return log_grid(std::stol(parts[0]), std::stol(parts[1]), std::stoi(parts[2]));
      } catch (const InputError& e) {
        fail(field, e.what());
      } catch (const std::exception&) {
        fail(field, "log grid form is log:LO:HI:COUNT");
      }
    }
    std::vector<long> out;
    for (const auto& p : split(s, ',')) {
      try {
        size_t pos = 0;
        out.push_back(std::stol(p, &pos));
        if (pos != p.size()) throw std::invalid_argument(p);
      } catch (const std::exception&) {
        fail(field, "expected integers, got '" + p + "'");
      }
    }
    return out;
  }
  const pt::ptree& tree() const { return tree_; }

 private:
  double to_double(const std::string& field, const std::string& s) const {
    try {
      size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(field, "expected a number, got '" + s + "'");
    }
  }
  pt::ptree tree_;
  std::map<std::string, int> lines_;
};

SeqSpec read_seq(const Reader& r, const std::string& sec, SeqSpec d) {
  d.kind = r.str(sec + ".kind", d.kind);
  if (d.kind != "power" && d.kind != "sp") r.fail(sec + ".kind", "expected power or sp");
  d.exponent = r.num(sec + ".exponent", d.exponent);
  d.log_power = r.num(sec + ".log_power", d.log_power);
  d.loglog_power = r.num(sec + ".loglog_power", d.loglog_power);
  d.constant = r.num(sec + ".constant", d.constant);
  d.start = r.integer(sec + ".start", d.start);
  if (!(d.constant > 0)) r.fail(sec + ".constant", "must be > 0");
  if (d.start < 1) r.fail(sec + ".start", "must be >= 1");
  return d;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Reader r(text);
  Scenario s;
  if (!r.has("version")) throw ScenarioError("version", "missing mandatory field", 0);
  s.version = int(r.integer("version", 0));
  if (s.version != kScenarioVersion)
    r.fail("version", "unsupported version " + std::to_string(s.version) + " (expected " +
                          std::to_string(kScenarioVersion) + ")");
  s.name = r.str("name", "");
  if (s.name.empty()) throw ScenarioError("name", "missing mandatory field", 0);
  s.anchor = r.str("anchor", "");
  s.description = r.str("description", "");

  auto& d = s.dist;
  d.kind = r.str("distribution.kind", d.kind);
  static const std::set<std::string> kinds{"rademacher", "gaussian", "pareto", "atomic", "counterexample", "constant"};
  if (!kinds.count(d.kind)) r.fail("distribution.kind", "unknown kind '" + d.kind + "'");
  d.sigma = r.num("distribution.sigma", d.sigma);
  d.q = r.num("distribution.q", d.q);
  d.scale = r.num("distribution.scale", d.scale);
  d.shift = r.num("distribution.shift", d.shift);
  d.levels = int(r.integer("distribution.levels", d.levels));
  if (!(d.sigma > 0)) r.fail("distribution.sigma", "must be > 0");
  if (!(d.q > 0)) r.fail("distribution.q", "must be > 0");
  if (!(d.scale > 0)) r.fail("distribution.scale", "must be > 0");
  if (d.kind == "counterexample" && (d.levels < 1 || d.levels > 8))
    r.fail("distribution.levels", "must be in [1, 8]");
  if (d.kind == "counterexample" && d.shift != 0.0) r.fail("distribution.shift", "the counterexample law cannot be shifted");
  if (r.has("distribution.atoms")) {
    for (const auto& item : split(r.str("distribution.atoms", ""), ',')) {
      auto c = item.find(':');
      if (c == std::string::npos) r.fail("distribution.atoms", "entries are value:prob");
      try {
        d.atoms.push_back({std::stod(item.substr(0, c)), std::stod(item.substr(c + 1))});
      } catch (const std::exception&) {
        r.fail("distribution.atoms", "bad entry '" + item + "'");
      }
    }
  }
  if (d.kind == "atomic") {
    if (d.atoms.empty()) r.fail("distribution.atoms", "atomic law needs atoms");
    try {
      (void)DistModel::atomic_symmetric(d.atoms);
    } catch (const InputError& e) {
      r.fail("distribution.atoms", e.what());
    }
  }

  s.weights = read_seq(r, "weights", s.weights);
  SeqSpec nd;
  nd.exponent = 1.0;
  s.norming = read_seq(r, "norming", nd);
  if (s.norming.kind == "power" && !(s.norming.exponent > 0)) r.fail("norming.exponent", "must be > 0");

  auto& e = s.eval;
  e.eps = r.nums("evaluation.eps", e.eps);
  if (e.eps.empty()) r.fail("evaluation.eps", "needs at least one value");
  for (double x : e.eps)
    if (!(x > 0)) r.fail("evaluation.eps", "values must be positive, got " + fmt(x));
  e.horizon = r.integer("evaluation.horizon", e.horizon);
  if (e.horizon < 100 || e.horizon > 100000000) r.fail("evaluation.horizon", "must be in [100, 1e8]");
  e.delta = r.num("evaluation.delta", e.delta);
  e.gamma = r.num("evaluation.gamma", e.gamma);
  e.nu = r.num("evaluation.nu", e.nu);
  e.theta = r.num("evaluation.theta", e.theta);
  e.t = r.num("evaluation.t", e.t);
  e.r = int(r.integer("evaluation.r", e.r));
  e.hj_x = r.nums("evaluation.hj_x", e.hj_x);
  if (!(e.delta > 0)) r.fail("evaluation.delta", "must be > 0");
  if (!(e.gamma > 0 && e.gamma <= 1)) r.fail("evaluation.gamma", "must be in (0, 1]");
  if (!(e.nu >= 0)) r.fail("evaluation.nu", "must be >= 0");
  if (!(e.theta >= 1)) r.fail("evaluation.theta", "must be >= 1");
  if (!(e.t > 0)) r.fail("evaluation.t", "must be > 0");
  if (e.r < 2) r.fail("evaluation.r", "must be >= 2");
  for (double x : e.hj_x)
    if (!(x > 0)) r.fail("evaluation.hj_x", "values must be positive");

  auto& m = s.sim;
  m.seed = r.u64("simulation.seed", m.seed);
  m.replicates = r.integer("simulation.replicates", m.replicates);
  m.n_grid = r.grid("simulation.n_grid");
  m.truncate = r.boolean("simulation.truncate", m.truncate);
  m.workers = int(r.integer("simulation.workers", m.workers));
  m.eps_grid = e.eps;
  if (m.replicates < 1000) r.fail("simulation.replicates", "must be >= 1000");
  if (m.workers < 1) r.fail("simulation.workers", "must be >= 1");
  for (size_t i = 0; i < m.n_grid.size(); ++i)
    if (m.n_grid[i] < 1 || (i && m.n_grid[i] <= m.n_grid[i - 1]))
      r.fail("simulation.n_grid", "must be strictly increasing positive integers");

  s.battery.r = r.nums("battery.r", {});
  s.battery.p = r.nums("battery.p", {});
  for (double x : s.battery.r)
    if (!(x >= 1)) r.fail("battery.r", "values must be >= 1");
  for (double x : s.battery.p)
    if (!(x > 0 && x < 2)) r.fail("battery.p", "values must be in (0, 2)");

  for (const auto& c : split(r.str("checks.run", ""), ',')) {
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      r.fail("checks.run", "unknown check '" + c + "'");
    s.checks.push_back(c);
  }
  if (s.checks.empty()) r.fail("checks.run", "no checks requested");
  if (auto ex = r.tree().get_child_optional("expect")) {
    for (const auto& [k, v] : *ex) {
      std::string val = v.get_value<std::string>();
      if (std::find(s.checks.begin(), s.checks.end(), k) == s.checks.end())
        r.fail("expect." + k, "expectation for a check that is not requested");
      if (val != "holds" && val != "fails" && val != "inconclusive")
        r.fail("expect." + k, "expected holds, fails or inconclusive");
      s.expect[k] = val;
    }
  }
  auto needs_grid = {"condition-i", "weighted-series", "nagaev", "hj", "lemma-sp"};
  for (const auto& c : needs_grid)
    if (std::find(s.checks.begin(), s.checks.end(), c) != s.checks.end() && m.n_grid.empty())
      r.fail("simulation.n_grid", std::string("required by check '") + c + "'");
  if (std::find(s.checks.begin(), s.checks.end(), "baum-katz") != s.checks.end() &&
      (s.battery.r.empty() || s.battery.p.empty()))
    r.fail("battery", "baum-katz check needs r and p lists");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string to_ini(const Scenario& s) {
  std::ostringstream o;
  o << "version = " << s.version << "\n";
  o << "name = " << s.name << "\n";
  if (!s.anchor.empty()) o << "anchor = " << s.anchor << "\n";
  if (!s.description.empty()) o << "description = " << s.description << "\n";
  const auto& d = s.dist;
  o << "\n[distribution]\nkind = " << d.kind << "\nsigma = " << fmt(d.sigma) << "\nq = " << fmt(d.q)
    << "\nscale = " << fmt(d.scale) << "\nshift = " << fmt(d.shift) << "\nlevels = " << d.levels << "\n";
  if (!d.atoms.empty()) {
    o << "atoms = ";
    for (size_t i = 0; i < d.atoms.size(); ++i) o << (i ? ", " : "") << fmt(d.atoms[i].value) << ":" << fmt(d.atoms[i].prob);
    o << "\n";
  }
  auto seq = [&](const char* name, const SeqSpec& q) {
    o << "\n[" << name << "]\nkind = " << q.kind << "\nexponent = " << fmt(q.exponent)
      << "\nlog_power = " << fmt(q.log_power) << "\nloglog_power = " << fmt(q.loglog_power)
      << "\nconstant = " << fmt(q.constant) << "\nstart = " << q.start << "\n";
  };
  seq("weights", s.weights);
  seq("norming", s.norming);
  const auto& e = s.eval;
  o << "\n[evaluation]\neps = " << join(e.eps) << "\nhorizon = " << e.horizon << "\ndelta = " << fmt(e.delta)
    << "\ngamma = " << fmt(e.gamma) << "\nnu = " << fmt(e.nu) << "\ntheta = " << fmt(e.theta)
    << "\nt = " << fmt(e.t) << "\nr = " << e.r << "\nhj_x = " << join(e.hj_x) << "\n";
  const auto& m = s.sim;
  o << "\n[simulation]\nseed = " << m.seed << "\nreplicates = " << m.replicates << "\n";
  if (!m.n_grid.empty()) {
    o << "n_grid = ";
    for (size_t i = 0; i < m.n_grid.size(); ++i) o << (i ? ", " : "") << m.n_grid[i];
    o << "\n";
  }
  o << "truncate = " << (m.truncate ? "true" : "false") << "\nworkers = " << m.workers << "\n";
  if (!s.battery.r.empty() || !s.battery.p.empty())
    o << "\n[battery]\nr = " << join(s.battery.r) << "\np = " << join(s.battery.p) << "\n";
  o << "\n[checks]\nrun = ";
  for (size_t i = 0; i < s.checks.size(); ++i) o << (i ? ", " : "") << s.checks[i];
  o << "\n";
  if (!s.expect.empty()) {
    o << "\n[expect]\n";
    for (const auto& [k, v] : s.expect) o << k << " = " << v << "\n";
  }
  return o.str();
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c{
      {"sp-rademacher", "corollary with weights 1/n and norming (n log n)^{1/2}", R"(version = 1
name = sp-rademacher
anchor = corollary with weights 1/n and norming (n log n)^{1/2}
description = Rademacher summands; every sufficient condition of the corollary holds

[distribution]
kind = rademacher

[weights]
kind = sp

[norming]
kind = sp

[evaluation]
eps = 0.25, 0.5, 1, 2
horizon = 100000
delta = 1
nu = 3

[simulation]
seed = 20240601
replicates = 10000
n_grid = log:2:2000:12

[checks]
run = condition-a, growth, ii, iii, cor-sp, sp-weak, elementary, klesov, condition-i, weighted-series, lemma-sp

[expect]
condition-a = holds
growth = holds
ii = holds
iii = holds
cor-sp = holds
sp-weak = holds
elementary = holds
klesov = holds
condition-i = holds
; at eps = 0.25 the terms fall like n^{-1-1/32}: a grid up to 2000 cannot tell that from 1/n
weighted-series = inconclusive
lemma-sp = holds
)"},
      {"sp-gaussian", "corollary with weights 1/n and norming (n log n)^{1/2}", R"(version = 1
name = sp-gaussian
anchor = corollary with weights 1/n and norming (n log n)^{1/2}
description = standard Gaussian summands; truncated second moments stay below 1

[distribution]
kind = gaussian
sigma = 1

[weights]
kind = sp

[norming]
kind = sp

[evaluation]
horizon = 20000
delta = 0.5

[simulation]
seed = 11
replicates = 10000
n_grid = 10, 100, 1000

[checks]
run = iii, cor-sp, sp-weak, lemma-sp

[expect]
iii = holds
cor-sp = holds
sp-weak = holds
lemma-sp = holds
)"},
      {"ms-counterexample", "Montgomery-Smith type counterexample", R"(version = 1
name = ms-counterexample
anchor = Montgomery-Smith type counterexample
description = mean zero, finite E[X^2/log+|X|], yet the truncated-moment series diverges at eps = 1

[distribution]
kind = counterexample
levels = 4

[weights]
kind = sp

[norming]
kind = sp

[evaluation]
eps = 1
horizon = 10000

[checks]
run = counterexample, iii, cor-sp

[expect]
counterexample = holds
iii = fails
cor-sp = fails
)"},
      {"baum-katz-rademacher", "Baum-Katz corollary", R"(version = 1
name = baum-katz-rademacher
anchor = Baum-Katz corollary
description = tau_n = n^{r-2}, a_n = n^{1/p}; bounded summands have every moment

[distribution]
kind = rademacher

[weights]
exponent = 0

[norming]
exponent = 1

[evaluation]
horizon = 100000

[simulation]
seed = 5
replicates = 10000
n_grid = log:1:1000:15

[battery]
r = 1, 1.5, 2, 3
p = 0.5, 1, 1.5

[checks]
run = baum-katz, ii, weighted-series

[expect]
baum-katz = holds
ii = holds
weighted-series = holds
)"},
      {"baum-katz-pareto", "Baum-Katz corollary", R"(version = 1
name = baum-katz-pareto
anchor = Baum-Katz corollary
description = symmetric Pareto with q = 1.5: the rp-th moment is infinite for r = 2, p = 1

[distribution]
kind = pareto
q = 1.5
scale = 1

[weights]
exponent = 0

[norming]
exponent = 1

[evaluation]
horizon = 100000

[battery]
r = 1, 2
p = 0.5, 1

[checks]
run = baum-katz, ii

[expect]
baum-katz = holds
ii = fails
)"},
      {"nagaev-sweep", "Nagaev central limit estimate", R"(version = 1
name = nagaev-sweep
anchor = Nagaev central limit estimate
description = gap between the truncated-sum tail and its Gaussian term, a_n = n^{1/2}

[distribution]
kind = rademacher

[norming]
exponent = 0.5

[evaluation]
eps = 1
gamma = 1

[simulation]
seed = 3
replicates = 20000
n_grid = 25, 100, 400, 1600

[checks]
run = nagaev

[expect]
nagaev = holds
)"},
      {"hj-sweep", "Hoffmann-Jorgensen inequality", R"(version = 1
name = hj-sweep
anchor = Hoffmann-Jorgensen inequality
description = constants fitted at the first grid point, transferred to the rest

[distribution]
kind = rademacher

[evaluation]
r = 2
hj_x = 0.5, 1, 1.5, 2, 2.5, 3

[simulation]
seed = 9
replicates = 100000
n_grid = 10, 100, 1000

[checks]
run = hj

[expect]
hj = holds
)"},
      {"lemma-sp-decay", "weak law behind the corollary (in-probability decay)", R"(version = 1
name = lemma-sp-decay
anchor = weak law behind the corollary (in-probability decay)
description = analytic criteria and empirical P(|S_n - E S_n| >= delta a_n) for Rademacher

[distribution]
kind = rademacher

[evaluation]
delta = 1

[simulation]
seed = 17
replicates = 20000
n_grid = 10, 100, 1000, 10000

[checks]
run = lemma-sp

[expect]
lemma-sp = holds
)"},
  };
  return c;
}

Scenario resolve_scenario(const std::string& name_or_path) {
  for (const auto& e : catalog())
    if (e.name == name_or_path) return parse_scenario(e.text);
  return load_scenario(name_or_path);
}

}  // namespace hre
