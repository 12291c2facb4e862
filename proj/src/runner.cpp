#include "hre/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "hre/conditions.hpp"
#include "hre/counterexample.hpp"
#include "hre/exact_lattice.hpp"
#include "hre/montecarlo.hpp"

namespace hre {

using json = nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* lower(Outcome o) {
  return o == Outcome::Holds ? "holds" : o == Outcome::Fails ? "fails" : "inconclusive";
}

std::string combine(const std::vector<std::string>& vs) {
  bool all = !vs.empty();
  for (const auto& v : vs) {
    if (v == "fails") return "fails";
    all = all && v == "holds";
  }
  return all ? "holds" : "inconclusive";
}

json report_json(const ConditionReport& r) {
  json j;
  j["id"] = to_string(r.id);
  j["overall"] = lower(r.overall());
  json es = json::array();
  for (const auto& e : r.entries) {
    json je;
    je["epsilon"] = e.epsilon;
    je["outcome"] = lower(e.outcome);
    if (e.value) je["value"] = *e.value;
    if (e.series) je["series"] = to_json(*e.series);
    je["detail"] = e.detail;
    es.push_back(je);
  }
  j["entries"] = es;
  return j;
}

json growth_json(const GrowthCheckReport& g) {
  json j;
  j["variant"] = to_string(g.variant);
  j["theta"] = g.theta;
  j["witnessC"] = g.witness_c ? json(*g.witness_c) : json(nullptr);
  j["scanRange"] = {g.n_start, g.horizon};
  j["maxRatio"] = g.max_ratio;
  j["trendSlope"] = g.trend_slope;
  j["verdict"] = lower(g.verdict);
  j["reason"] = g.reason;
  return j;
}

// Trace of running partial sums at ~200 log-spaced points.
CsvTable series_trace(const std::string& file, const std::vector<double>& eps, long start, long end,
                      const std::function<double(double, long)>& log_term) {
  CsvTable t{file, {"n", "epsilon", "term", "partialSum", "stderr"}, {}};
  auto pts = log_grid(start, end, 200);
  for (double e : eps) {
    CompensatedSum acc;
    size_t k = 0;
    for (long n = start; n <= end && k < pts.size(); ++n) {
      double lt = log_term(e, n);
      double v = std::isinf(lt) && lt < 0 ? 0.0 : std::exp(lt);
      acc.add(v);
      if (n == pts[k]) {
        t.rows.push_back({std::to_string(n), num(e), num(v), num(acc.value()), ""});
        ++k;
      }
    }
  }
  return t;
}

struct Ctx {
  const Scenario& s;
  const DistModel& x;
  const WeightSequence& tau;
  const NormingSequence& a;
  SimConfig cfg;
  long H;
};

SectionResult run_condition_a(const Ctx& c) {
  SectionResult r{"condition-a", "Condition A (sufficient criterion)", "", {}, {}, {}, 0};
  auto res = check_condition_a_sufficient(c.tau, 20);
  r.data["established"] = res.established;
  r.data["witnessC"] = res.witness_c ? json(*res.witness_c) : json(nullptr);
  r.data["branch"] = res.branch;
  r.data["reason"] = res.reason;
  if (res.established) {
    r.verdict = "holds";
  } else if (auto w = falsify_condition_a(c.tau, PowerFamily{}, c.H)) {
    r.verdict = "fails";
    r.data["falsifier"] = {{"scale", w->scale}, {"power", w->power}, {"detail", w->detail}};
  } else {
    r.verdict = "inconclusive";
  }
  return r;
}

SectionResult run_growth(const Ctx& c) {
  SectionResult r{"growth", "growth hypotheses on (tau_n, a_n)", "", {}, {}, {}, 0};
  std::vector<std::string> parts;
  for (auto v : {GrowthVariant::Cubic, GrowthVariant::Quadratic}) {
    json jv;
    std::string verdict;
    try {
      auto rec = recommend_theta(c.tau, c.a, v, 2, c.H);
      jv["theta"] = rec.theta ? json(*rec.theta) : json(nullptr);
      jv["note"] = rec.note;
      json tr = json::array();
      for (const auto& g : rec.trials) tr.push_back(growth_json(g));
      jv["trials"] = tr;
      auto lim = verify_liminf_condition(c.tau, c.a, v, 2, c.H);
      jv["liminf"] = growth_json(lim);
      bool all_fail = !rec.trials.empty() && std::all_of(rec.trials.begin(), rec.trials.end(), [](const auto& g) {
        return g.verdict == Outcome::Fails;
      });
      if (rec.theta && lim.verdict == Outcome::Holds)
        verdict = "holds";
      else if (all_fail || lim.verdict == Outcome::Fails)
        verdict = "fails";
      else
        verdict = "inconclusive";
    } catch (const InputError& e) {
      jv["error"] = e.what();
      verdict = "fails";
    }
    jv["verdict"] = verdict;
    r.data[to_string(v)] = jv;
    if (v == GrowthVariant::Cubic) parts.push_back(verdict);
  }
  r.verdict = combine(parts);
  r.data["note"] = "verdict follows the cubic variant; theta searched on {1, 2, 4, 8, 16}";
  return r;
}

SectionResult run_ii(const Ctx& c) {
  SectionResult r{"ii", "II", "", {}, {}, {}, 0};
  auto rep = report_condition_ii(c.x, c.tau, c.a, c.s.eval.eps, c.H);
  r.data = report_json(rep);
  r.verdict = lower(rep.overall());
  long s0 = std::max(c.tau.start(), c.a.start());
  r.csv.push_back(series_trace("ii.csv", c.s.eval.eps, s0, c.H, [&](double e, long n) {
    return condition_ii_log_term(c.x, c.tau, c.a, e, n);
  }));
  return r;
}

SectionResult run_iii(const Ctx& c) {
  SectionResult r{"iii", "III", "", {}, {}, {}, 0};
  auto rep = report_condition_iii(c.x, c.tau, c.a, c.s.eval.eps, c.H);
  r.data = report_json(rep);
  r.verdict = lower(rep.overall());
  long s0 = std::max(c.tau.start(), c.a.start());
  r.csv.push_back(series_trace("iii.csv", c.s.eval.eps, s0, c.H, [&](double e, long n) {
    return condition_iii_log_term(c.x, c.tau, c.a, e, n);
  }));
  return r;
}

SectionResult run_cor_sp(const Ctx& c) {
  SectionResult r{"cor-sp", "SpA, SpB, SpC", "", {}, {}, {}, 0};
  auto rep = eval_cor_sp(c.x, c.s.eval.eps, c.H);
  r.data["a"] = report_json(rep.a);
  r.data["b"] = report_json(rep.b);
  r.data["c"] = report_json(rep.c);
  r.data["termIdentity"] = rep.term_identity;
  r.data["maxTermRelDiff"] = rep.max_term_rel_diff;
  std::vector<std::string> v{lower(rep.a.overall()), lower(rep.b.overall()), lower(rep.c.overall())};
  if (!rep.term_identity) v.push_back("inconclusive");
  r.verdict = combine(v);
  r.csv.push_back(series_trace("cor-sp.csv", c.s.eval.eps, 2, c.H,
                               [&](double e, long n) { return cor_sp_log_term(c.x, e, n); }));
  return r;
}

SectionResult run_sp_weak(const Ctx& c) {
  SectionResult r{"sp-weak", "SpWeakB", "", {}, {}, {}, 0};
  try {
    auto rep = eval_sp_weak_bound(c.x, c.s.eval.delta, c.H);
    r.data["delta"] = c.s.eval.delta;
    r.data["moment"] = rep.moment;
    r.data["logN"] = rep.log_N;
    r.data["middleBound"] = rep.middle_bound;
    r.data["series"] = to_json(rep.series);
    r.verdict = lower(outcome_of(rep.series.verdict));
  } catch (const InputError& e) {
    r.data["precondition"] = e.what();
    r.verdict = "inconclusive";
  }
  return r;
}

SectionResult run_baum_katz(const Ctx& c) {
  SectionResult r{"baum-katz", "II over the Baum-Katz family tau_n = n^{r-2}, a_n = n^{1/p}", "", {}, {}, {}, 0};
  json cells = json::array();
  std::vector<std::string> v;
  for (double rr : c.s.battery.r)
    for (double p : c.s.battery.p) {
      auto tau = WeightSequence::power_law(rr - 2.0);
      auto a = NormingSequence::power_law(1.0 / p);
      double mom = c.x.kind() == DistKind::Counterexample ? kInf : c.x.abs_moment(rr * p);
      bool finite = std::isfinite(mom);
      auto rep = report_condition_ii(c.x, tau, a, c.s.eval.eps, c.H);
      Outcome o = rep.overall();
      std::string cell;
      if (o == Outcome::Inconclusive)
        cell = "inconclusive";
      else
        cell = (o == Outcome::Holds) == finite ? "holds" : "fails";
      v.push_back(cell);
      json jc;
      jc["r"] = rr;
      jc["p"] = p;
      jc["momentOrder"] = rr * p;
      jc["momentFinite"] = finite;
      jc["conditionII"] = lower(o);
      jc["agreement"] = cell;
      jc["report"] = report_json(rep);
      cells.push_back(jc);
    }
  r.data["cells"] = cells;
  r.data["note"] = "agreement: condition (ii) converges exactly when E|X|^{rp} is finite";
  r.verdict = combine(v);
  return r;
}

SectionResult run_counterexample(const Ctx& c, int levels) {
  SectionResult r{"counterexample", "SpC fails for a law with SpA and SpB", "", {}, {}, {}, 0};
  auto ce = build_counterexample(levels);
  auto cert = divergence_certificate(ce);
  r.data = counterexample_json(ce);
  json blocks = json::array();
  for (const auto& b : cert.blocks) blocks.push_back({{"m", b.m}, {"logK", b.log_k}, {"lowerBound", b.lower_bound}});
  r.data["certificate"] = {{"blocks", blocks}, {"cumulative", cert.cumulative}, {"replayOk", cert.replay_ok}};
  r.data["replayLevels"] = replay_levels(ce);
  r.data["phiMomentTruncated"] = phi_moment_truncated(ce);
  bool ok = cert.replay_ok && r.data["replayLevels"].get<bool>() && cert.cumulative >= 0.5 * levels;
  r.verdict = ok ? "holds" : "fails";
  return r;
}

SectionResult run_elementary(const Ctx& c) {
  SectionResult r{"elementary", "elementary truncation lemma", "", {}, {}, {}, 0};
  if (!c.tau.form() || !c.a.form()) {
    r.verdict = "inconclusive";
    r.data["reason"] = "needs regular-form sequences";
    return r;
  }
  RegularForm rho = c.tau.form()->times_power(1.0) * c.a.form()->pow(-3.0);
  auto rs = Sequence::from_form(rho, std::max(c.tau.start(), c.a.start()));
  long H = std::min(c.H, 20000L);
  auto res = lemma_elementary_check(rs, c.tau, c.a, c.x, c.s.eval.t, H);
  r.data["rho"] = "n tau_n / a_n^3";
  r.data["t"] = c.s.eval.t;
  r.data["horizon"] = H;
  r.data["C"] = res.c;
  r.data["maxRatio"] = res.max_ratio;
  r.data["violatedAt"] = res.violated_at ? json(*res.violated_at) : json(nullptr);
  r.data["detail"] = res.detail;
  r.verdict = lower(res.outcome);
  return r;
}

SectionResult run_klesov(const Ctx& c) {
  SectionResult r{"klesov", "Klesov-type summability lemma", "", {}, {}, {}, 0};
  auto k = lemma_klesov_check(c.tau, c.a, c.x, c.s.eval.nu, c.s.eval.theta, c.H);
  r.data["nu"] = c.s.eval.nu;
  r.data["theta"] = c.s.eval.theta;
  r.data["finiteCertified"] = k.finite_certified;
  r.data["bound"] = k.bound;
  r.data["series"] = to_json(k.series);
  r.data["reason"] = k.reason;
  r.verdict = k.finite_certified ? "holds" : "inconclusive";
  return r;
}

SectionResult run_condition_i(const Ctx& c) {
  SectionResult r{"condition-i", "I", "", {}, {}, {}, 0};
  auto rep = estimate_condition_i(c.x, c.tau, c.a, c.s.eval.eps, c.cfg);
  r.data = report_json(rep);
  r.data["note"] = "medians estimated on the simulation grid only";
  r.verdict = lower(rep.overall());
  return r;
}

SectionResult run_weighted_series(const Ctx& c) {
  SectionResult r{"weighted-series", "complete convergence series sum tau_n P(|S_n| >= eps a_n)", "", {}, {}, {}, 0};
  CsvTable t{"simulate.csv", {"n", "epsilon", "pHat", "stdErr", "weightedTerm", "partialSum"}, {}};
  json per = json::array();
  std::vector<std::string> v;
  for (double e : c.s.eval.eps) {
    auto ws = estimate_weighted_series(c.x, c.tau, c.a, e, c.cfg);
    json rows = json::array();
    for (const auto& row : ws.rows) {
      t.rows.push_back({std::to_string(row.n), num(e), num(row.p_hat), num(row.std_err), num(row.weighted_term),
                        num(row.partial_sum)});
      rows.push_back({{"n", row.n}, {"pHat", row.p_hat}, {"stdErr", row.std_err}, {"weightedTerm", row.weighted_term},
                      {"blockWeight", row.block_weight}, {"partialSum", row.partial_sum}, {"partialSE", row.partial_se}});
    }
    // growth of the partial sum over the upper half of the log grid against the lower half
    const auto& rs = ws.rows;
    size_t mid = rs.size() / 2;
    double lowc = rs[mid].partial_sum - rs.front().partial_sum;
    double upc = rs.back().partial_sum - rs[mid].partial_sum;
    std::string verdict;
    double ratio = lowc > 0 ? upc / lowc : (upc > 0 ? kInf : 0.0);
    if (rs.back().partial_sum == 0.0 || ratio < 0.5)
      verdict = "holds";
    else if (ratio >= 1.0)
      verdict = "fails";
    else
      verdict = "inconclusive";
    v.push_back(verdict);
    per.push_back({{"epsilon", e}, {"rows", rows}, {"upperToLowerRatio", ratio}, {"verdict", verdict},
                   {"interpolated", ws.interpolated}, {"note", ws.note}});
  }
  r.data["series"] = per;
  r.data["note"] =
      "heuristic verdict: holds when the upper half of the grid adds < 0.5x what the lower half adds; "
      "fails at >= 1x";
  r.verdict = combine(v);
  r.csv.push_back(std::move(t));
  return r;
}

SectionResult run_nagaev(const Ctx& c) {
  SectionResult r{"nagaev", "Nagaev central limit estimate", "", {}, {}, {}, 0};
  json rows = json::array();
  bool pass = true;
  auto jr = [](const NagaevResult& n) {
    return json{{"n", n.n},         {"threshold", n.threshold}, {"pEmp", n.p_emp}, {"gaussian", n.gaussian},
                {"gap", n.gap},     {"bound", n.bound},         {"stdErr", n.std_err}, {"pass", n.pass},
                {"exact", n.exact}};
  };
  for (double e : c.s.eval.eps)
    for (long n : c.cfg.n_grid) {
      auto res = nagaev_gap_check(c.x, c.a, n, e, c.s.eval.gamma, c.cfg);
      pass = pass && res.pass;
      json j = jr(res);
      j["epsilon"] = e;
      rows.push_back(j);
    }
  r.data["c"] = kNagaevC;
  r.data["simulated"] = rows;
  if (c.x.lattice_like()) {
    json ex = json::array();
    for (double e : c.s.eval.eps) {
      auto sw = nagaev_sweep_exact(c.x, c.a, c.cfg.n_grid, e, c.s.eval.gamma);
      pass = pass && sw.all_pass;
      json rs = json::array();
      for (const auto& row : sw.rows) rs.push_back(jr(row));
      ex.push_back({{"epsilon", e}, {"rows", rs}, {"slope", sw.slope}});
    }
    r.data["exact"] = ex;
  }
  r.verdict = pass ? "holds" : "fails";
  return r;
}

SectionResult run_hj(const Ctx& c) {
  SectionResult r{"hj", "Hoffmann-Jorgensen inequality", "", {}, {}, {}, 0};
  auto lam = [&](long n) {
    std::vector<double> l;
    for (double x : c.s.eval.hj_x) l.push_back(x * std::sqrt(double(n)));
    return l;
  };
  long n0 = c.cfg.n_grid.front();
  HJFit fit = c.x.lattice_like() ? hj_fit_exact(c.x, n0, c.s.eval.r, lam(n0))
                                 : hj_fit(c.x, n0, c.s.eval.r, lam(n0), c.cfg);
  auto pts = [](const std::vector<HJPoint>& ps) {
    json a = json::array();
    for (const auto& p : ps)
      a.push_back({{"lambda", p.lambda}, {"lhs", p.lhs}, {"lhsSE", p.lhs_se}, {"single", p.single}, {"power", p.power}});
    return a;
  };
  json fr = json::array();
  for (auto [C, D] : fit.frontier) fr.push_back({{"C", C}, {"D", D}});
  r.data["fit"] = {{"n", fit.n}, {"r", fit.r}, {"C", fit.C}, {"D", fit.D}, {"exact", fit.exact},
                   {"points", pts(fit.points)}, {"frontier", fr}};
  json tr = json::array();
  bool pass = true;
  for (size_t i = 1; i < c.cfg.n_grid.size(); ++i) {
    long n = c.cfg.n_grid[i];
    auto t = hj_transfer_check(fit, c.x, n, lam(n), c.cfg);
    pass = pass && t.pass;
    tr.push_back({{"n", n}, {"worstRatio", t.worst_ratio}, {"slack", t.slack}, {"pass", t.pass}, {"points", pts(t.points)}});
  }
  r.data["transfer"] = tr;
  r.verdict = pass ? "holds" : "fails";
  return r;
}

SectionResult run_lemma_sp(const Ctx& c) {
  SectionResult r{"lemma-sp", "ShowS1, ShowS2, ShowS3", "", {}, {}, {}, 0};
  auto rep = lemma_sp_check(c.x, c.cfg.n_grid, c.s.eval.delta, c.cfg);
  auto table = [](const std::vector<LimitRow>& rows) {
    json a = json::array();
    for (const auto& row : rows) a.push_back({{"n", row.n}, {"value", row.value}});
    return a;
  };
  r.data["delta"] = rep.delta;
  r.data["logPlusMoment"] = {{"finite", rep.log_moment.finite}, {"value", rep.log_moment.value},
                             {"certificate", rep.log_moment.certificate}};
  r.data["show1"] = to_json(rep.show1);
  r.data["show2"] = {{"verdict", lower(rep.show2_verdict)}, {"table", table(rep.show2)}};
  r.data["show3"] = {{"verdict", lower(rep.show3_verdict)}, {"table", table(rep.show3)}};
  json emp = json::array();
  for (size_t i = 0; i < rep.empirical.size(); ++i) {
    const auto& t = rep.empirical[i];
    emp.push_back({{"n", t.n}, {"threshold", t.threshold}, {"pHat", t.p_hat}, {"stdErr", t.std_err},
                   {"normalOracle", rep.normal_oracle[i]}});
  }
  r.data["empirical"] = emp;
  r.data["empiricalSlope"] = rep.empirical_slope;
  r.data["note"] = rep.note;
  r.verdict = combine({lower(outcome_of(rep.show1.verdict)), lower(rep.show2_verdict), lower(rep.show3_verdict)});
  return r;
}

json scenario_json(const Scenario& s) {
  json j;
  j["version"] = s.version;
  j["name"] = s.name;
  j["anchor"] = s.anchor;
  j["description"] = s.description;
  json atoms = json::array();
  for (const auto& a : s.dist.atoms) atoms.push_back({{"value", a.value}, {"prob", a.prob}});
  j["distribution"] = {{"kind", s.dist.kind}, {"sigma", s.dist.sigma}, {"q", s.dist.q}, {"scale", s.dist.scale},
                       {"shift", s.dist.shift}, {"atoms", atoms}, {"levels", s.dist.levels}};
  auto seq = [](const SeqSpec& q) {
    return json{{"kind", q.kind}, {"exponent", q.exponent}, {"logPower", q.log_power},
                {"logLogPower", q.loglog_power}, {"constant", q.constant}, {"start", q.start}};
  };
  j["weights"] = seq(s.weights);
  j["norming"] = seq(s.norming);
  j["evaluation"] = {{"eps", s.eval.eps}, {"horizon", s.eval.horizon}, {"delta", s.eval.delta},
                     {"gamma", s.eval.gamma}, {"nu", s.eval.nu}, {"theta", s.eval.theta},
                     {"t", s.eval.t}, {"r", s.eval.r}, {"hjX", s.eval.hj_x}};
  j["simulation"] = {{"seed", s.sim.seed}, {"replicates", s.sim.replicates}, {"nGrid", s.sim.n_grid},
                     {"truncate", s.sim.truncate}};
  j["battery"] = {{"r", s.battery.r}, {"p", s.battery.p}};
  j["checks"] = s.checks;
  j["expect"] = s.expect;
  return j;
}

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << body;
}

}  // namespace

Stage stage_of(const std::string& check) {
  if (check == "condition-a" || check == "growth") return Stage::Sequences;
  if (check == "condition-i" || check == "weighted-series" || check == "nagaev" || check == "hj" ||
      check == "lemma-sp")
    return Stage::Simulation;
  return Stage::Analytic;
}

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const SeriesVerdict& v) {
  json j;
  j["verdict"] = to_string(v.verdict);
  j["partialSum"] = v.partial_sum;
  j["tailBound"] = v.tail_bound ? json(*v.tail_bound) : json(nullptr);
  j["lowerBoundRate"] = v.lower_bound_rate ? json(*v.lower_bound_rate) : json(nullptr);
  if (v.lower_bound_rate) j["lowerBoundConstant"] = v.lower_bound_constant;
  if (v.rate_exponent) j["rateExponent"] = *v.rate_exponent;
  j["horizon"] = v.horizon;
  j["method"] = v.method;
  return j;
}

json counterexample_json(const CounterexampleDist& ce) {
  json lv = json::array();
  for (const auto& l : ce.levels)
    lv.push_back({{"m", l.m}, {"logK", l.lambda}, {"root", l.root}, {"logAtom", l.atom.log()},
                  {"logProb", l.prob.log()}, {"lBoundActive", l.l_bound_active}});
  return json{{"M", ce.M()}, {"levels", lv}, {"zeroMass", ce.zero_mass}, {"totalMass", ce.total_mass.value()}};
}

RunResult run_scenario(Scenario s, const RunOptions& opt) {
  if (opt.seed) s.sim.seed = *opt.seed;
  if (opt.horizon) {
    if (*opt.horizon < 100) throw ScenarioError("--horizon", "must be >= 100", 0);
    s.eval.horizon = *opt.horizon;
  }
  if (opt.levels) {
    if (*opt.levels < 1 || *opt.levels > 8) throw ScenarioError("--levels", "must be in [1, 8]", 0);
    s.dist.levels = *opt.levels;
  }
  if (opt.workers < 1) throw ScenarioError("--workers", "must be >= 1", 0);
  s.sim.workers = 1;  // execution detail, kept out of the echo and digest
  const std::string echo_ini = to_ini(s);

  DistModel x = s.dist.build();
  WeightSequence tau = s.weights.weights();
  NormingSequence a = s.norming.norming();
  SimConfig cfg = s.sim;
  cfg.workers = opt.workers;
  cfg.eps_grid = s.eval.eps;
  Ctx c{s, x, tau, a, cfg, s.eval.horizon};

  using Fn = std::function<SectionResult()>;
  const std::vector<std::pair<std::string, Fn>> order{
      {"condition-a", [&] { return run_condition_a(c); }},
      {"growth", [&] { return run_growth(c); }},
      {"ii", [&] { return run_ii(c); }},
      {"iii", [&] { return run_iii(c); }},
      {"cor-sp", [&] { return run_cor_sp(c); }},
      {"sp-weak", [&] { return run_sp_weak(c); }},
      {"baum-katz", [&] { return run_baum_katz(c); }},
      {"counterexample", [&] { return run_counterexample(c, s.dist.levels); }},
      {"elementary", [&] { return run_elementary(c); }},
      {"klesov", [&] { return run_klesov(c); }},
      {"condition-i", [&] { return run_condition_i(c); }},
      {"weighted-series", [&] { return run_weighted_series(c); }},
      {"nagaev", [&] { return run_nagaev(c); }},
      {"hj", [&] { return run_hj(c); }},
      {"lemma-sp", [&] { return run_lemma_sp(c); }},
  };

  RunResult out;
  const std::string started = iso_now();
  bool errored = false, clean = true;
  for (const auto& [name, fn] : order) {
    if (std::find(s.checks.begin(), s.checks.end(), name) == s.checks.end()) continue;
    if (!opt.stages.empty() && !opt.stages.count(stage_of(name))) continue;
    auto t0 = std::chrono::steady_clock::now();
    SectionResult sec;
    try {
      sec = fn();
    } catch (const std::exception& e) {
      sec = SectionResult{name, "", "error", {}, {{"error", e.what()}}, {}, 0};
      errored = true;
    }
    sec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (auto it = s.expect.find(name); it != s.expect.end()) sec.expected = it->second;
    bool ok = sec.expected ? sec.verdict == *sec.expected : (sec.verdict == "holds" || sec.verdict == "fails");
    clean = clean && ok;
    out.sections.push_back(std::move(sec));
  }
  out.exit_code = errored ? 3 : clean ? 0 : 1;

  json rep;
  rep["tool"] = "hrelab";
  rep["scenario"] = scenario_json(s);
  rep["provenance"] = {{"seed", s.sim.seed}, {"version", kToolVersion}, {"scenarioDigest", digest(echo_ini)},
                       {"timestamps", "run_info.json"}};
  json secs = json::array(), summary = json::array();
  for (const auto& sec : out.sections) {
    json j;
    j["check"] = sec.check;
    j["condition"] = sec.condition;
    j["verdict"] = sec.verdict;
    j["expected"] = sec.expected ? json(*sec.expected) : json(nullptr);
    j["data"] = sec.data;
    secs.push_back(j);
    bool match = sec.expected ? sec.verdict == *sec.expected : sec.verdict == "holds" || sec.verdict == "fails";
    summary.push_back({{"check", sec.check}, {"verdict", sec.verdict}, {"expected", j["expected"]},
                       {"status", match ? "ok" : "mismatch"}});
  }
  rep["sections"] = secs;
  rep["summary"] = summary;
  rep["exitCode"] = out.exit_code;
  out.report = rep;

  if (!opt.out_dir.empty()) {
    std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", rep.dump(2) + "\n");
    for (const auto& sec : out.sections)
      for (const auto& t : sec.csv) {
        std::string body;
        for (size_t i = 0; i < t.header.size(); ++i) body += (i ? "," : "") + t.header[i];
        body += "\n";
        for (const auto& row : t.rows) {
          for (size_t i = 0; i < row.size(); ++i) body += (i ? "," : "") + row[i];
          body += "\n";
        }
        write_file(dir / t.file, body);
      }
    json info;
    info["startedAt"] = started;
    info["finishedAt"] = iso_now();
    info["workers"] = opt.workers;
    json secs_t = json::object();
    for (const auto& sec : out.sections) secs_t[sec.check] = sec.seconds;
    info["sectionSeconds"] = secs_t;
    write_file(dir / "run_info.json", info.dump(2) + "\n");
  }
  return out;
}

}  // namespace hre
