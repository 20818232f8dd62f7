// jurisprob: command-line front end for the judgment-probability library.
//
// Exit status: 0 success (every check passes for `reproduce`), 1 a failed
// check or an infeasible fit, 2 bad input.

#include "jurisprob/asymptotics.hpp"
#include "jurisprob/causes_testimony.hpp"
#include "jurisprob/common.hpp"
#include "jurisprob/data.hpp"
#include "jurisprob/elections.hpp"
#include "jurisprob/estimation.hpp"
#include "jurisprob/exact_kernels.hpp"
#include "jurisprob/jury_model.hpp"
#include "jurisprob/reproduce.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace jurisprob;
using nlohmann::ordered_json;

namespace {

struct Globals {
  bool json = false;
  int precision = 4;
  std::string data_path;
};

Globals g;

std::vector<data::CourtRecord> records() {
  return g.data_path.empty() ? data::embedded_records() : data::load_records(g.data_path);
}

double real(const std::string& s) { return parse_real(s); }

std::vector<double> reals(const std::vector<std::string>& v) {
  std::vector<double> out;
  for (const auto& s : v) out.push_back(real(s));
  return out;
}

// Plain output: one "key value" line per leaf, nested keys joined by dots.
void print_plain(const ordered_json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      print_plain(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (j.is_array() && !j.empty() && j.front().is_structured()) {
    for (std::size_t k = 0; k < j.size(); ++k) print_plain(j[k], prefix + "[" + std::to_string(k) + "]");
  } else if (j.is_array()) {
    std::string line;
    for (const auto& x : j) {
      if (!line.empty()) line += ' ';
      if (x.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", g.precision, x.get<double>());
        line += buf;
      } else {
        line += x.is_string() ? x.get<std::string>() : x.dump();
      }
    }
    std::printf("%-28s %s\n", prefix.c_str(), line.c_str());
  } else if (j.is_number_float()) {
    std::printf("%-28s %.*f\n", prefix.c_str(), g.precision, j.get<double>());
  } else if (j.is_string()) {
    std::printf("%-28s %s\n", prefix.c_str(), j.get<std::string>().c_str());
  } else {
    std::printf("%-28s %s\n", prefix.c_str(), j.dump().c_str());
  }
}

void emit(const ordered_json& j) {
  if (g.json) std::cout << j.dump(2) << '\n';
  else print_plain(j);
}

ordered_json interval_json(const IntervalResult& r) {
  return {{"center", r.center}, {"half_width", r.half_width}, {"lower", r.lower()}, {"upper", r.upper()},
          {"probability", r.probability}};
}

ordered_json fit_json(const estimate::FitResult& f) {
  return {{"k", f.k}, {"t", f.t}, {"u", f.u}, {"residual", f.residual}};
}

// --- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string c, gamma, b_rate;
  unsigned mu = 0, a = 0, b = 0, n = 12, i = 5;
  std::string selection;
  std::string apply_c;
  unsigned apply_i = 4;
};

int run_estimate(const EstimateArgs& e) {
  double c = 0.0, gamma = 0.0;
  if (!e.selection.empty()) {
    const auto r = data::rates(records(), data::selection(e.selection));
    c = r.c();
    if (!e.b_rate.empty()) gamma = real(e.b_rate) / choose<double>(e.n, e.i);
    else if (r.b) gamma = *r.b_rate() / choose<double>(e.n, e.i);
    else throw domain_error("selection '" + e.selection + "' has no least-majority counts; pass --b-rate");
  } else if (e.mu > 0) {
    const estimate::ObservedRates obs{e.mu, e.a, e.b, e.n, e.i};
    c = obs.c();
    gamma = obs.gamma();
  } else {
    if (e.c.empty()) throw domain_error("estimate needs --c, --mu/--a/--b or --selection");
    c = real(e.c);
    if (!e.gamma.empty()) gamma = real(e.gamma);
    else if (!e.b_rate.empty()) gamma = real(e.b_rate) / choose<double>(e.n, e.i);
    else throw domain_error("estimate needs --gamma or --b-rate");
  }
  const auto iv = estimate::feasible_t(gamma, e.n, e.i);
  const auto fit = estimate::fit_k_t(c, gamma, e.n, e.i);
  ordered_json out{{"c", c}, {"gamma", gamma}, {"feasible_t", {iv.lo, iv.hi}}, {"fit", fit_json(fit)},
                   {"complement", fit_json(estimate::complement(fit))}};
  if (!e.apply_c.empty()) {
    const auto d = estimate::derived_probs(fit, real(e.apply_c), {e.n, e.apply_i});
    out["derived"] = {{"P", d.P}, {"Pi", d.Pi}, {"D", d.D}, {"Delta", d.Delta}, {"p_min", d.p_min}};
  }
  emit(out);
  return 0;
}

// --- jury -----------------------------------------------------------------

template <class T>
ordered_json verdict_json(const jury::VerdictProbs<T>& v, bool exact) {
  auto val = [&](const T& x) -> ordered_json {
    if constexpr (is_rational_v<T>) {
      if (exact) return ordered_json{{"exact", x.str()}, {"value", to_double(x)}};
    }
    (void)exact;
    return to_double(x);
  };
  ordered_json out{{"gamma", val(v.gamma)}, {"delta", val(v.delta)}, {"w", val(v.w)}, {"U", val(v.U)},
                   {"V", val(v.V)},         {"c", val(v.c)},         {"d", val(v.d)}, {"p", val(v.p)},
                   {"q", val(v.q)},         {"P", val(v.P)},         {"Q", val(v.Q)}, {"D", val(v.D)},
                   {"Delta", val(v.Delta)}};
  if (v.H) out["H"] = val(*v.H);
  return out;
}

struct JuryArgs {
  std::string k, u;
  unsigned n = 12, i = 0;
  bool exact = false;
};

int run_jury(const JuryArgs& a) {
  jury::VerdictTally tally{a.n, a.i};
  ordered_json out;
  if (a.exact) {
    const jury::JuryParams<Rational> p{parse_rational(a.k), parse_rational(a.u)};
    out = verdict_json(jury::verdict_probs(p, tally), true);
  } else {
    const jury::JuryParams<double> p{real(a.k), real(a.u)};
    out = verdict_json(jury::verdict_probs(p, tally), false);
    const auto un = jury::unanimity_stats(p, a.n);
    out["unanimity"] = {{"gamma0", un.gamma0}, {"delta0", un.delta0}, {"cases_for_even_bet", un.cases_for_even_bet}};
  }
  emit(out);
  return 0;
}

// --- witness --------------------------------------------------------------

struct WitnessArgs {
  std::string q;
  std::vector<std::string> honesty;
  std::string contradict;
};

int run_witness(const WitnessArgs& a) {
  if (a.honesty.empty()) throw domain_error("witness needs at least one --p");
  const Rational q = parse_rational(a.q);
  std::vector<Rational> h;
  for (const auto& s : a.honesty) h.push_back(parse_rational(s));
  ordered_json out;
  const Rational chained = causes::witness_chain(q, h);
  out["posterior"] = {{"exact", chained.str()}, {"value", to_double(chained)}};
  if (!a.contradict.empty()) {
    if (h.size() != 1) throw domain_error("--contradict takes a single --p");
    const Rational r1 = causes::contradiction(q, h.front(), parse_rational(a.contradict));
    out["falsity_after_contradiction"] = {{"exact", r1.str()}, {"value", to_double(r1)}};
  }
  emit(out);
  return 0;
}

// --- approx ---------------------------------------------------------------

struct ApproxArgs {
  unsigned m = 0, n = 0;
  std::string p;
  std::string u;
  std::string tail_u;
};

int run_approx(const ApproxArgs& a) {
  ordered_json out;
  if (!a.tail_u.empty()) {
    const double u = real(a.tail_u);
    out["gauss_tail"] = asym::gauss_tail(u);
    out["within"] = 1.0 - 2.0 * asym::gauss_tail(u);
  }
  if (a.m + a.n > 0) {
    if (a.p.empty()) throw domain_error("approx needs --p with --m/--n");
    const double p = real(a.p);
    const double ex = exact::repetition_tail<double>(a.m, a.n, p);
    const double as = asym::binomial_tail_asym({a.m, a.n, p});
    out["tail"] = {{"exact", ex}, {"asymptotic", as}, {"error", as - ex}};
    if (!a.u.empty()) out["frequency"] = interval_json(asym::freq_interval(a.m + a.n, p, real(a.u)));
  }
  if (out.empty()) throw domain_error("approx needs --tail-u or --m/--n/--p");
  emit(out);
  return 0;
}

// --- elections ------------------------------------------------------------

struct ElectionArgs {
  unsigned long a = 0, b = 0;
  std::vector<std::string> colleges;  // COUNTxSIZE
  std::string u = "2";
  unsigned minority_n = 15;
};

int run_elections(const ElectionArgs& e) {
  elections::ElectionScenario scn{{}, e.a, e.b};
  for (const auto& s : e.colleges) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw domain_error("college group '" + s + "' must read COUNTxSIZE");
    try {
      scn.colleges.push_back({static_cast<unsigned>(std::stoul(s.substr(0, x))), std::stoul(s.substr(x + 1))});
    } catch (const std::logic_error&) {
      throw domain_error("college group '" + s + "' must read COUNTxSIZE");
    }
  }
  const auto rep = elections::scenario_report(scn, real(e.u), e.minority_n);
  ordered_json groups = ordered_json::array();
  for (const auto& gc : rep.groups)
    groups.push_back({{"count", gc.group.count}, {"size", gc.group.size}, {"gamma", gc.chance.gamma},
                      {"s", gc.chance.s}, {"sigma", gc.chance.sigma}, {"effective", gc.effective}});
  emit({{"groups", groups}, {"r", rep.r}, {"seats", interval_json(rep.seats)},
        {"minority_at_most", {{"n", rep.minority_n}, {"probability", rep.minority_at_most}}}});
  return 0;
}

// --- stability ------------------------------------------------------------

struct StabilityArgs {
  std::string jurisdiction = "france";
  std::string category = "all";
  int from1 = 1825, to1 = 1827, from2 = 1828, to2 = 1830;
  std::string alpha = "1.2";
};

int run_stability(const StabilityArgs& s) {
  const auto cat = data::parse_category(s.category);
  const data::Filter f1{s.jurisdiction, cat, s.from1, s.to1}, f2{s.jurisdiction, cat, s.from2, s.to2};
  const auto rep = data::stability_report(records(), f1, f2, real(s.alpha));
  emit({{"first", {{"mu", rep.first.mu}, {"a", rep.first.a}, {"rate", rep.rate_first}}},
        {"second", {{"mu", rep.second.mu}, {"a", rep.second.a}, {"rate", rep.rate_second}}},
        {"difference", rep.difference},
        {"limit", rep.limits.half_width},
        {"probability", rep.limits.probability},
        {"ratio", rep.ratio},
        {"verdict", data::to_string(rep.flag)}});
  return 0;
}

// --- buffon ---------------------------------------------------------------

int run_buffon(const std::vector<unsigned>& counts) {
  const auto fit = data::buffon_fit(counts.empty() ? data::embedded_buffon() : data::BuffonCounts{counts});
  emit({{"m", fit.m}, {"mu", fit.mu}, {"p", fit.p}, {"ladder", fit.ladder}, {"ladder_mean", fit.ladder_mean},
        {"predicted", fit.predicted}});
  return 0;
}

// --- lln-demo -------------------------------------------------------------

struct LlnArgs {
  std::vector<std::string> chances{"0.2", "0.5", "0.9"};
  std::vector<std::string> weights{"1", "1", "1"};
  unsigned long trials = 1000000;
  std::uint64_t seed = 1837;
};

// Each trial first draws a cause by weight, then the event with that
// cause's chance. The frequency settles on the weighted mean chance.
int run_lln(const LlnArgs& a) {
  const auto p = reals(a.chances);
  const auto w = reals(a.weights);
  if (p.empty() || p.size() != w.size()) throw domain_error("lln-demo needs one weight per chance");
  for (double x : p) require_probability(x, "chance");
  double wsum = 0.0, mean = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(w[j] >= 0.0)) throw domain_error("weights must be non-negative");
    wsum += w[j];
    mean += w[j] * p[j];
  }
  if (!(wsum > 0.0)) throw domain_error("weights must not all vanish");
  mean /= wsum;
  std::mt19937_64 rng(a.seed);
  std::discrete_distribution<std::size_t> cause(w.begin(), w.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ordered_json rows = ordered_json::array();
  unsigned long hits = 0, next = 10;
  for (unsigned long t = 1; t <= a.trials; ++t) {
    if (unit(rng) < p[cause(rng)]) ++hits;
    if (t == next || t == a.trials) {
      const double f = static_cast<double>(hits) / t;
      rows.push_back({{"trials", t}, {"frequency", f}, {"deviation", f - mean}});
      next *= 10;
    }
  }
  emit({{"seed", a.seed}, {"mean_chance", mean}, {"checkpoints", rows}});
  return 0;
}

// --- reproduce ------------------------------------------------------------

int run_reproduce(bool failures_only) {
  const auto rows = repro::reproduce();
  const bool ok = repro::all_pass(rows);
  if (g.json) {
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
      if (failures_only && r.pass) continue;
      out.push_back({{"id", r.id}, {"citation", r.citation}, {"paper_value", r.printed_value},
                     {"computed", r.computed}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::size_t passed = 0;
    std::printf("%-4s %-34s %16s %16s %10s  %s\n", "crit", "id", "printed", "computed", "tolerance", "result");
    for (const auto& r : rows) {
      passed += r.pass;
      if (failures_only && r.pass) continue;
      std::printf("%-4d %-34s %16.*f %16.*f %10.2g  %s  (%s)\n", r.criterion, r.id.c_str(), g.precision,
                  r.printed_value, g.precision, r.computed, r.tolerance, r.pass ? "pass" : "FAIL", r.citation.c_str());
    }
    std::printf("%zu of %zu checks pass\n", passed, rows.size());
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Judgment probabilities: jury fits, testimony, elections, asymptotics"};
  app.require_subcommand(1);
  app.add_flag("--json", g.json, "machine-readable output, full precision");
  app.add_option("--precision", g.precision, "decimals in plain output")->check(CLI::Range(0, 17));
  app.add_option("--data", g.data_path, "court-record CSV replacing the embedded tables")->check(CLI::ExistingFile);

  EstimateArgs est;
  auto* se = app.add_subcommand("estimate", "fit k and u from conviction rates");
  se->add_option("--c", est.c, "conviction rate");
  se->add_option("--gamma", est.gamma, "reduced least-majority rate b/(N_i mu)");
  se->add_option("--b-rate", est.b_rate, "least-majority conviction rate b/mu");
  se->add_option("--mu", est.mu, "accused");
  se->add_option("--a", est.a, "convicted");
  se->add_option("--b", est.b, "convicted by the least majority");
  se->add_option("--n", est.n, "panel size");
  se->add_option("--i", est.i, "least-majority dissent count");
  se->add_option("--selection", est.selection, "named embedded selection");
  se->add_option("--apply-c", est.apply_c, "conviction rate under a second rule, for derived chances");
  se->add_option("--apply-i", est.apply_i, "dissent allowed under the second rule");

  JuryArgs ja;
  auto* sj = app.add_subcommand("jury", "verdict probabilities for given k and u");
  sj->add_option("--k", ja.k, "prior chance of guilt")->required();
  sj->add_option("--u", ja.u, "juror reliability")->required();
  sj->add_option("--n", ja.n, "panel size");
  sj->add_option("--i", ja.i, "dissenting votes");
  sj->add_flag("--exact", ja.exact, "exact rational arithmetic");

  WitnessArgs wa;
  auto* sw = app.add_subcommand("witness", "testimony of one or more witnesses");
  sw->add_option("--q", wa.q, "prior chance of the fact")->required();
  sw->add_option("--p", wa.honesty, "truthfulness of each witness in the chain")->expected(1, -1);
  sw->add_option("--contradict", wa.contradict, "truthfulness of a contradicting witness");

  ApproxArgs aa;
  auto* sa = app.add_subcommand("approx", "Gaussian tails and large-sample binomial approximations");
  sa->add_option("--m", aa.m, "successes");
  sa->add_option("--n", aa.n, "failures");
  sa->add_option("--p", aa.p, "chance of success");
  sa->add_option("--u", aa.u, "interval multiplier for the frequency interval");
  sa->add_option("--tail-u", aa.tail_u, "argument of the Gaussian tail");

  ElectionArgs ea;
  auto* sl = app.add_subcommand("elections", "college-by-college majority model");
  sl->add_option("--a", ea.a, "voters of the weaker party")->required();
  sl->add_option("--b", ea.b, "voters of the stronger party")->required();
  sl->add_option("--colleges", ea.colleges, "groups as COUNTxSIZE")->required()->expected(1, -1);
  sl->add_option("--u", ea.u, "interval multiplier for the seat count");
  sl->add_option("--minority-n", ea.minority_n, "colleges for the minority tail");

  StabilityArgs sa2;
  auto* ss = app.add_subcommand("stability", "compare conviction rates of two year ranges");
  ss->add_option("--jurisdiction", sa2.jurisdiction);
  ss->add_option("--category", sa2.category, "person, property or all");
  ss->add_option("--first-from", sa2.from1);
  ss->add_option("--first-to", sa2.to1);
  ss->add_option("--second-from", sa2.from2);
  ss->add_option("--second-to", sa2.to2);
  ss->add_option("--alpha", sa2.alpha, "limit multiplier");

  std::vector<unsigned> counts;
  auto* sb = app.add_subcommand("buffon", "fit the coin-tossing series");
  sb->add_option("--counts", counts, "a_1 a_2 ... (embedded counts when absent)");

  LlnArgs la;
  auto* sd = app.add_subcommand("lln-demo", "seeded simulation of frequencies under varying causes");
  sd->add_option("--chances", la.chances);
  sd->add_option("--weights", la.weights);
  sd->add_option("--trials", la.trials);
  sd->add_option("--seed", la.seed);

  bool failures_only = false;
  auto* sr = app.add_subcommand("reproduce", "check every published number");
  sr->add_flag("--failures", failures_only, "list failing checks only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*se) return run_estimate(est);
    if (*sj) return run_jury(ja);
    if (*sw) return run_witness(wa);
    if (*sa) return run_approx(aa);
    if (*sl) return run_elections(ea);
    if (*ss) return run_stability(sa2);
    if (*sb) return run_buffon(counts);
    if (*sd) return run_lln(la);
    if (*sr) return run_reproduce(failures_only);
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
