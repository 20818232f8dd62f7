#pragma once

// The published-number checks, evaluated against embedded data.

#include "asymptotics.hpp"
#include "causes_testimony.hpp"
#include "common.hpp"
#include "data.hpp"
#include "elections.hpp"
#include "estimation.hpp"
#include "exact_kernels.hpp"
#include "jury_model.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace jurisprob::repro {

enum class Mode {
  absolute,  // |computed - printed| <= tolerance
  relative,  // |computed - printed| <= tolerance |printed|
  exact,     // exact rational equality
  at_most,   // computed <= printed
  flag,      // boolean outcome matches
};

struct Check {
  int criterion = 0;        // acceptance criterion, 0 for supporting rows
  std::string id;
  std::string citation;     // where the printed value appears, in words
  std::string printed_text;  // value as printed
  std::string computed_text;
  double printed_value = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  Mode mode = Mode::absolute;
  bool pass = false;
};

inline std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

class Suite {
 public:
  void near(int crit, std::string id, std::string cite, double printed, double computed, double tol) {
    Check c{crit, std::move(id), std::move(cite), fmt(printed, 10), fmt(computed, 10), printed, computed, tol,
            Mode::absolute, std::fabs(computed - printed) <= tol};
    rows_.push_back(std::move(c));
  }
  void relative(int crit, std::string id, std::string cite, double printed, double computed, double tol) {
    Check c{crit, std::move(id), std::move(cite), fmt(printed, 17), fmt(computed, 17), printed, computed, tol,
            Mode::relative, std::fabs(computed - printed) <= tol * std::fabs(printed)};
    rows_.push_back(std::move(c));
  }
  void exact(int crit, std::string id, std::string cite, const Rational& printed, const Rational& computed) {
    Check c{crit, std::move(id), std::move(cite), printed.str(), computed.str(), to_double(printed),
            to_double(computed), 0.0, Mode::exact, printed == computed};
    rows_.push_back(std::move(c));
  }
  void at_most(int crit, std::string id, std::string cite, double bound, double computed) {
    Check c{crit, std::move(id), std::move(cite), "<= " + fmt(bound), fmt(computed), bound, computed, 0.0,
            Mode::at_most, computed <= bound};
    rows_.push_back(std::move(c));
  }
  void flag(int crit, std::string id, std::string cite, bool printed, bool computed) {
    Check c{crit, std::move(id), std::move(cite), printed ? "true" : "false", computed ? "true" : "false",
            printed ? 1.0 : 0.0, computed ? 1.0 : 0.0, 0.0, Mode::flag, printed == computed};
    rows_.push_back(std::move(c));
  }
  std::vector<Check> take() { return std::move(rows_); }

 private:
  std::vector<Check> rows_;
};

namespace detail {

inline estimate::FitResult printed_fit(double k, double t) { return {k, t, t / (1.0 + t), 0.0}; }

inline void jury_fits(Suite& s) {
  const char* person = "two-parameter jury fit, crimes against persons 1825-1830";
  const auto f1 = estimate::fit_k_t(0.4782, 0.0001453);
  s.near(1, "fit.person.k", person, 0.5354, f1.k, 0.0005);
  s.near(1, "fit.person.t", person, 2.112, f1.t, 0.003);
  s.at_most(1, "fit.person.residual", person, 0.0002, f1.residual);

  const char* prop = "two-parameter jury fit, crimes against property 1825-1830";
  const auto f2 = estimate::fit_k_t(0.6556, 0.00006604);
  s.near(2, "fit.property.k", prop, 0.6744, f2.k, 0.0005);
  s.near(2, "fit.property.t", prop, 3.4865, f2.t, 0.003);
  s.near(2, "fit.property.u", prop, 0.7771, f2.u, 0.0005);

  const char* all = "two-parameter jury fit, all accused in France 1825-1830";
  const auto f3 = estimate::fit_k_t(0.6094, 0.00008914);
  s.near(3, "fit.france.k", all, 0.6391, f3.k, 0.0005);
  s.near(3, "fit.france.u", all, 0.7494, f3.u, 0.0005);
  const char* seine = "two-parameter jury fit, Seine court 1825-1830";
  const auto f4 = estimate::fit_k_t(0.6509, 0.0655 / 792.0);
  s.near(3, "fit.seine.k", seine, 0.678, f4.k, 0.001);
  s.near(3, "fit.seine.u", seine, 0.7778, f4.u, 0.0005);
}

inline void derived(Suite& s) {
  const jury::VerdictTally rule{12, 4};
  const char* cite = "probabilities under the 8-of-12 rule of 1831, from the fitted constants";
  const auto dp = estimate::derived_probs(printed_fit(0.5354, 2.112), 0.3632, rule);
  s.near(4, "derived.person.P4", cite, 0.9811, dp.P, 0.0005);
  s.near(4, "derived.person.Pi4", cite, 0.7186, dp.Pi, 0.0005);
  s.near(4, "derived.person.D4", cite, 0.00689, dp.D, 0.0005);
  s.near(4, "derived.person.Delta4", cite, 0.1791, dp.Delta, 0.0005);
  const auto prop_fit = printed_fit(0.6744, 3.4865);
  const auto dq = estimate::derived_probs(prop_fit, 0.6034, rule);
  s.near(4, "derived.property.P4", cite, 0.9981, dq.P, 0.0005);
  s.near(4, "derived.property.Pi4", cite, 0.8199, dq.Pi, 0.0005);
  s.near(4, "derived.property.D4", cite, 0.0004, dq.D, 0.0005);
  s.near(4, "derived.property.Delta4", cite, 0.0721, dq.Delta, 0.0005);

  const char* cm = "correctness of a conviction by seven votes against five";
  s.near(5, "minimal.person.p5", cm, 0.8372, dp.p_min, 0.0005);
  s.near(5, "minimal.property.p5", cm, 0.9618, dq.p_min, 0.0005);
  s.near(5, "minimal.france.w5", cm, 0.9406, jury::correctness_odds(0.6391, 2.99, 2), 0.0005);
  const auto dc = estimate::derived_probs(estimate::complement(prop_fit), 0.6034, rule);
  s.near(5, "complement.property.P4", "the second root pair (1-k, 1/t) for property crimes", 0.000675,
         dc.P, 0.00005);
}

inline void courts(Suite& s) {
  const char* app = "royal courts confirming minimal-majority convictions";
  const auto a = estimate::appellate_confirm(0.9406, 1597.0 / 1911.0);
  s.near(6, "appellate.P2", app, 0.9916, a.P2, 0.0005);
  s.near(6, "appellate.t", app, 2.789, a.t, 0.02);
  const char* mil = "seven-judge military courts at t = 3";
  const auto m = estimate::seven_judge(2.0 / 3.0, 3.0);
  s.near(6, "military.k", mil, 0.8793, m.k, 0.0005);
  s.near(6, "military.P2", mil, 0.9976, m.P, 0.0005);
  const auto p = estimate::three_judge_feasibility(0.8563, 3.0);
  s.flag(6, "police.infeasible", "three-judge police courts at t = 3, k exceeds unity", true, !p.feasible);

  const char* eq = "civil courts, three equal judges, half the judgments unanimous";
  const double u = estimate::fit_u_from_split(0.5);
  const auto ce = estimate::civil_equal(u);
  s.near(7, "civil.u", eq, 0.7888, u, 0.0005);
  s.near(7, "civil.p", eq, 0.9815, ce.p, 0.0005);
  s.near(7, "civil.q", eq, 0.7885, ce.q, 0.0005);
  s.near(7, "civil.r", eq, 0.8850, ce.r, 0.0005);

  const auto recs = data::embedded_records();
  const auto civil = data::rates(recs, data::selection("civil_1831_1833"));
  const char* fit = "civil appeals 1831-1833, common judge reliability";
  const auto cf = estimate::fit_civil_t(civil.c());
  s.near(7, "civil.fit.t", fit, 2.157, cf.t, 0.005);
  s.near(7, "civil.fit.u", fit, 0.6832, cf.u, 0.001);
  s.near(7, "civil.fit.r", fit, 0.7626, cf.r, 0.001);
  const char* ap = "civil appeals 1831-1833, decomposition of judgments";
  const auto av = estimate::civil_appeal_observed(cf.r, civil.c());
  s.near(7, "civil.appeal.P", ap, 0.9479, av.P, 0.001);
  s.near(7, "civil.appeal.P2", ap, 0.6409, av.P2, 0.001);
  s.near(7, "civil.appeal.Gamma", ap, 0.7466, av.Gamma, 0.001);
  const double parts[4] = {0.6495, 0.2022, 0.1131, 0.0352};
  for (int j = 0; j < 4; ++j) s.near(7, "civil.appeal.part" + std::to_string(j + 1), ap, parts[j], av.parts[j], 0.001);
}

inline void jury_forms(Suite& s) {
  const char* lap = "error of a jury conviction under the uniform-reliability hypothesis, twelve jurors";
  const unsigned nums[6] = {1, 14, 92, 378, 1093, 2380};
  for (unsigned i = 0; i < 6; ++i)
    s.exact(8, "laplace.error.i" + std::to_string(i), lap, Rational(nums[i], 8192), jury::laplace_error(12, i));
  s.near(8, "laplace.lambda.i5", "chance the reliability lies below 3/4 after a seven-to-five conviction", 0.915,
         jury::laplace_interval(12, 5, 0.25), 0.001);

  const char* p5 = "guilt of a conviction by at least seven to five with k = 1/2, u = 3/4";
  const auto vp = jury::verdict_probs<Rational>({Rational(1, 2), Rational(3, 4)}, {12, 5});
  const auto vd = jury::verdict_probs<double>({0.5, 0.75}, {12, 5});
  s.near(9, "jury.P5.float_vs_rational", p5, to_double(vp.P), vd.P, 1e-6);
  const Rational U5 = Rational(7254) * 2187, V5 = 239122;
  s.exact(9, "jury.P5.printed_U_V", p5, U5 / (U5 + V5), vp.P);
  s.near(0, "jury.P5.almost_403_409", p5, 403.0 / 409.0, vd.P, 0.0005);
  const auto tie = jury::verdict_probs<Rational>({Rational(1, 2), Rational(1, 2)}, {12, 5});
  s.exact(9, "jury.tie.H", "tie among twelve jurors of reliability 1/2", Rational(231, 1024), *tie.H);
  const char* un = "unanimous verdicts with the aggregate French constants";
  const auto us = jury::unanimity_stats({0.6391, 0.7494}, 12);
  s.near(9, "unanimity.gamma0", un, 0.0201, us.gamma0, 0.00005);
  s.near(9, "unanimity.delta0", un, 0.0113, us.delta0, 0.00005);
  s.near(9, "unanimity.cases", un, 21.73, us.cases_for_even_bet, 0.02);
}

inline void buffon(Suite& s) {
  const char* ci = "Buffon's 4040 tosses, interval for the chance of heads at u = 2";
  const auto iv = asym::chance_interval(2048, 1992, 2.0);
  s.near(10, "buffon.R", ci, 0.99555, iv.probability, 0.0005);
  s.near(10, "buffon.center", ci, 0.50693, iv.center, 0.0005);
  s.near(10, "buffon.half_width", ci, 0.02225, iv.half_width, 0.0005);
  s.near(10, "buffon.lambda", "chance that the chance of heads exceeds one half", 0.81043,
         asym::chance_exceeds(2048, 1992, 0.5).lambda, 0.0005);
  const char* ts = "the two halves of Buffon's experiment compared";
  s.near(10, "buffon.two_sample.0.02", ts, 0.56589, asym::two_sample(987, 1992, 1061, 2048, 0.02).lambda, 0.0005);
  s.near(10, "buffon.two_sample.0.025", ts, 0.43861, asym::two_sample(987, 1992, 1061, 2048, 0.025).lambda, 0.0005);
  const char* pr = "tails predicted in each half from the whole experiment";
  const auto p1 = asym::predict_interval(2048, 1992, 2048, 2.0);
  s.near(10, "buffon.predict.first.center", pr, 1001, p1.center, 0.5);
  s.near(10, "buffon.predict.first.half_width", pr, 79, p1.half_width, 0.5);
  s.near(10, "buffon.predict.first.w", pr, 0.99558, p1.probability, 0.0005);
  const auto p2 = asym::predict_interval(2048, 1992, 1992, 2.0);
  s.near(10, "buffon.predict.second.center", pr, 982, p2.center, 0.5);
  s.near(10, "buffon.predict.second.half_width", pr, 77, p2.half_width, 0.5);
  s.near(10, "buffon.predict.second.w", pr, 0.99560, p2.probability, 0.0005);
}

inline void constants(Suite& s) {
  s.relative(11, "kramp.tail3", "Kramp's table, integral of exp(-t^2) from 3 to infinity", 0.00001957729,
             std::sqrt(asym::pi) * asym::gauss_tail(3.0), 1e-6);
  s.near(11, "even_money", "interval of even probability, 1 - 2Q(a) = 1/2", 0.4765, asym::even_money_constant(),
         0.0005);
  s.near(11, "central_term.mu100", "chance of exactly 50 heads in 100 tosses", 0.07979,
         asym::central_term(100, 0.5, 0.0), 0.0005);

  const double d = 4.0 * DBL_EPSILON;
  s.relative(12, "uniform.planets", "inclinations of ten planets, all below the ecliptic bound", 1.0 / 3628800.0,
             asym::uniform_sum_between(10, 0.0, 1.0), d);
  s.relative(12, "uniform.eccentricities", "sum of eleven eccentricities below 1.25",
             (std::pow(1.25, 11) - std::pow(0.25, 11)) / 39916800.0, asym::uniform_sum_between(11, 0.0, 1.25), d);
  const auto cc = asym::uniform_constants(0.0, 90.0);
  const double u = 1.92;
  const auto com = asym::clt_mean_interval(138, cc.k, cc.h, u);
  const char* cm = "mean inclination of 138 comets";
  s.near(12, "comets.P", cm, 0.99338, com.probability, 0.0005);
  s.near(12, "comets.center", cm, 45.0, com.center / 138.0, 0.5);
  s.near(12, "comets.half_width", cm, 6.0, com.half_width / 138.0, 0.5);
  const auto dc = exact::dice_sum<double>(1, 6);
  std::vector<double> faces;
  for (long long f : dc.support) faces.push_back(static_cast<double>(f));
  const auto dk = asym::discrete_constants(faces);
  const auto dice = asym::clt_mean_interval(100, dk.k, dk.h, asym::even_money_constant());
  const char* dm = "sum of 100 dice at even probability";
  s.near(12, "dice.center", dm, 350.0, dice.center, 0.05);
  s.near(12, "dice.half_width", dm, 11.5, dice.half_width, 0.05);
  s.near(12, "dice.P", dm, 0.5, dice.probability, 0.0005);
}

inline void elections(Suite& s) {
  const char* el = "electoral colleges of France, random assignment of 200,000 voters";
  const auto e1 = elections::college_win_chance(94835, 104830, 435);
  s.near(13, "election.odd.s", el, 0.85426, e1.s, 0.001);
  const auto e2 = elections::college_win_chance(95064, 105060, 436);
  s.near(13, "election.even.s", el, 0.84279, e2.s, 0.001);
  s.near(13, "election.even.sigma", el, 0.02218, e2.sigma, 0.001);
  const auto e3 = elections::college_win_chance(89835, 109830, 435);
  s.near(13, "election.wide.s", "parties differing by a tenth of the voters", 0.98176, e3.s, 0.001);
  const elections::ElectionScenario split{{{153, 654}, {306, 327}}, 95062, 105062};
  const auto rep = elections::scenario_report(split, 2.0);
  s.near(13, "election.split.r", "colleges of unequal size, mean chance of the stronger party", 0.86049, rep.r,
         0.001);
  const auto seats = elections::seat_interval(459, e1.s, 2.0);
  const char* se = "deputies of the stronger party among 459";
  s.near(13, "election.seats.R", se, 0.99682, seats.probability, 0.001);
  s.near(13, "election.seats.center", se, 392, seats.center, 0.5);
  s.near(13, "election.seats.half_width", se, 21, seats.half_width, 0.5);
  s.near(13, "election.minority.P", "minority carrying at most 15 colleges", 0.98713,
         elections::minority_tail(459, 0.01824, 15), 0.001);
}

inline void kernels(Suite& s) {
  s.exact(14, "points.112_243", "interrupted game, A lacks 4 points and B lacks 2, A twice as skilful",
          Rational(112, 243), exact::problem_of_points(Rational(2, 3), 4, 2).alpha);
  s.exact(14, "cards.16_red", "16 red cards drawn from a pack of 16 red and 16 black", Rational(1, 601080390),
          exact::hypergeometric<Rational>({16, 16}, 16, 0));
  const auto lot = exact::lottery_odds(90, 5, 3);
  const char* lc = "French lottery, a bet on three numbers";
  s.near(14, "lottery.multiple", lc, 11748, lot.fair_multiple, 0.01);
  s.near(14, "lottery.even_bet", lc, 8143.13, lot.even_bet_approx, 0.01);
  s.exact(14, "dice.M10", "three dice showing a sum of 10", Rational(27, 216), exact::dice_sum<Rational>(3, 6).at(10));
}

// Rows that hold the embedded data to the published aggregates.
inline void datasets(Suite& s) {
  const auto recs = data::embedded_records();
  auto sel = [&](const char* n) { return data::rates(recs, data::selection(n)); };
  const auto all = sel("france_1825_1830");
  s.near(0, "data.france.mu", "accused before French assize courts 1825-1830", 42300, all.mu, 0);
  s.near(0, "data.france.a", "convicted 1825-1830", 25777, all.a, 0);
  s.near(0, "data.france.c", "conviction rate 1825-1830", 0.6094, all.c(), 0.00005);
  s.near(0, "data.person.c", "conviction rate, crimes against persons 1825-1830", 0.4782,
         sel("france_person_1825_1830").c(), 0.00005);
  s.near(0, "data.property.c", "conviction rate, crimes against property 1825-1830", 0.6556,
         sel("france_property_1825_1830").c(), 0.00005);
  s.near(0, "data.seine.c", "conviction rate, Seine court 1825-1830", 0.6509, sel("seine_1825_1830").c(), 0.00005);
  const auto civil = sel("civil_1831_1833");
  s.near(0, "data.civil.m", "civil judgments confirmed on appeal 1831-1833", 11747, civil.a, 0);
  s.near(0, "data.civil.mu", "civil appeals heard 1831-1833", 17157, civil.mu, 0);
  s.near(0, "data.minimal.difference", "least-majority rate by difference of the 1825-1830 and 1831 rates", 0.0706,
         data::min_majority_by_difference(recs, data::selection("france_1825_1830"), data::selection("france_1831")),
         0.00005);
  const auto tallies = data::embedded_case_tallies();
  s.near(0, "data.minimal.cases", "least-majority rate from case counts 1826-1830", 0.0711,
         data::case_tally(tallies, "france").rate(), 0.00005);
  s.near(0, "data.seine.minimal.cases", "Seine least-majority rate from case counts", 0.0655,
         data::case_tally(tallies, "seine").rate(), 0.00005);

  const auto st = data::stability_report(recs, {"france", data::Category::all, 1825, 1827},
                                         {"france", data::Category::all, 1828, 1830}, 1.2);
  const char* sc = "conviction rate 1825-1827 against 1828-1830";
  s.near(0, "stability.split.limit", sc, 0.00805, st.limits.half_width, 0.00005);
  s.near(0, "stability.split.difference", sc, 0.0082, st.difference, 0.00005);
  s.near(0, "stability.split.P", sc, 0.9103, st.limits.probability, 0.00005);
  s.flag(0, "stability.split.borderline", sc, true, st.flag == data::StabilityFlag::borderline);
  const auto ss = data::stability_report(recs, {"seine", data::Category::all, 1825, 1829},
                                         {"seine", data::Category::all, 1830, 1830}, 2.0);
  const char* sn = "Seine conviction rate 1825-1829 against 1830";
  s.near(0, "stability.seine.limit", sn, 0.05314, ss.limits.half_width, 0.00005);
  s.near(0, "stability.seine.difference", sn, 0.0585, ss.difference, 0.00005);
  s.flag(0, "stability.seine.exceeds", sn, true, ss.flag == data::StabilityFlag::exceeds);
  const auto sa = asym::stability_limits(25777, 42300, 2.0);
  s.near(0, "stability.france.half_width", "limits of the aggregate conviction rate at alpha = 2", 0.0067,
         sa.half_width, 0.00005);
  s.near(0, "stability.france.P", "limits of the aggregate conviction rate at alpha = 2", 0.9953, sa.probability,
         0.00005);

  const auto bf = data::buffon_fit(data::embedded_buffon());
  const char* bc = "Buffon's series of tosses until the first head";
  s.near(0, "buffon.fit.p", bc, 0.50693, bf.p, 0.000005);
  s.near(0, "buffon.fit.ladder_mean", bc, 0.52760, bf.ladder_mean, 0.0005);
  s.near(0, "buffon.fit.a1", bc, 1038, static_cast<double>(bf.predicted[0]), 0);
  s.near(0, "buffon.fit.a2", bc, 512, static_cast<double>(bf.predicted[1]), 0);
  s.near(0, "buffon.fit.a3", bc, 252, static_cast<double>(bf.predicted[2]), 0);
}

}  // namespace detail

// Every published-number check, criteria 1 to 14 plus supporting data rows.
inline std::vector<Check> reproduce() {
  Suite s;
  detail::jury_fits(s);
  detail::derived(s);
  detail::courts(s);
  detail::jury_forms(s);
  detail::buffon(s);
  detail::constants(s);
  detail::elections(s);
  detail::kernels(s);
  detail::datasets(s);
  return s.take();
}

inline bool all_pass(const std::vector<Check>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace jurisprob::repro
