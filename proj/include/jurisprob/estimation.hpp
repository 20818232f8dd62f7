#pragma once

// Recovering (k, t) from observed conviction rates, the derived probability
// suite, appellate and small-court fits, and the civil-court model.

#include "common.hpp"
#include "exact_kernels.hpp"
#include "jury_model.hpp"
#include "roots.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace jurisprob::estimate {

// Counts behind one fit. a: convictions with at most i dissenting;
// b: convictions with exactly i dissenting.
struct ObservedRates {
  unsigned mu = 0;
  unsigned a = 0;
  unsigned b = 0;
  unsigned n = 12;
  unsigned i = 5;

  double c() const { return static_cast<double>(a) / mu; }
  double gamma() const { return static_cast<double>(b) / (choose<double>(n, i) * mu); }
};

struct FitResult {
  double k = 0.0;
  double t = 0.0;
  double u = 0.0;
  double residual = 0.0;  // |model rate - observed c| at the returned t
};

struct TInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const { return t > lo && t < hi; }
};

namespace detail {

inline void check_panel(unsigned n, unsigned i) {
  if (n < 1 || 2 * i >= n) throw domain_error("panel needs n >= 1 and 2i < n");
}

// sum_{j<=i} C(n,j) t^(n-j) / (1+t)^n and sum_{j<=i} C(n,j) t^j / (1+t)^n.
inline std::pair<double, double> cumulative_t(double t, unsigned n, unsigned i) {
  double U = 0.0, V = 0.0;
  const double scale = std::pow(1.0 + t, n);
  for (unsigned j = 0; j <= i; ++j) {
    const double cnj = choose<double>(n, j);
    U += cnj * std::pow(t, n - j);
    V += cnj * std::pow(t, j);
  }
  return {U / scale, V / scale};
}

inline double gamma_bound(double t, unsigned n, unsigned i, double k) {
  return (k * std::pow(t, n - i) + (1.0 - k) * std::pow(t, i)) / std::pow(1.0 + t, n);
}

}  // namespace detail

// Minimal-majority rate per unit coefficient, k eliminated:
// k = (gamma (1+t)^n - t^i) / (t^(n-i) - t^i).
inline double k_from_gamma(double gamma, double t, unsigned n = 12, unsigned i = 5) {
  detail::check_panel(n, i);
  const double hi = std::pow(t, n - i), lo = std::pow(t, i);
  if (hi == lo) throw domain_error("k_from_gamma undefined at t = 1");
  return (gamma * std::pow(1.0 + t, n) - lo) / (hi - lo);
}

// Conviction rate with at most i dissenting: k U + (1-k) V in odds form.
inline double conviction_rate(double k, double t, unsigned n = 12, unsigned i = 5) {
  detail::check_panel(n, i);
  const auto [U, V] = detail::cumulative_t(t, n, i);
  return k * U + (1.0 - k) * V;
}

inline constexpr double t_search_max = 1e4;

// t > 1 for which 1/2 < k < 1: (t^(n-i) + t^i)/(2(1+t)^n) < gamma < t^(n-i)/(1+t)^n.
inline TInterval feasible_t(double gamma, unsigned n = 12, unsigned i = 5) {
  detail::check_panel(n, i);
  if (!(gamma > 0.0)) throw domain_error("feasible_t needs gamma > 0");
  auto slack = [&](double t) {
    return std::min(gamma - detail::gamma_bound(t, n, i, 0.5), detail::gamma_bound(t, n, i, 1.0) - gamma);
  };
  const int points = 4096;
  const double lo = 1.0 + 1e-9, step = std::log(t_search_max / lo) / (points - 1);
  double first = -1.0, last = -1.0, prev = lo;
  for (int j = 0; j < points; ++j) {
    const double t = lo * std::exp(step * j);
    if (slack(t) > 0.0) {
      if (first < 0.0) first = j == 0 ? lo : roots::bisect(slack, prev, t, 1e-13);
      last = t;
    } else if (first > 0.0) {
      last = roots::bisect(slack, last, t, 1e-13);
      return {first, last};
    }
    prev = t;
  }
  if (first < 0.0) {
    std::ostringstream os;
    os << "no t > 1 gives 1/2 < k < 1 for gamma = " << gamma << " (n = " << n << ", i = " << i << ")";
    throw infeasible_error(os.str());
  }
  return {first, last};
}

// Solve the minimal-majority and cumulative equations for (k, t), t > 1.
inline FitResult fit_k_t(double c, double gamma, unsigned n = 12, unsigned i = 5) {
  require_probability(c, "c");
  const TInterval iv = feasible_t(gamma, n, i);
  auto f = [&](double t) { return conviction_rate(k_from_gamma(gamma, t, n, i), t, n, i) - c; };
  const double t = roots::unique_root(f, iv.lo, iv.hi, "fit_k_t");
  FitResult r;
  r.t = t;
  r.k = k_from_gamma(gamma, t, n, i);
  r.u = t / (1.0 + t);
  r.residual = std::fabs(f(t));
  return r;
}

inline FitResult fit_k_t(const ObservedRates& obs) { return fit_k_t(obs.c(), obs.gamma(), obs.n, obs.i); }

// The root pair (1-k, 1/t) that produces the same observables.
inline FitResult complement(const FitResult& f) { return {1.0 - f.k, 1.0 / f.t, 1.0 - f.u, f.residual}; }

struct DerivedProbs {
  double P = 0.0;      // guilt of those convicted
  double Pi = 0.0;     // innocence of those acquitted
  double D = 0.0;      // an innocent accused is convicted
  double Delta = 0.0;  // a guilty accused is acquitted
  double p_min = 0.0;  // correctness of a minimal-majority conviction
};

// Minimal-majority margin: 2 for an even panel, 1 for odd.
inline unsigned minimal_margin(unsigned n) { return n % 2 == 0 ? 2 : 1; }

// The fitted (k, t) applied to another observed rate under a rule where at
// most tally.i may dissent.
inline DerivedProbs derived_probs(const FitResult& fit, double c_obs, const jury::VerdictTally& tally) {
  require_probability(c_obs, "c_obs");
  detail::check_panel(tally.n, tally.i);
  if (fit.k > 0.5 && c_obs >= fit.k)
    throw domain_error("observed rate must stay below k when k > 1/2");
  if (c_obs <= 0.0 || c_obs >= 1.0) throw domain_error("observed rate must lie strictly inside (0,1)");
  const auto [U, V] = detail::cumulative_t(fit.t, tally.n, tally.i);
  DerivedProbs d;
  d.P = fit.k * U / c_obs;
  d.Pi = (1.0 - fit.k) * (1.0 - V) / (1.0 - c_obs);
  d.D = 1.0 - fit.k - (1.0 - c_obs) * d.Pi;
  d.Delta = fit.k - c_obs * d.P;
  d.p_min = jury::correctness_odds(fit.k, fit.t, minimal_margin(tally.n));
  return d;
}

struct AppellateFit {
  double P2 = 0.0;  // correctness of a confirmation
  double t = 0.0;
  double u = 0.0;
};

// A five-judge court confirming c2 of cases previously judged with
// correctness k; confirmation needs at least three votes.
inline AppellateFit appellate_confirm(double k, double c2) {
  if (!(k > 0.5 && k < 1.0)) throw domain_error("appellate_confirm needs 1/2 < k < 1");
  if (!(c2 > 0.0 && c2 < k)) throw domain_error("appellate_confirm needs 0 < c2 < k");
  AppellateFit a;
  a.P2 = k * (k - 1.0 + c2) / ((2.0 * k - 1.0) * c2);
  const double rhs = (k - c2) / (2.0 * k - 1.0);
  auto f = [&](double t) { return (1.0 + 5.0 * t + 10.0 * t * t) / std::pow(1.0 + t, 5) - rhs; };
  a.t = roots::unique_root(f, 1.0 + 1e-9, t_search_max, "appellate_confirm");
  a.u = a.t / (1.0 + a.t);
  return a;
}

struct CourtFit {
  double k = 0.0;        // reported as solved, even outside (0,1)
  double P = 0.0;        // correctness of a conviction (feasible only)
  bool feasible = false;
};

// An n-judge court convicting c of the accused with at most i dissenting,
// at known t: k from c (1+t)^n = k sum C(n,j) t^(n-j) + (1-k) sum C(n,j) t^j.
inline CourtFit court_fit_k(double c, double t, unsigned n, unsigned i) {
  detail::check_panel(n, i);
  if (!(t > 0.0) || t == 1.0) throw domain_error("court_fit_k needs t > 0, t != 1");
  const auto [U, V] = detail::cumulative_t(t, n, i);
  CourtFit out;
  out.k = (c - V) / (U - V);
  out.feasible = out.k > 0.0 && out.k < 1.0;
  if (out.feasible) out.P = out.k * U / c;
  return out;
}

inline CourtFit seven_judge(double c2, double t) { return court_fit_k(c2, t, 7, 2); }
inline CourtFit three_judge_feasibility(double c1, double t) { return court_fit_k(c1, t, 3, 1); }

// First instance of a three-judge civil court.
template <class T = double>
struct CivilFirst {
  T c{};                // unanimous judgment
  T b{};                // split judgment
  T a{}, a2{}, a3{};    // split with judge 1, 2, 3 alone in the minority
  T p{};                // correctness of a unanimous judgment
  T q{};                // correctness of a split judgment
  T r{};                // correctness of any judgment
};

template <class T>
CivilFirst<T> civil_first_instance(const T& u, const T& u2, const T& u3) {
  require_probability(u, "u");
  require_probability(u2, "u'");
  require_probability(u3, "u''");
  const T one(1), x = one - u, y = one - u2, z = one - u3;
  CivilFirst<T> o;
  o.c = u * u2 * u3 + x * y * z;
  o.b = one - o.c;
  o.a = u2 * u3 * x + u * y * z;
  o.a2 = u * u3 * y + u2 * x * z;
  o.a3 = u * u2 * z + u3 * x * y;
  o.p = o.c == 0 ? T(0) : u * u2 * u3 / o.c;
  const T bq = x * u2 * u3 + y * u * u3 + z * u * u2;
  o.q = o.b == 0 ? T(0) : bq / o.b;
  o.r = o.c * o.p + bq;
  return o;
}

template <class T>
CivilFirst<T> civil_equal(const T& u) {
  return civil_first_instance(u, u, u);
}

// u > 1/2 with u^3 + (1-u)^3 equal to the unanimous share.
inline double fit_u_from_split(double share) {
  if (share < 0.25 || share > 1.0) throw infeasible_error("unanimous share must lie in [1/4, 1]");
  return 0.5 * (1.0 + std::sqrt((4.0 * share - 1.0) / 3.0));
}

struct CivilAppeal {
  double C = 0.0;       // confirmation
  double C2 = 0.0;      // reversal
  double rho = 0.0;     // correctness of the appeal judgment
  double P = 0.0;       // first judgment right given confirmation
  double P2 = 0.0;      // first judgment wrong given reversal
  double Gamma = 0.0;   // two appeal courts agree
  double Gamma2 = 0.0;  // they disagree
  double parts[4] = {0, 0, 0, 0};  // r rho, (1-r) rho, r (1-rho), (1-r)(1-rho)
};

inline CivilAppeal appeal_from_rho(double r, double rho) {
  require_probability(r, "r");
  require_probability(rho, "rho");
  CivilAppeal a;
  a.rho = rho;
  a.C = r * rho + (1.0 - r) * (1.0 - rho);
  a.C2 = r * (1.0 - rho) + (1.0 - r) * rho;
  a.P = a.C == 0.0 ? 0.0 : r * rho / a.C;
  a.P2 = a.C2 == 0.0 ? 0.0 : (1.0 - r) * rho / a.C2;
  a.Gamma = rho * rho + (1.0 - rho) * (1.0 - rho);
  a.Gamma2 = 2.0 * rho * (1.0 - rho);
  a.parts[0] = r * rho;
  a.parts[1] = (1.0 - r) * rho;
  a.parts[2] = r * (1.0 - rho);
  a.parts[3] = (1.0 - r) * (1.0 - rho);
  return a;
}

// Appeal to seven judges of reliability v, a judgment needing four votes.
inline double seven_majority(double v) {
  double s = 0.0;
  for (unsigned j = 4; j <= 7; ++j) s += choose<double>(7, j) * std::pow(v, j) * std::pow(1.0 - v, 7 - j);
  return s;
}

inline CivilAppeal civil_appeal(double r, double v) { return appeal_from_rho(r, seven_majority(v)); }

// Observed confirmation rate: rho = (r - C')/(2r - 1).
inline CivilAppeal civil_appeal_observed(double r, double confirm_rate) {
  if (r == 0.5) throw domain_error("civil_appeal_observed needs r != 1/2");
  const double rho = (r - (1.0 - confirm_rate)) / (2.0 * r - 1.0);
  if (rho < 0.0 || rho > 1.0) throw infeasible_error("confirmation rate gives rho outside [0,1]");
  return appeal_from_rho(r, rho);
}

struct CivilFit {
  double t = 0.0;
  double u = 0.0;
  double r = 0.0;
};

// Confirmation rate when every judge has odds t: r - (2r-1)(1+7t+21t^2+35t^3)/(1+t)^7,
// r = 1 - (1+3t)/(1+t)^3.
inline double civil_confirm_rate(double t) {
  const double r = 1.0 - (1.0 + 3.0 * t) / std::pow(1.0 + t, 3);
  return r - (2.0 * r - 1.0) * (1.0 + 7.0 * t + 21.0 * t * t + 35.0 * t * t * t) / std::pow(1.0 + t, 7);
}

inline CivilFit fit_civil_t(double confirm_rate) {
  if (!(confirm_rate > 0.5 && confirm_rate < 1.0)) throw infeasible_error("confirmation rate must lie in (1/2, 1)");
  auto f = [&](double t) { return civil_confirm_rate(t) - confirm_rate; };
  CivilFit out;
  out.t = roots::unique_root(f, 1.0 + 1e-9, t_search_max, "fit_civil_t");
  out.u = out.t / (1.0 + out.t);
  out.r = 1.0 - (1.0 + 3.0 * out.t) / std::pow(1.0 + out.t, 3);
  return out;
}

}  // namespace jurisprob::estimate
