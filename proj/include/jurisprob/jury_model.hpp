#pragma once

// Forward verdict model: conviction and acquittal chances of a panel whose
// jurors judge independently with reliability u, prior guilt chance k.

#include "common.hpp"
#include "exact_kernels.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace jurisprob::jury {

template <class T = double>
struct JuryParams {
  T k{};  // prior chance the accused is convictable
  T u{};  // chance a juror judges correctly

  T t() const { return u / (T(1) - u); }
  JuryParams complement() const { return {T(1) - k, T(1) - u}; }
};

template <class T>
void check_params(const JuryParams<T>& p, bool open = true) {
  require_probability(p.k, "k");
  require_probability(p.u, "u");
  if (open && (p.k == 0 || p.k == 1 || p.u == 0 || p.u == 1))
    throw domain_error("jury parameters need 0 < k < 1 and 0 < u < 1");
}

struct VerdictTally {
  unsigned n = 12;  // panel size
  unsigned i = 0;   // minority votes

  unsigned margin() const { return n - 2 * i; }
};

template <class T>
struct VerdictProbs {
  T gamma{};   // conviction with exactly i dissenting
  T delta{};   // acquittal with exactly i dissenting
  T w{};       // gamma + delta, a decision at exactly this split
  T U{};       // sum_{j<=i} C(n,j) u^(n-j) (1-u)^j
  T V{};       // U with u and 1-u exchanged
  T c{};       // conviction with at most i dissenting
  T d{};       // acquittal with at most i dissenting
  T p{};       // guilt given conviction at exactly this split
  T q{};       // innocence given acquittal at exactly this split
  T P{};       // guilt given conviction with at most i dissenting
  T Q{};       // innocence given acquittal with at most i dissenting
  T D{};       // innocent accused convicted (at most i dissenting)
  T Delta{};   // guilty accused not so convicted
  std::optional<T> H;  // tie chance, even n only
};

namespace detail {

template <class T>
T cumulative(unsigned n, unsigned i, const T& u) {
  T s(0);
  const T v = T(1) - u;
  for (unsigned j = 0; j <= i; ++j) s += choose<T>(n, j) * ipow(u, n - j) * ipow(v, j);
  return s;
}

}  // namespace detail

template <class T>
VerdictProbs<T> verdict_probs(const JuryParams<T>& params, const VerdictTally& tally) {
  check_params(params, false);
  const unsigned n = tally.n, i = tally.i;
  if (n < 1) throw domain_error("panel needs at least one juror");
  if (2 * i > n) throw domain_error("minority count exceeds half the panel");
  const T k = params.k, u = params.u, one(1), ku = one - k, uu = one - u;
  const T Ni = choose<T>(n, i);
  VerdictProbs<T> r;
  const T right = ipow(u, n - i) * ipow(uu, i);  // majority correct
  const T wrong = ipow(u, i) * ipow(uu, n - i);  // majority mistaken
  r.gamma = Ni * (k * right + ku * wrong);
  r.delta = Ni * (k * wrong + ku * right);
  r.w = r.gamma + r.delta;
  r.U = detail::cumulative(n, i, u);
  r.V = detail::cumulative(n, i, uu);
  r.c = k * r.U + ku * r.V;
  r.d = k * r.V + ku * r.U;
  const T kr = k * right, kw = k * wrong, nr = ku * right, nw = ku * wrong;
  r.p = kr + nw == 0 ? T(0) : kr / (kr + nw);
  r.q = nr + kw == 0 ? T(0) : nr / (nr + kw);
  r.P = r.c == 0 ? T(0) : k * r.U / r.c;
  r.Q = r.d == 0 ? T(0) : ku * r.U / r.d;
  r.D = ku * r.V;
  r.Delta = k * (one - r.U);
  if (n % 2 == 0) r.H = choose<T>(n, n / 2) * ipow(u * uu, n / 2);
  return r;
}

// p_i in odds form: k t^m / (k t^m + 1 - k).
inline double correctness_odds(double k, double t, unsigned m) {
  const double tm = std::pow(t, m);
  return k * tm / (k * tm + 1.0 - k);
}

template <class T>
struct SingleJuror {
  T gamma{};  // chance of conviction
  T p{};      // guilt given conviction
  T q{};      // innocence given acquittal
};

template <class T>
SingleJuror<T> single_juror(const JuryParams<T>& params) {
  check_params(params, false);
  const T k = params.k, u = params.u, one(1);
  SingleJuror<T> s;
  s.gamma = k * u + (one - k) * (one - u);
  s.p = s.gamma == 0 ? T(0) : k * u / s.gamma;
  s.q = s.gamma == 1 ? T(0) : (one - k) * u / (one - s.gamma);
  return s;
}

template <class T>
struct PanelSplit {
  unsigned convict = 0;  // votes to convict
  unsigned acquit = 0;   // votes to acquit
  T if_guilty{};         // chance of this split when the accused is guilty
  T if_innocent{};       // chance when innocent
  T composite{};         // k if_guilty + (1-k) if_innocent
  T guilt{};             // posterior guilt given the split
};

template <class T>
struct PanelDistribution {
  std::vector<PanelSplit<T>> splits;  // convict = 0..n
  T coincidence{};                    // prod u_j + prod (1 - u_j), all judge alike
};

inline constexpr unsigned max_distinct_panel = 20;

// Exact split distribution for jurors with their own reliabilities.
template <class T>
PanelDistribution<T> panel_distinct(const T& k, const std::vector<T>& reliabilities) {
  require_probability(k, "k");
  const std::size_t n = reliabilities.size();
  if (n < 1 || n > max_distinct_panel) throw domain_error("panel_distinct supports 1 to 20 jurors");
  // Under guilt a correct juror votes to convict.
  const auto correct = exact::convolve_counts(reliabilities);
  PanelDistribution<T> out;
  T all_right(1), all_wrong(1);
  for (const auto& u : reliabilities) {
    all_right *= u;
    all_wrong *= T(1) - u;
  }
  out.coincidence = all_right + all_wrong;
  for (unsigned x = 0; x <= n; ++x) {
    PanelSplit<T> s;
    s.convict = x;
    s.acquit = static_cast<unsigned>(n) - x;
    s.if_guilty = correct.at(x);
    s.if_innocent = correct.at(static_cast<long long>(n) - x);
    s.composite = k * s.if_guilty + (T(1) - k) * s.if_innocent;
    s.guilt = s.composite == 0 ? T(0) : k * s.if_guilty / s.composite;
    out.splits.push_back(s);
  }
  return out;
}

// Chance of error in a conviction by n-i against i when k = 1/2 and the
// juror's chance is a priori flat: sum_{j<=i} C(n+1, j) / 2^(n+1).
inline Rational laplace_error(unsigned n, unsigned i) {
  if (2 * i >= n) throw domain_error("laplace_error needs i < n/2");
  Integer s = 0;
  for (unsigned j = 0; j <= i; ++j) s += choose(n + 1, j);
  return Rational(s, Integer(1) << (n + 1));
}

// Under the same hypothesis, posterior mass of [1/2 - delta, 1/2 + delta]
// after a conviction by n-i against i.
template <class T>
T laplace_interval(unsigned n, unsigned i, const T& delta) {
  if (2 * i >= n) throw domain_error("laplace_interval needs i < n/2");
  if (!(delta > 0) || delta > T(1) / 2) throw domain_error("laplace_interval needs 0 < delta <= 1/2");
  const T half = T(1) / 2, hi = half + delta, lo = half - delta;
  T s(0);
  for (unsigned j = 0; j <= i; ++j)
    s += choose<T>(n + 1, j) * (ipow(hi, n + 1 - j) * ipow(lo, j) - ipow(lo, n + 1 - j) * ipow(hi, j));
  return s;
}

struct UnanimityStats {
  double gamma0 = 0.0;             // unanimous conviction
  double delta0 = 0.0;             // unanimous acquittal
  double cases_for_even_bet = 0.0; // cases for an even chance of one unanimous verdict
};

inline UnanimityStats unanimity_stats(const JuryParams<double>& params, unsigned n) {
  check_params(params);
  const double k = params.k, u = params.u;
  UnanimityStats s;
  s.gamma0 = k * std::pow(u, n) + (1.0 - k) * std::pow(1.0 - u, n);
  s.delta0 = k * std::pow(1.0 - u, n) + (1.0 - k) * std::pow(u, n);
  s.cases_for_even_bet = -std::log(2.0) / std::log1p(-(s.gamma0 + s.delta0));
  return s;
}

}  // namespace jurisprob::jury
