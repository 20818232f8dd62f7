#pragma once

// Inference over discrete causes, testimony and tradition, succession.
// Templated on the number type: double by default, Rational for exact work.

#include "common.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace jurisprob::causes {

template <class T = double>
struct CauseTable {
  std::vector<T> priors;              // q_n, summing to 1
  std::vector<T> likelihoods;         // p_n, chance of the observed event under cause n
  std::vector<T> future_likelihoods;  // p'_n, chance of the next event (may be empty)
};

namespace detail {

template <class T>
void require_unit(const T& x, const char* name) {
  require_probability(x, name);
}

template <class T>
void check_table(const CauseTable<T>& t) {
  if (t.priors.empty()) throw domain_error("cause table is empty");
  if (t.priors.size() != t.likelihoods.size()) throw domain_error("priors and likelihoods differ in length");
  if (!t.future_likelihoods.empty() && t.future_likelihoods.size() != t.priors.size())
    throw domain_error("future likelihoods differ in length");
  T sum(0);
  for (std::size_t j = 0; j < t.priors.size(); ++j) {
    require_unit(t.priors[j], "prior");
    require_unit(t.likelihoods[j], "likelihood");
    sum += t.priors[j];
  }
  for (const auto& f : t.future_likelihoods) require_unit(f, "future likelihood");
  if constexpr (is_rational_v<T>) {
    if (sum != 1) throw domain_error("priors must sum to 1");
  } else {
    if (std::fabs(sum - 1.0) > 1e-12) throw domain_error("priors must sum to 1");
  }
}

template <class T>
T joint_mass(const CauseTable<T>& t) {
  T s(0);
  for (std::size_t j = 0; j < t.priors.size(); ++j) s += t.priors[j] * t.likelihoods[j];
  if (s == 0) throw domain_error("observed event impossible under every cause");
  return s;
}

}  // namespace detail

// Chance of the observed event before observation: sum q_n p_n.
template <class T>
T event_probability(const CauseTable<T>& t) {
  detail::check_table(t);
  T s(0);
  for (std::size_t j = 0; j < t.priors.size(); ++j) s += t.priors[j] * t.likelihoods[j];
  return s;
}

// w_n = q_n p_n / sum q_j p_j.
template <class T>
std::vector<T> cause_posterior(const CauseTable<T>& t) {
  detail::check_table(t);
  const T s = detail::joint_mass(t);
  std::vector<T> w(t.priors.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = t.priors[j] * t.likelihoods[j] / s;
  return w;
}

// w' = sum q_n p_n p'_n / sum q_n p_n.
template <class T>
T predictive(const CauseTable<T>& t) {
  detail::check_table(t);
  if (t.future_likelihoods.empty()) throw domain_error("predictive needs future likelihoods");
  const T s = detail::joint_mass(t);
  T num(0);
  for (std::size_t j = 0; j < t.priors.size(); ++j) num += t.priors[j] * t.likelihoods[j] * t.future_likelihoods[j];
  return num / s;
}

// Table for the next step: the future event becomes part of the observation
// (p_n -> p_n p'_n) and `next` supplies the new future likelihoods.
template <class T>
CauseTable<T> chain(const CauseTable<T>& t, std::vector<T> next) {
  detail::check_table(t);
  if (t.future_likelihoods.empty()) throw domain_error("chain needs future likelihoods");
  CauseTable<T> out{t.priors, t.likelihoods, std::move(next)};
  for (std::size_t j = 0; j < out.likelihoods.size(); ++j) out.likelihoods[j] *= t.future_likelihoods[j];
  return out;
}

// Chance the n-th card is red after drawing from a pack of `total` cards with
// `red` red ones, when `seen` cards have been turned and `seen_red` were red.
template <class T = Rational>
T next_card_red(unsigned red, unsigned total, unsigned seen_red, unsigned seen) {
  if (seen_red > red || seen >= total || seen_red > seen) throw domain_error("next_card_red counts inconsistent");
  return T(red - seen_red) / T(total - seen);
}

// Posterior truth of an event of prior chance q affirmed by a witness who
// tells the truth with chance p.
template <class T>
T witness_update(const T& p, const T& q) {
  require_probability(p, "p");
  require_probability(q, "q");
  const T yes = p * q, no = (T(1) - p) * (T(1) - q);
  if (yes + no == 0) throw domain_error("witness_update: both cells vanish");
  return yes / (yes + no);
}

// Concurring witnesses with truth chances p^(j): y = q/(q + (1-q) prod rho_j),
// rho_j = (1 - p^(j))/p^(j).
template <class T>
T witness_chain(const T& q, const std::vector<T>& honesty) {
  require_probability(q, "q");
  T prod(1);
  for (const auto& p : honesty) {
    require_probability(p, "p");
    if (p == 0) throw domain_error("witness_chain: honesty 0 rejected");
    prod *= (T(1) - p) / p;
  }
  const T den = q + (T(1) - q) * prod;
  if (den == 0) throw domain_error("witness_chain: degenerate inputs");
  return q / den;
}

// Two witnesses contradict: the first (truth chance p) affirms the event of
// prior chance q, the second (p2) denies it. Returns r1, the chance the
// event did not happen.
template <class T>
T contradiction(const T& q, const T& p, const T& p2) {
  require_probability(q, "q");
  require_probability(p, "p");
  require_probability(p2, "p'");
  const T falsity = p2 * (T(1) - p) * (T(1) - q);
  const T truth = q * p * (T(1) - p2);
  if (falsity + truth == 0) throw domain_error("contradiction: degenerate inputs");
  return falsity / (falsity + truth);
}

template <class T = double>
struct WitnessSpec {
  T u = T(1);    // chance of not being mistaken
  T v = T(1);    // chance of not wishing to deceive
  unsigned m = 2;  // count of alternatives
};

template <class T>
struct NumberedWitness {
  T p_n{};                 // chance of announcing n when n was drawn
  T p_i{};                 // chance of announcing n when some other i was drawn
  T w_n{};                 // posterior that n was drawn
  std::vector<T> w;        // posterior for every number (w[n] = w_n)
};

// An urn holds a_j balls bearing number j (j = 0..m-1); a witness announces
// number `announced`. Deception picks uniformly among the other numbers.
template <class T>
NumberedWitness<T> numbered_witness(const WitnessSpec<T>& spec, const std::vector<unsigned>& counts,
                                    std::size_t announced) {
  const unsigned m = spec.m;
  if (m < 2) throw domain_error("numbered_witness needs m >= 2");
  if (counts.size() != m) throw domain_error("numbered_witness needs one count per number");
  if (announced >= m) throw domain_error("announced number out of range");
  require_probability(spec.u, "u");
  require_probability(spec.v, "v");
  unsigned mu = 0;
  for (unsigned a : counts) mu += a;
  if (mu < 1) throw domain_error("numbered_witness needs at least one ball");
  if (counts[announced] < 1) throw domain_error("announced number has no ball");
  const T u = spec.u, v = spec.v, one(1), m1 = T(m - 1);
  NumberedWitness<T> out;
  out.p_n = u * v + (one - u) * (one - v) / m1;
  out.p_i = (u * (one - v) + v * (one - u)) / m1 + T(m - 2) * (one - u) * (one - v) / (m1 * m1);
  const T an = T(counts[announced]);
  const T rest = T(mu) - an;
  out.w_n = an * out.p_n / (an * out.p_n + rest * out.p_i);
  out.w.resize(m);
  for (unsigned j = 0; j < m; ++j) {
    if (j == announced) out.w[j] = out.w_n;
    else out.w[j] = rest == 0 ? T(0) : (one - out.w_n) * T(counts[j]) / rest;
  }
  return out;
}

// Chance that one link of a tradition transmits correctly.
template <class T>
T link_k(const T& u, const T& v, unsigned m) {
  if (m < 2) throw domain_error("link_k needs m >= 2");
  require_probability(u, "u");
  require_probability(v, "v");
  const T one(1);
  return u * v + (one - u) * (one - v) / T(m - 1);
}

// Posterior that number n was drawn after a chain of witnesses with link
// chances k_j. a_n of mu balls bear n; p_n is the chance the first report
// names n when n was drawn. X = prod (m k_j - 1)/(m - 1).
template <class T>
T tradition_chain(unsigned m, unsigned a_n, unsigned mu, const std::vector<T>& link_ks, const T& p_n) {
  if (m < 2) throw domain_error("tradition_chain needs m >= 2");
  if (link_ks.empty()) throw domain_error("tradition_chain needs at least one link");
  if (a_n < 1 || a_n > mu) throw domain_error("tradition_chain needs 1 <= a_n <= mu");
  require_probability(p_n, "p_n");
  const T one(1), M(m), m1(m - 1);
  T X(1);
  for (const auto& k : link_ks) {
    require_probability(k, "k");
    X *= (M * k - one) / m1;
  }
  const T p_i = (one - p_n) / m1;
  const T num = (one + (M * p_n - one) * X) * T(a_n);
  const T den = num + (one + (M * p_i - one) * X) * T(mu - a_n);
  return num / den;
}

// Chance that m1 successes and n1 failures follow, in any order, after m
// successes and n failures, under a uniform prior on the chance.
inline double succession(unsigned m, unsigned n, unsigned m1, unsigned n1) {
  auto lf = [](double x) { return std::lgamma(x + 1.0); };
  const double log_w = lf(m1 + n1) + lf(m + m1) + lf(n + n1) + lf(m + n + 1.0) - lf(m1) - lf(n1) - lf(m) -
                       lf(n) - lf(m + m1 + n + n1 + 1.0);
  return std::exp(log_w);
}

inline Rational succession_exact(unsigned m, unsigned n, unsigned m1, unsigned n1) {
  const Integer num = factorial(m1 + n1) * factorial(m + m1) * factorial(n + n1) * factorial(m + n + 1);
  const Integer den = factorial(m1) * factorial(n1) * factorial(m) * factorial(n) * factorial(m + m1 + n + n1 + 1);
  return Rational(num, den);
}

// First-order chance of the next success when the chance is known to lie
// near r (within h), after m successes and n failures.
inline double near_known(double r, double h, unsigned m, unsigned n) {
  if (!(r > 0.0 && r < 1.0)) throw domain_error("near_known needs 0 < r < 1");
  return r + (m / r - n / (1.0 - r)) * h;
}

template <class T>
struct PermanentCause {
  T w{};       // chance a permanent cause exists after the experiment
  T w_next{};  // chance the next experiment succeeds
};

// p: prior of a permanent cause; rho: chance of the observed result without
// it; rho_future: chance of the next result without it.
template <class T>
PermanentCause<T> permanent_cause(const T& p, const T& rho, const T& rho_future) {
  require_probability(p, "p");
  require_probability(rho, "rho");
  require_probability(rho_future, "rho'");
  if (p == 0 && rho == 0) throw domain_error("permanent_cause: p and rho both zero");
  const T w = p / (p + (T(1) - p) * rho);
  return {w, w + (T(1) - w) * rho_future};
}

// Sequence of experiments, each updating the previous w.
template <class T>
T permanent_cause_sequence(const T& p, const std::vector<T>& rhos) {
  T w = p;
  for (const auto& r : rhos) w = permanent_cause(w, r, T(0)).w;
  return w;
}

// The same evidence as a single product.
template <class T>
T permanent_cause_product(const T& p, const std::vector<T>& rhos) {
  T prod(1);
  for (const auto& r : rhos) prod *= r;
  return permanent_cause(p, prod, T(0)).w;
}

// Chance that a remarkable arrangement of prior chance p1 arose from a
// special cause rather than chance alone (p).
template <class T>
T remarkable(const T& p, const T& p1) {
  if (p + p1 == 0) throw domain_error("remarkable: both chances zero");
  return p1 / (p1 + p);
}

// Chance the urn holds more white than black after n consecutive white draws.
inline Rational majority_composition(unsigned n) { return Rational(1) - Rational(1, Integer(1) << (n + 1)); }

}  // namespace jurisprob::causes
