#pragma once

// Exact combinatorial kernels: Bernoulli trials, urns, dice, lotteries and
// the classic gaming problems. Every routine is templated on the number type
// so the same code runs in exact rational arithmetic or in double.

#include "common.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace jurisprob::exact {

namespace mp = boost::multiprecision;

// Urn holding white and black balls.
struct UrnSpec {
  unsigned white = 0;  // a
  unsigned black = 0;  // b
};

// Distribution over contiguous integer outcomes.
template <class T>
struct OutcomeDistribution {
  std::vector<long long> support;  // ascending, contiguous
  std::vector<T> mass;             // mass[j] belongs to support[j]

  T at(long long v) const {
    if (support.empty() || v < support.front() || v > support.back()) return T(0);
    return mass[static_cast<std::size_t>(v - support.front())];
  }
  T at_most(long long v) const {
    T s(0);
    for (std::size_t j = 0; j < support.size() && support[j] <= v; ++j) s += mass[j];
    return s;
  }
  T at_least(long long v) const {
    T s(0);
    for (std::size_t j = 0; j < support.size(); ++j)
      if (support[j] >= v) s += mass[j];
    return s;
  }
  T total() const {
    T s(0);
    for (const auto& x : mass) s += x;
    return s;
  }
};

enum class Tail { at_least, at_most };

// C(m+n, m) p^m (1-p)^n: exactly m arrivals of E in m+n trials.
template <class T>
T binomial_pmf(unsigned m, unsigned n, const T& p) {
  if (m + n < 1) throw domain_error("binomial_pmf needs m + n >= 1");
  require_probability(p, "p");
  return choose<T>(m + n, m) * ipow(p, m) * ipow(T(1) - p, n);
}

// Chance that E arrives at least (or at most) m times in mu = m + n trials.
// The at-least branch is the series p^m [1 + m q + m(m+1)/2 q^2 + ...] of
// n + 1 terms; the at-most branch is its complement with m + 1.
template <class T>
T repetition_tail(unsigned m, unsigned n, const T& p, Tail tail = Tail::at_least) {
  if (m + n < 1) throw domain_error("repetition_tail needs m + n >= 1");
  require_probability(p, "p");
  const unsigned mu = m + n;
  auto at_least = [&](unsigned k) -> T {
    if (k == 0) return T(1);
    if (k > mu) return T(0);
    const T q = T(1) - p;
    T sum(0), term(1);  // term = C(k-1+j, j) q^j
    for (unsigned j = 0; j <= mu - k; ++j) {
      sum += term;
      term = term * q * T(k + j) / T(j + 1);
    }
    return ipow(p, k) * sum;
  };
  return tail == Tail::at_least ? at_least(m) : T(1) - at_least(m + 1);
}

// Chance of at least one arrival in n trials, and the real trial count at
// which that chance reaches one half.
template <class T>
struct RecurrenceOdds {
  T r;                      // 1 - (1-p)^n
  double n_even_bet = 0.0;  // -log 2 / log(1-p)
};

template <class T>
RecurrenceOdds<T> recurrence_odds(const T& p, unsigned n) {
  require_probability(p, "p");
  if (p == 0 || p == 1) throw domain_error("recurrence_odds needs 0 < p < 1");
  RecurrenceOdds<T> out;
  out.r = T(1) - ipow(T(1) - p, n);
  out.n_even_bet = -std::log(2.0) / std::log1p(-to_double(p));
  return out;
}

// Stakes of the interrupted game: A lacks a points, B lacks b points.
template <class T>
struct PointsShares {
  T alpha;  // chance A wins
  T beta;   // chance B wins
};

template <class T>
PointsShares<T> problem_of_points(const T& p, unsigned a, unsigned b) {
  if (a < 1 || b < 1) throw domain_error("problem_of_points needs a, b >= 1");
  PointsShares<T> out;
  out.alpha = repetition_tail(a, b - 1, p);
  out.beta = T(1) - out.alpha;
  return out;
}

// C(a,m) C(b,n) / C(a+b, m+n): m white and n black in m+n draws
// without replacement. An impossible draw has chance 0.
template <class T = Rational>
T hypergeometric(const UrnSpec& urn, unsigned m, unsigned n) {
  if (urn.white + urn.black < 1) throw domain_error("urn must hold at least one ball");
  if (m > urn.white || n > urn.black) return T(0);
  Integer num = choose(urn.white, m) * choose(urn.black, n);
  Integer den = choose(urn.white + urn.black, m + n);
  if constexpr (is_rational_v<T>) {
    return Rational(num, den);
  } else {
    return to_double(Rational(num, den));
  }
}

// Distribution of the number of successes over trials with chances p_j,
// read off the product of the (p_j x + q_j) factors.
template <class T>
OutcomeDistribution<T> convolve_counts(const std::vector<T>& chances) {
  if (chances.empty()) throw domain_error("convolve_counts needs at least one trial");
  std::vector<T> coef{T(1)};
  for (const auto& p : chances) {
    require_probability(p, "trial chance");
    std::vector<T> next(coef.size() + 1, T(0));
    const T q = T(1) - p;
    for (std::size_t j = 0; j < coef.size(); ++j) {
      next[j] += coef[j] * q;
      next[j + 1] += coef[j] * p;
    }
    coef = std::move(next);
  }
  OutcomeDistribution<T> out;
  out.mass = std::move(coef);
  for (std::size_t j = 0; j < out.mass.size(); ++j) out.support.push_back(static_cast<long long>(j));
  return out;
}

// Distribution of the sum of independent trials; trial j takes values[j][r]
// with chance probs[j][r].
template <class T>
OutcomeDistribution<T> convolve_sums(const std::vector<std::vector<long long>>& values,
                                     const std::vector<std::vector<T>>& probs) {
  if (values.empty()) throw domain_error("convolve_sums needs at least one trial");
  if (values.size() != probs.size()) throw domain_error("value and chance lists differ in trial count");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j].empty() || values[j].size() != probs[j].size())
      throw domain_error("trial " + std::to_string(j) + ": value and chance lists mismatch");
    T s(0);
    for (const auto& p : probs[j]) {
      require_probability(p, "outcome chance");
      s += p;
    }
    bool ok;
    if constexpr (is_rational_v<T>) ok = (s == 1);
    else ok = std::fabs(to_double(s) - 1.0) <= 1e-12;
    if (!ok) throw domain_error("trial " + std::to_string(j) + ": chances do not sum to 1");
  }
  std::vector<T> coef{T(1)};
  long long base = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const long long vmin = *std::min_element(values[j].begin(), values[j].end());
    const long long vmax = *std::max_element(values[j].begin(), values[j].end());
    std::vector<T> next(coef.size() + static_cast<std::size_t>(vmax - vmin), T(0));
    for (std::size_t c = 0; c < coef.size(); ++c)
      for (std::size_t r = 0; r < values[j].size(); ++r)
        next[c + static_cast<std::size_t>(values[j][r] - vmin)] += coef[c] * probs[j][r];
    coef = std::move(next);
    base += vmin;
  }
  OutcomeDistribution<T> out;
  out.mass = std::move(coef);
  for (std::size_t j = 0; j < out.mass.size(); ++j) out.support.push_back(base + static_cast<long long>(j));
  return out;
}

// Sum of `count` fair dice with faces 1..faces.
template <class T = Rational>
OutcomeDistribution<T> dice_sum(unsigned count, unsigned faces) {
  if (count < 1 || faces < 1) throw domain_error("dice_sum needs count, faces >= 1");
  std::vector<long long> v;
  std::vector<T> p;
  for (unsigned f = 1; f <= faces; ++f) {
    v.push_back(f);
    p.push_back(T(1) / T(faces));
  }
  return convolve_sums<T>(std::vector<std::vector<long long>>(count, v),
                          std::vector<std::vector<T>>(count, p));
}

// Elementary symmetric polynomial e_n of the chances.
template <class T>
T elementary_symmetric(const std::vector<T>& x, unsigned n) {
  std::vector<T> e(n + 1, T(0));
  e[0] = T(1);
  for (const auto& xi : x)
    for (unsigned j = std::min<unsigned>(n, static_cast<unsigned>(e.size() - 1)); j >= 1; --j)
      e[j] += e[j - 1] * xi;
  return e[n];
}

// n trials each using a different urn chosen at random from m urns with
// chances s_1..s_m; chance that all n trials succeed.
template <class T>
T distinct_urns_all_success(const std::vector<T>& chances, unsigned n) {
  const unsigned m = static_cast<unsigned>(chances.size());
  if (n > m) throw domain_error("more trials than urns");
  for (const auto& c : chances) require_probability(c, "urn chance");
  return elementary_symmetric(chances, n) / choose<T>(m, n);
}

// Lottery with n numbers, m drawn; a bet on l numbers.
struct LotteryOdds {
  Rational lambda;                 // C(m,l) / C(n,l)
  double fair_multiple = 0.0;      // 1 / lambda
  double even_bet_drawings = 0.0;  // -log 2 / log(1 - lambda)
  double even_bet_approx = 0.0;    // 0.69315 / lambda, the small-lambda form with log 2 to five figures
};

inline LotteryOdds lottery_odds(unsigned n, unsigned m, unsigned l) {
  if (!(l <= m && m <= n) || l < 1) throw domain_error("lottery_odds needs 1 <= l <= m <= n");
  LotteryOdds out;
  out.lambda = Rational(choose(m, l), choose(n, l));
  out.fair_multiple = to_double(1 / out.lambda);
  const double lam = to_double(out.lambda);
  out.even_bet_drawings = lam < 1.0 ? -std::log(2.0) / std::log1p(-lam) : 0.0;
  out.even_bet_approx = 0.69315 / lam;
  return out;
}

// Fair entry stake of the coin game when the banker holds b units and at most
// m tosses are played. b = 2^beta (1 + h), 0 <= h < 1.
struct PetersburgEntry {
  unsigned beta = 0;
  Rational h;
  Rational entry;
};

inline PetersburgEntry petersburg_entry(const Integer& fortune, unsigned max_tosses) {
  if (fortune < 2) throw domain_error("petersburg_entry needs fortune >= 2");
  PetersburgEntry out;
  out.beta = static_cast<unsigned>(mp::msb(fortune));
  const Integer pow2 = Integer(1) << out.beta;
  out.h = Rational(fortune, pow2) - 1;
  if (max_tosses < out.beta) {
    out.entry = max_tosses;
  } else {
    const Integer tail = Integer(1) << (max_tosses - out.beta);
    out.entry = Rational(out.beta) + (1 + out.h) * (1 - Rational(1, tail));
  }
  return out;
}

// Chance that an event of expected count w appears at most n times, in the
// small-chance limit of many trials.
inline double rare_event_cdf(double w, unsigned n) {
  if (!(w > 0.0)) throw domain_error("rare_event_cdf needs w > 0");
  double term = 1.0, sum = 1.0;
  for (unsigned j = 1; j <= n; ++j) {
    term *= w / j;
    sum += term;
    if (term < sum * 1e-18 && j > w) break;
  }
  return std::min(1.0, std::exp(-w) * sum);
}

// Coincidence chances for coins of uncertain bias.
template <class T>
struct Coincidence {
  T two_coins;            // s = (1 + k^2)/2, two different coins
  T same_coin_twice;      // s' = (1 + k^2 + h^2)/2
  T same_coin_thrice;     // s'' = (3 s' - 1)/2
  T hidden_bias;          // (1 + delta^2)/2
  T counter_stake_loss;   // 2 delta^2 / (1 + delta^2)
  T general_m;            // 1/2 [(p+a)^m + (q-a)^m + (p-a)^m + (q+a)^m]
};

template <class T>
Coincidence<T> coincidence_stats(const T& k, const T& h2, const T& delta, unsigned m,
                                 const T& p = T(1) / T(2), const T& alpha = T(0)) {
  if (h2 < 0) throw domain_error("h2 must be non-negative");
  Coincidence<T> out;
  out.two_coins = (T(1) + k * k) / T(2);
  out.same_coin_twice = (T(1) + k * k + h2) / T(2);
  out.same_coin_thrice = (T(3) * out.same_coin_twice - T(1)) / T(2);
  out.hidden_bias = (T(1) + delta * delta) / T(2);
  out.counter_stake_loss = T(2) * delta * delta / (T(1) + delta * delta);
  const T q = T(1) - p;
  out.general_m = (ipow(T(p + alpha), m) + ipow(T(q - alpha), m) + ipow(T(p - alpha), m) +
                   ipow(T(q + alpha), m)) / T(2);
  return out;
}

}  // namespace jurisprob::exact
