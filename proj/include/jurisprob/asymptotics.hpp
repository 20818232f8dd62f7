#pragma once

// Large-number approximations: Stirling, the Gaussian tail, binomial tails
// and intervals, mean-value limits, sums of uniform variables.

#include "common.hpp"
#include "roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace jurisprob::asym {

inline constexpr double pi = std::numbers::pi;
inline constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;

// ln of n^n e^-n sqrt(2 pi n) (1 + 1/12n + 1/288n^2), first `terms` factors.
inline double log_factorial(unsigned n, unsigned terms = 3) {
  if (n < 1) throw domain_error("log_factorial needs n >= 1");
  if (terms < 1 || terms > 3) throw domain_error("log_factorial supports 1 to 3 terms");
  const double x = n;
  double corr = 1.0;
  if (terms >= 2) corr += 1.0 / (12.0 * x);
  if (terms >= 3) corr += 1.0 / (288.0 * x * x);
  return x * std::log(x) - x + 0.5 * std::log(2.0 * pi * x) + std::log(corr);
}

// (1/sqrt(pi)) * integral_0^u exp(-t^2) dt from u - u^3/3 + u^5/(2!5) - ...
inline double gauss_integral_series(double u) {
  const double u2 = u * u;
  double term = u;  // (-1)^j u^(2j+1) / j!
  double sum = 0.0;
  for (int j = 0; j < 400; ++j) {
    const double piece = term / (2 * j + 1);
    sum += piece;
    if (std::fabs(piece) <= 1e-17 * std::fabs(sum)) break;
    term *= -u2 / (j + 1);
  }
  return sum * inv_sqrt_pi;
}

// exp(u^2) * integral_u^inf exp(-t^2) dt, from the continued form that
// repeated integration by parts yields:
//   1/2 * 1/(u + (1/2)/(u + 1/(u + (3/2)/(u + ...)))).
// Evaluated with the modified Lentz scheme; valid for u > 0.
inline double gauss_tail_scaled_cf(double u) {
  constexpr double tiny = 1e-300;
  double f = u, c = u, d = 0.0;
  for (int j = 1; j < 5000; ++j) {
    const double a = 0.5 * j;
    d = u + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = u + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 0.5 / f;
}

// Q(u) = (1/sqrt(pi)) * integral_u^inf exp(-t^2) dt. Series below 1, the
// continued form from 1 up. Negative u handled by Q(-u) = 1 - Q(u).
inline double gauss_tail(double u) {
  if (std::isnan(u)) throw domain_error("gauss_tail of NaN");
  if (u < 0.0) return 1.0 - gauss_tail(-u);
  if (u < 1.0) return 0.5 - gauss_integral_series(u);
  if (u > 27.5) return 0.0;
  return inv_sqrt_pi * std::exp(-u * u) * gauss_tail_scaled_cf(u);
}

// (1/sqrt(pi)) * integral_0^u exp(-t^2) dt for any u.
inline double gauss_integral_0(double u) {
  if (std::fabs(u) < 1.0) return gauss_integral_series(u);
  return u > 0 ? 0.5 - gauss_tail(u) : gauss_tail(-u) - 0.5;
}

// Root u of Q(u) = q for 0 < q < 1, by bisection.
inline double gauss_tail_inv(double q) {
  if (!(q > 0.0 && q < 1.0)) throw domain_error("gauss_tail_inv needs 0 < q < 1");
  if (q > 0.5) return -gauss_tail_inv(1.0 - q);
  if (q == 0.5) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (gauss_tail(hi) > q) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (gauss_tail(mid) > q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// The u for which 1 - 2Q(u) = 1/2.
inline double even_money_constant() { return gauss_tail_inv(0.25); }

// Chance of the single outcome lying g standard units from the centre:
// exp(-g^2/2) / sqrt(2 pi mu p q), optionally times (1 - 1/4mu).
inline double central_term(unsigned mu, double p, double g, bool correction = false) {
  if (mu < 1) throw domain_error("central_term needs mu >= 1");
  if (!(p > 0.0 && p < 1.0)) throw domain_error("central_term needs 0 < p < 1");
  double u = std::exp(-0.5 * g * g) / std::sqrt(2.0 * pi * mu * p * (1.0 - p));
  if (correction) u *= 1.0 - 1.0 / (4.0 * mu);
  return u;
}

enum class TailDirection { at_least_m_successes, at_most_n_failures };

// m arrivals of E and n of F out of mu = m + n trials, chance p for E.
struct TailQuery {
  unsigned m = 0;
  unsigned n = 0;
  double p = 0.5;
  TailDirection direction = TailDirection::at_least_m_successes;
};

// Exponent k^2 = n ln[n/(q(mu+1))] + (m+1) ln[(m+1)/(p(mu+1))].
inline double tail_exponent(unsigned m, unsigned n, double p) {
  const double q = 1.0 - p, mup1 = m + n + 1.0;
  const double left = n > 0 ? n * std::log(n / (q * mup1)) : 0.0;
  return left + (m + 1.0) * std::log((m + 1.0) / (p * mup1));
}

// Chance that E arrives at least m times (equivalently F at most n times).
// Branch a when q/p >= n/(m+1), branch b otherwise.
inline double binomial_tail_asym(const TailQuery& tq) {
  const unsigned m = tq.m, n = tq.n, mu = m + n;
  if (mu < 2) throw domain_error("binomial_tail_asym needs m + n >= 2");
  if (m == 0 || n == 0) throw domain_error("binomial_tail_asym needs m, n >= 1");
  const double p = tq.p, q = 1.0 - p;
  if (!(p > 0.0 && p < 1.0)) throw domain_error("binomial_tail_asym needs 0 < p < 1");
  const double k2 = std::max(0.0, tail_exponent(m, n, p));
  const double k = std::sqrt(k2);
  const double last = (static_cast<double>(mu) + n) * std::sqrt(2.0) /
                      (3.0 * std::sqrt(pi * mu * static_cast<double>(m) * n)) * std::exp(-k2);
  // Cross-multiplied so that exact equality picks branch a.
  if (q * (m + 1.0) >= n * p) return gauss_tail(k) + last;
  return 1.0 - gauss_tail(k) + last;
}

// Chance that the count of F stays below (above = false) or reaches at most
// (above = true) mu q -+ r sqrt(2 mu p q), with the skew shifts delta, delta'.
inline double tail_near_mean(unsigned mu, double p, double r, bool above) {
  if (mu < 2 || !(p > 0.0 && p < 1.0) || r < 0.0) throw domain_error("tail_near_mean inputs out of range");
  const double q = 1.0 - p;
  const double delta = (p - q) * r * r / (3.0 * std::sqrt(2.0 * (mu + 1.0) * p * q));
  const double last = (1.0 + q) * std::sqrt(2.0) / (3.0 * std::sqrt(pi * mu * p * q)) * std::exp(-r * r);
  if (!above) return gauss_tail(r + delta) + last;
  return 1.0 - gauss_tail(r - delta) + last;
}

// Interval for the count of E in mu trials: mu p -+ u sqrt(2 mu p q) with
// chance 1 - 2Q(u) + exp(-u^2)/sqrt(2 pi mu p q). With k_var (k^2 = 2 sum
// p_i q_i / mu over unequal chances, p then their mean) the last term becomes
// exp(-u^2)/(k sqrt(pi mu)) and the half-width u k sqrt(mu).
inline IntervalResult freq_interval(unsigned mu, double p, double u,
                                    std::optional<double> k_var = std::nullopt) {
  if (mu < 1) throw domain_error("freq_interval needs mu >= 1");
  if (!(p > 0.0 && p < 1.0)) throw domain_error("freq_interval needs 0 < p < 1");
  if (u < 0.0) throw domain_error("freq_interval needs u >= 0");
  const double k = k_var ? *k_var : std::sqrt(2.0 * p * (1.0 - p));
  if (!(k > 0.0)) throw domain_error("freq_interval needs k > 0");
  IntervalResult out;
  out.center = mu * p;
  out.half_width = u * k * std::sqrt(static_cast<double>(mu));
  out.probability = 1.0 - 2.0 * gauss_tail(u) + std::exp(-u * u) / (k * std::sqrt(pi * mu));
  return out;
}

// Interval for an unknown chance after m arrivals of E and n of F:
// m/mu -+ (u/mu) sqrt(2mn/mu), chance 1 - 2Q(u) + sqrt(mu/(2 pi m n)) exp(-u^2).
inline IntervalResult chance_interval(unsigned m, unsigned n, double u) {
  if (m < 1 || n < 1) throw domain_error("chance_interval needs m, n >= 1");
  const double mu = static_cast<double>(m) + n;
  IntervalResult out;
  out.center = m / mu;
  out.half_width = (u / mu) * std::sqrt(2.0 * m * static_cast<double>(n) / mu);
  out.probability = 1.0 - 2.0 * gauss_tail(u) +
                    std::sqrt(mu / (2.0 * pi * m * static_cast<double>(n))) * std::exp(-u * u);
  return out;
}

// Chance that the unknown chance exceeds w, given m and n.
struct ExceedResult {
  double u = 0.0;       // |w - m/mu| mu sqrt(mu) / sqrt(2mn)
  double lambda = 0.0;  // Q(u) when w > m/mu, else 1 - Q(u)
};

inline ExceedResult chance_exceeds(unsigned m, unsigned n, double w) {
  if (m < 1 || n < 1) throw domain_error("chance_exceeds needs m, n >= 1");
  const double mu = static_cast<double>(m) + n;
  const double signed_u = (w - m / mu) * mu * std::sqrt(mu) / std::sqrt(2.0 * m * static_cast<double>(n));
  return {std::fabs(signed_u), gauss_tail(signed_u)};
}

// Interval for the count n' of F in mu' future trials, with m', n' replaced
// by their proportional estimates.
inline IntervalResult predict_interval(unsigned m, unsigned n, unsigned mu_future, double u) {
  if (m < 1 || n < 1 || mu_future < 1) throw domain_error("predict_interval needs positive counts");
  const double mu = static_cast<double>(m) + n, mup = mu_future;
  const double mp = m * mup / mu, np = n * mup / mu;
  const double s = mu * mu * mu * mp * np + mup * mup * mup * m * static_cast<double>(n);
  IntervalResult out;
  out.center = n * mup / mu;
  out.half_width = (u / mu) * std::sqrt(2.0 * s / (mu * mup));
  out.probability = 1.0 - 2.0 * gauss_tail(u) +
                    std::sqrt(mu * mup) / std::sqrt(2.0 * pi * mp * np * (mu + mup)) *
                        std::exp(-u * u * s / (mu * mu * mp * np * (mu + mup)));
  return out;
}

// Chance that p1 - p > eps, for m of mu trials in the first series and
// m1 of mu1 in the second.
struct TwoSampleResult {
  double delta = 0.0;   // m1/mu1 - m/mu
  double u = 0.0;       // non-negative
  double lambda = 0.0;
};

inline TwoSampleResult two_sample(unsigned m, unsigned mu, unsigned m1, unsigned mu1, double eps) {
  if (m >= mu || m1 >= mu1 || m < 1 || m1 < 1) throw domain_error("two_sample needs 0 < m < mu");
  const double M = mu, M1 = mu1, n = mu - m, n1 = mu1 - m1;
  TwoSampleResult out;
  out.delta = m1 / M1 - m / M;
  const double scale = M * M1 * std::sqrt(M * M1) /
                       std::sqrt(2.0 * (M * M * M * m1 * n1 + M1 * M1 * M1 * m * n));
  const double signed_u = (eps - out.delta) * scale;
  out.u = std::fabs(signed_u);
  out.lambda = gauss_tail(signed_u);
  return out;
}

// Limits a/mu -+ alpha sqrt(2a(mu-a)/mu^3) for the limiting rate, chance
// 1 - 2Q(alpha).
inline IntervalResult stability_limits(unsigned a, unsigned mu, double alpha) {
  if (mu < 1 || a > mu) throw domain_error("stability_limits needs a <= mu, mu >= 1");
  const double M = mu, A = a;
  IntervalResult out;
  out.center = A / M;
  out.half_width = alpha * std::sqrt(2.0 * A * (M - A) / (M * M * M));
  out.probability = 1.0 - 2.0 * gauss_tail(alpha);
  return out;
}

// Two series: limits for a/mu - a'/mu' about zero; center is the observed
// difference.
inline IntervalResult stability_limits(unsigned a, unsigned mu, unsigned a2, unsigned mu2, double alpha) {
  const IntervalResult one = stability_limits(a, mu, 1.0);
  const IntervalResult two = stability_limits(a2, mu2, 1.0);
  IntervalResult out;
  out.center = one.center - two.center;
  out.half_width = alpha * std::sqrt(one.half_width * one.half_width + two.half_width * two.half_width);
  out.probability = 1.0 - 2.0 * gauss_tail(alpha);
  return out;
}

// Series of mu values with sum s and spread l, l^2/2 = mean squared deviation.
struct MeanSeries {
  double sum_s = 0.0;
  unsigned count_mu = 0;
  double spread_l = 0.0;
};

inline MeanSeries mean_series(const std::vector<double>& values) {
  if (values.size() < 2) throw domain_error("mean_series needs at least two values");
  MeanSeries s;
  s.count_mu = static_cast<unsigned>(values.size());
  for (double v : values) s.sum_s += v;
  const double mean = s.sum_s / s.count_mu;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  s.spread_l = std::sqrt(2.0 * ss / s.count_mu);
  return s;
}

inline void check_series(const MeanSeries& s) {
  if (s.count_mu < 2) throw domain_error("mean series needs mu >= 2");
  if (s.spread_l < 0.0) throw domain_error("mean series needs l >= 0");
}

// s/mu -+ u l / sqrt(mu).
inline IntervalResult mean_interval(const MeanSeries& s, double u) {
  check_series(s);
  const double mu = s.count_mu;
  return {s.sum_s / mu, u * s.spread_l / std::sqrt(mu), 1.0 - 2.0 * gauss_tail(u)};
}

// s2/mu2 - s1/mu1 -+ u sqrt(l2^2 mu1 + l1^2 mu2) / sqrt(mu1 mu2).
inline IntervalResult mean_diff(const MeanSeries& s1, const MeanSeries& s2, double u) {
  check_series(s1);
  check_series(s2);
  const double m1 = s1.count_mu, m2 = s2.count_mu;
  const double l1 = s1.spread_l, l2 = s2.spread_l;
  return {s2.sum_s / m2 - s1.sum_s / m1, u * std::sqrt(l2 * l2 * m1 + l1 * l1 * m2) / std::sqrt(m1 * m2),
          1.0 - 2.0 * gauss_tail(u)};
}

// Weighted combination with weights q_j = mu_j / (D^2 l_j^2),
// D^2 = sum mu_j / l_j^2, limits -+ u / D. Series with l = 0 are exact and,
// when present, fix the center with zero width.
inline IntervalResult weighted_combine(const std::vector<MeanSeries>& list, double u) {
  if (list.empty()) throw domain_error("weighted_combine needs at least one series");
  double d2 = 0.0, center = 0.0, exact_sum = 0.0;
  unsigned exact_n = 0;
  for (const auto& s : list) {
    check_series(s);
    if (s.spread_l == 0.0) {
      exact_sum += s.sum_s;
      exact_n += s.count_mu;
      continue;
    }
    const double w = s.count_mu / (s.spread_l * s.spread_l);
    d2 += w;
    center += w * s.sum_s / s.count_mu;
  }
  if (d2 == 0.0) throw domain_error("weighted_combine: l = 0 for every series");
  const double P = 1.0 - 2.0 * gauss_tail(u);
  if (exact_n > 0) return {exact_sum / exact_n, 0.0, P};
  return {center / d2, u / std::sqrt(d2), P};
}

inline constexpr unsigned max_uniform_terms = 170;

// Exact value of a finite double.
inline Rational exact_rational(double x) {
  int e = 0;
  const double f = std::frexp(x, &e);
  Rational r(Integer(static_cast<long long>(std::ldexp(f, 53))));
  e -= 53;
  const Integer two_e = boost::multiprecision::pow(Integer(2), static_cast<unsigned>(std::abs(e)));
  return e >= 0 ? r * two_e : r / two_e;
}

// sum_{j <= x} (-1)^j C(mu,j) (x-j)^mu / mu!, in exact arithmetic; the
// alternating terms cancel far beyond double range for large mu.
inline Rational irwin_hall_exact(unsigned mu, const Rational& x) {
  if (mu < 1 || mu > max_uniform_terms) throw domain_error("uniform sums support 1 <= mu <= 170");
  if (x <= 0) return Rational(0);
  if (x >= mu) return Rational(1);
  Rational sum(0);
  Integer c(1);
  for (unsigned j = 0; j <= mu && x > j; ++j) {
    Rational base = x - j, power(1);
    for (unsigned e = mu; e; e >>= 1) {
      if (e & 1) power *= base;
      base *= base;
    }
    if (j % 2) sum -= c * power;
    else sum += c * power;
    c = c * (mu - j) / (j + 1);
  }
  return sum / factorial(mu);
}

// Chance that the sum of mu independent uniform [0,1] values is at most x.
inline double irwin_hall_cdf(unsigned mu, double x) {
  if (mu < 1 || mu > max_uniform_terms) throw domain_error("uniform sums support 1 <= mu <= 170");
  if (x <= 0.0) return 0.0;
  if (x >= mu) return 1.0;
  if (x > 0.5 * mu) return 1.0 - irwin_hall_cdf(mu, mu - x);
  return to_double(irwin_hall_exact(mu, exact_rational(x)));
}

// Chance that the sum of mu uniform [0,1] values lies in [alpha, beta].
inline double uniform_sum_between(unsigned mu, double alpha, double beta) {
  if (mu < 1 || mu > max_uniform_terms) throw domain_error("uniform sums support 1 <= mu <= 170");
  if (beta < alpha) throw domain_error("uniform_sum_between needs alpha <= beta");
  const double a = std::clamp(alpha, 0.0, static_cast<double>(mu));
  const double b = std::clamp(beta, 0.0, static_cast<double>(mu));
  return to_double(irwin_hall_exact(mu, exact_rational(b)) - irwin_hall_exact(mu, exact_rational(a)));
}

// Chance that the sum of mu independent uniform values on [h-g, h+g] lies in
// [c - eps, c + eps].
inline double uniform_sum_P(unsigned mu, double g, double h, double c, double eps) {
  if (!(g > 0.0) || !(eps > 0.0) || mu < 1) throw domain_error("uniform_sum_P needs g > 0, eps > 0, mu >= 1");
  const double lo = mu * (h - g);
  const double alpha = (c - eps - lo) / (2.0 * g);
  const double beta = (c + eps - lo) / (2.0 * g);
  return uniform_sum_between(mu, alpha, beta);
}

// Mean and dispersion constants (k, h) of one variable; h is half its variance.
struct CltConstants {
  double k = 0.0;
  double h = 0.0;
};

inline CltConstants uniform_constants(double a, double b) {
  if (!(b > a)) throw domain_error("uniform_constants needs a < b");
  return {(a + b) / 2.0, (a * a + a * b + b * b) / 6.0 - (a + b) * (a + b) / 8.0};
}

inline CltConstants discrete_constants(const std::vector<double>& values) {
  if (values.empty()) throw domain_error("discrete_constants needs values");
  double k = 0.0, m2 = 0.0;
  for (double v : values) k += v;
  k /= values.size();
  for (double v : values) m2 += (v - k) * (v - k);
  return {k, m2 / values.size() / 2.0};
}

// Sum of mu variables in mu k -+ 2u sqrt(mu h), chance 1 - 2Q(u).
inline IntervalResult clt_mean_interval(unsigned mu, double k, double h, double u) {
  if (!(h > 0.0)) throw domain_error("clt_mean_interval needs h > 0");
  if (mu < 1) throw domain_error("clt_mean_interval needs mu >= 1");
  return {mu * k, 2.0 * u * std::sqrt(mu * h), 1.0 - 2.0 * gauss_tail(u)};
}

}  // namespace jurisprob::asym
