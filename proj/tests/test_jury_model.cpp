#include "jurisprob/jury_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace jurisprob;
using namespace jurisprob::jury;

namespace {

const Rational grid_k[] = {Rational(1, 5), Rational(1, 2), Rational(2, 3), Rational(9, 10)};
const Rational grid_u[] = {Rational(1, 3), Rational(1, 2), Rational(3, 5), Rational(4, 5), Rational(19, 20)};

template <class F>
double integrate(F f, double a, double b, int steps = 100000) {
  double s = 0.0, h = (b - a) / steps;
  for (int j = 0; j < steps; ++j) s += f(a + (j + 0.5) * h);
  return s * h;
}

double cum(unsigned n, unsigned i, double u) { return detail::cumulative(n, i, u); }

}  // namespace

TEST(Verdict, DecisionChanceFreeOfK) {
  for (unsigned n : {3u, 9u, 12u})
    for (unsigned i = 0; 2 * i <= n; ++i)
      for (const auto& u : grid_u) {
        const Rational w0 = verdict_probs<Rational>({grid_k[0], u}, {n, i}).w;
        for (const auto& k : grid_k) EXPECT_EQ(verdict_probs<Rational>({k, u}, {n, i}).w, w0);
      }
}

TEST(Verdict, FullSplitDistributionSumsToOne) {
  for (unsigned n : {5u, 6u, 12u})
    for (const auto& k : grid_k)
      for (const auto& u : grid_u) {
        Rational s(0);
        std::optional<Rational> H;
        for (unsigned i = 0; 2 * i < n; ++i) s += verdict_probs<Rational>({k, u}, {n, i}).w;
        if (n % 2 == 0) s += *verdict_probs<Rational>({k, u}, {n, n / 2}).H;
        EXPECT_EQ(s, 1);
      }
}

// Relabel guilty/innocent and right/wrong together: votes are unchanged.
TEST(Verdict, ComplementSymmetry) {
  for (const auto& k : grid_k)
    for (const auto& u : grid_u)
      for (unsigned i = 0; i <= 5; ++i) {
        const auto a = verdict_probs<Rational>({k, u}, {12, i});
        const auto b = verdict_probs<Rational>({Rational(1) - k, Rational(1) - u}, {12, i});
        EXPECT_EQ(a.gamma, b.gamma);
        EXPECT_EQ(a.delta, b.delta);
        EXPECT_EQ(a.c, b.c);
        EXPECT_EQ(a.d, b.d);
        EXPECT_EQ(a.U, b.V);
        EXPECT_EQ(a.V, b.U);
        if (a.c != 0) {
          EXPECT_EQ(a.P + b.P, 1);
        }
        if (a.d != 0) {
          EXPECT_EQ(a.Q + b.Q, 1);
        }
        EXPECT_EQ(a.D + b.D, a.c);
      }
}

TEST(Verdict, CorrectnessDependsOnMargin) {
  for (const auto& k : grid_k)
    for (const auto& u : grid_u)
      for (unsigned n = 3; n <= 12; ++n)
        for (unsigned i = 0; 2 * i < n; ++i) {
          const auto a = verdict_probs<Rational>({k, u}, {n, i});
          const auto b = verdict_probs<Rational>({k, u}, {n + 2, i + 1});
          EXPECT_EQ(a.p, b.p);
          EXPECT_EQ(a.q, b.q);
        }
}

TEST(Verdict, ConvictionRateBelowPrior) {
  for (double k = 0.51; k < 1.0; k += 0.04)
    for (double u = 0.51; u < 1.0; u += 0.04)
      for (unsigned i = 0; i <= 5; ++i) EXPECT_LT(verdict_probs<double>({k, u}, {12, i}).c, k);
}

TEST(Verdict, WrongConvictionIdentity) {
  for (double k = 0.1; k < 1.0; k += 0.2)
    for (double u = 0.55; u < 1.0; u += 0.1)
      for (unsigned i = 0; i <= 5; ++i) {
        const auto v = verdict_probs<double>({k, u}, {12, i});
        const double Pi = (1.0 - k) * cum(12, 12 - i - 1, u) / (1.0 - v.c);
        EXPECT_NEAR(v.D, 1.0 - k - Pi * (1.0 - v.c), 1e-12);
      }
}

TEST(Verdict, OddsForm) {
  const auto v = verdict_probs<double>({0.6, 0.7}, {12, 4});
  EXPECT_NEAR(v.p, correctness_odds(0.6, 0.7 / 0.3, 4), 1e-14);
}

TEST(Verdict, MonteCarloJury) {
  const double k = 0.62, u = 0.71;
  std::mt19937_64 rng(12);
  std::bernoulli_distribution guilty(k), right(u);
  const int trials = 300000;
  int convict_7_5 = 0, convict_7_5_guilty = 0;
  for (int t = 0; t < trials; ++t) {
    const bool g = guilty(rng);
    int votes = 0;
    for (int j = 0; j < 12; ++j) votes += right(rng) == g;
    if (votes == 7) {
      ++convict_7_5;
      convict_7_5_guilty += g;
    }
  }
  const auto v = verdict_probs<double>({k, u}, {12, 5});
  EXPECT_NEAR(static_cast<double>(convict_7_5) / trials, v.gamma, 4 * std::sqrt(v.gamma / trials));
  EXPECT_NEAR(static_cast<double>(convict_7_5_guilty) / convict_7_5, v.p,
              4 * std::sqrt(v.p * (1 - v.p) / convict_7_5));
}

TEST(Verdict, Rejections) {
  EXPECT_THROW(verdict_probs<double>({0.5, 0.7}, {12, 7}), domain_error);
  EXPECT_THROW(verdict_probs<double>({1.5, 0.7}, {12, 1}), domain_error);
  EXPECT_THROW(verdict_probs<double>({0.5, 0.7}, {0, 0}), domain_error);
}

TEST(SingleJuror, MatchesPanelOfOne) {
  const auto s = single_juror<Rational>({Rational(2, 3), Rational(3, 4)});
  const auto v = verdict_probs<Rational>({Rational(2, 3), Rational(3, 4)}, {1, 0});
  EXPECT_EQ(s.gamma, v.gamma);
  EXPECT_EQ(s.p, v.p);
  EXPECT_EQ(s.q, v.q);
}

TEST(Panel, EqualReliabilitiesReproduceVerdicts) {
  for (const auto& k : grid_k)
    for (const auto& u : grid_u) {
      const auto d = panel_distinct(k, std::vector<Rational>(12, u));
      for (unsigned i = 0; i <= 5; ++i) {
        const auto v = verdict_probs<Rational>({k, u}, {12, i});
        EXPECT_EQ(d.splits[12 - i].composite, v.gamma);
        EXPECT_EQ(d.splits[i].composite, v.delta);
        EXPECT_EQ(d.splits[12 - i].guilt, v.p);
      }
      Rational s(0);
      for (const auto& sp : d.splits) s += sp.composite;
      EXPECT_EQ(s, 1);
    }
}

TEST(Panel, DistinctJurorsBruteForce) {
  const std::vector<Rational> r{Rational(3, 5), Rational(7, 10), Rational(9, 10), Rational(1, 2)};
  const Rational k(1, 3);
  const auto d = panel_distinct(k, r);
  std::vector<Rational> g(5, Rational(0)), inn(5, Rational(0));
  for (unsigned mask = 0; mask < 16; ++mask) {  // bit set: juror judges correctly
    Rational w(1);
    for (unsigned j = 0; j < 4; ++j) w *= (mask >> j & 1) ? r[j] : Rational(1) - r[j];
    const unsigned right = __builtin_popcount(mask);
    g[right] += w;
    inn[4 - right] += w;
  }
  for (unsigned x = 0; x <= 4; ++x) {
    EXPECT_EQ(d.splits[x].if_guilty, g[x]);
    EXPECT_EQ(d.splits[x].if_innocent, inn[x]);
  }
  EXPECT_EQ(d.coincidence, Rational(189, 1000) + Rational(6, 1000));
  EXPECT_THROW(panel_distinct(k, std::vector<Rational>(21, Rational(1, 2))), domain_error);
}

// Flat prior on the juror's chance, weighted by the split likelihood.
double split_mass(unsigned n, unsigned i, double lo, double hi) {
  return integrate([&](double u) { return std::pow(u, n - i) * std::pow(1.0 - u, i); }, lo, hi);
}

TEST(Laplace, ErrorMatchesIntegral) {
  for (unsigned n : {3u, 7u, 12u})
    for (unsigned i = 0; 2 * i < n; ++i)
      EXPECT_NEAR(to_double(laplace_error(n, i)), split_mass(n, i, 0.0, 0.5) / split_mass(n, i, 0.0, 1.0), 1e-8);
  EXPECT_EQ(laplace_error(12, 0), Rational(1, 8192));
  EXPECT_THROW(laplace_error(12, 6), domain_error);
}

TEST(Laplace, IntervalMatchesIntegral) {
  for (unsigned i : {0u, 3u, 5u})
    for (double delta : {0.1, 0.25, 0.448}) {
      const double want = split_mass(12, i, 0.5 - delta, 0.5 + delta) / split_mass(12, i, 0.0, 1.0);
      EXPECT_NEAR(laplace_interval(12, i, delta), want, 1e-8);
    }
  EXPECT_NEAR(laplace_interval(12, 5, 0.5), 1.0, 1e-12);
  EXPECT_THROW(laplace_interval(12, 5, 0.6), domain_error);
}

TEST(Laplace, IntervalExactAtHalfIsOne) {
  EXPECT_EQ(laplace_interval<Rational>(12, 3, Rational(1, 2)), 1);
}

TEST(Unanimity, MatchesVerdicts) {
  const auto s = unanimity_stats({0.64, 0.75}, 12);
  const auto v = verdict_probs<double>({0.64, 0.75}, {12, 0});
  EXPECT_NEAR(s.gamma0, v.gamma, 1e-15);
  EXPECT_NEAR(s.delta0, v.delta, 1e-15);
  EXPECT_NEAR(1.0 - std::pow(1.0 - v.w, s.cases_for_even_bet), 0.5, 1e-12);
}
