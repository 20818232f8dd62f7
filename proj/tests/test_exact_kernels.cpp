#include "jurisprob/exact_kernels.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

using namespace jurisprob;
using namespace jurisprob::exact;

TEST(BinomialPmf, SpotValues) {
  EXPECT_EQ(binomial_pmf<Rational>(2, 1, Rational(1, 2)), Rational(3, 8));
  EXPECT_EQ(binomial_pmf<Rational>(0, 4, Rational(1, 3)), Rational(16, 81));
  EXPECT_THROW(binomial_pmf<double>(0, 0, 0.5), domain_error);
  EXPECT_THROW(binomial_pmf<double>(1, 1, 1.5), domain_error);
}

TEST(BinomialPmf, SumsToOneExactly) {
  for (unsigned mu = 1; mu <= 15; ++mu) {
    const Rational p(3, 7);
    Rational s(0);
    for (unsigned m = 0; m <= mu; ++m) s += binomial_pmf(m, mu - m, p);
    EXPECT_EQ(s, 1) << "mu=" << mu;
  }
}

TEST(RepetitionTail, EqualsPmfSum) {
  for (unsigned mu = 1; mu <= 14; ++mu) {
    for (const Rational& p : {Rational(1, 2), Rational(2, 5), Rational(9, 10)}) {
      for (unsigned m = 0; m <= mu; ++m) {
        Rational s(0);
        for (unsigned j = m; j <= mu; ++j) s += binomial_pmf(j, mu - j, p);
        EXPECT_EQ(repetition_tail(m, mu - m, p), s);
        Rational below(0);
        for (unsigned j = 0; j <= m; ++j) below += binomial_pmf(j, mu - j, p);
        EXPECT_EQ(repetition_tail(m, mu - m, p, Tail::at_most), below);
      }
    }
  }
}

TEST(RepetitionTail, DoubleTracksRational) {
  const Rational p(3, 10);
  for (unsigned m : {40u, 60u, 75u}) {
    const double exact_value = to_double(repetition_tail(m, 200 - m, p));
    EXPECT_NEAR(repetition_tail<double>(m, 200 - m, 0.3), exact_value, 1e-13);
  }
}

TEST(RecurrenceOdds, EvenBetCount) {
  const auto r = recurrence_odds(1.0 / 36.0, 25);
  EXPECT_NEAR(r.r, 1.0 - std::pow(35.0 / 36.0, 25), 1e-15);
  EXPECT_NEAR(r.n_even_bet, 24.605, 1e-3);
  EXPECT_THROW(recurrence_odds(0.0, 3), domain_error);
}

TEST(ProblemOfPoints, PaperCase) {
  EXPECT_EQ(problem_of_points(Rational(2, 3), 4, 2).alpha, Rational(112, 243));
}

TEST(ProblemOfPoints, SidesSwapToOne) {
  for (unsigned a = 1; a <= 7; ++a)
    for (unsigned b = 1; b <= 7; ++b)
      for (const Rational& p : {Rational(1, 2), Rational(1, 3), Rational(5, 8)})
        EXPECT_EQ(problem_of_points(p, a, b).alpha + problem_of_points(Rational(1) - p, b, a).alpha, 1);
}

// Monte Carlo oracle: play the match out.
TEST(ProblemOfPoints, SimulatedMatches) {
  std::mt19937_64 rng(17);
  std::bernoulli_distribution win(2.0 / 3.0);
  const int trials = 200000;
  int a_wins = 0;
  for (int t = 0; t < trials; ++t) {
    int a = 4, b = 2;
    while (a > 0 && b > 0) (win(rng) ? a : b) -= 1;
    a_wins += a == 0;
  }
  const double p = 112.0 / 243.0;
  EXPECT_NEAR(static_cast<double>(a_wins) / trials, p, 4.0 * std::sqrt(p * (1 - p) / trials));
}

// Every ordered sequence of draws, balls labelled.
TEST(Hypergeometric, MatchesOrderedEnumeration) {
  for (unsigned c = 1; c <= 9; ++c) {
    for (unsigned a = 0; a <= c; ++a) {
      for (unsigned draws = 1; draws <= std::min(c, 4u); ++draws) {
        std::vector<unsigned long> hits(draws + 1, 0);
        unsigned long total = 0;
        std::vector<unsigned> idx(draws);
        // odometer over distinct ordered picks
        std::function<void(unsigned, unsigned, unsigned)> rec = [&](unsigned depth, unsigned used, unsigned w) {
          if (depth == draws) {
            ++hits[w];
            ++total;
            return;
          }
          for (unsigned ball = 0; ball < c; ++ball) {
            if (used & (1u << ball)) continue;
            rec(depth + 1, used | (1u << ball), w + (ball < a));
          }
        };
        rec(0, 0, 0);
        for (unsigned m = 0; m <= draws; ++m)
          EXPECT_EQ(hypergeometric<Rational>({a, c - a}, m, draws - m), Rational(hits[m], total));
      }
    }
  }
}

TEST(Hypergeometric, RedCards) {
  EXPECT_EQ(hypergeometric<Rational>({16, 16}, 16, 0), Rational(1, 601080390));
  EXPECT_EQ(hypergeometric<Rational>({2, 2}, 3, 0), 0);
  EXPECT_THROW(hypergeometric<Rational>({0, 0}, 0, 0), domain_error);
}

TEST(ConvolveCounts, IdenticalChancesGiveBinomial) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(1, 19);
  for (int rep = 0; rep < 20; ++rep) {
    const Rational p(num(rng), 20);
    for (unsigned mu = 1; mu <= 12; ++mu) {
      const auto d = convolve_counts(std::vector<Rational>(mu, p));
      EXPECT_EQ(d.total(), 1);
      for (unsigned m = 0; m <= mu; ++m) EXPECT_EQ(d.at(m), binomial_pmf(m, mu - m, p));
    }
  }
}

TEST(ConvolveCounts, UnequalChancesBruteForce) {
  const std::vector<Rational> p{Rational(1, 2), Rational(1, 3), Rational(3, 4), Rational(1, 5)};
  const auto d = convolve_counts(p);
  std::vector<Rational> want(p.size() + 1, Rational(0));
  for (unsigned mask = 0; mask < 16; ++mask) {
    Rational w(1);
    for (unsigned j = 0; j < 4; ++j) w *= (mask >> j & 1) ? p[j] : Rational(1) - p[j];
    want[__builtin_popcount(mask)] += w;
  }
  for (unsigned m = 0; m <= 4; ++m) EXPECT_EQ(d.at(m), want[m]);
}

TEST(DiceSum, TwoDiceAndTotals) {
  const auto d = dice_sum<Rational>(2, 6);
  EXPECT_EQ(d.at(7), Rational(1, 6));
  EXPECT_EQ(d.at(2), Rational(1, 36));
  EXPECT_EQ(d.at(13), 0);
  for (unsigned count = 1; count <= 5; ++count) EXPECT_EQ(dice_sum<Rational>(count, 6).total(), 1);
  const auto three = dice_sum<Rational>(3, 6);
  EXPECT_EQ(three.at(10), Rational(27, 216));
}

TEST(ConvolveSums, RejectsBadChances) {
  EXPECT_THROW(convolve_sums<Rational>({{0, 1}}, {{Rational(1, 2), Rational(1, 3)}}), domain_error);
  EXPECT_THROW(convolve_sums<Rational>({{0, 1}}, {{Rational(1)}}), domain_error);
}

// All C(m,n) n! ordered choices of distinct urns.
TEST(DistinctUrns, MatchesEnumeration) {
  const std::vector<Rational> all{Rational(1, 2), Rational(2, 3), Rational(1, 4), Rational(4, 5), Rational(1, 7),
                                  Rational(3, 8)};
  for (unsigned m = 1; m <= 6; ++m) {
    const std::vector<Rational> s(all.begin(), all.begin() + m);
    for (unsigned n = 1; n <= m; ++n) {
      std::vector<unsigned> order(m);
      std::iota(order.begin(), order.end(), 0);
      Rational sum(0);
      unsigned long count = 0;
      std::vector<bool> pick(m, false);
      std::fill(pick.begin(), pick.begin() + n, true);
      do {
        std::vector<unsigned> chosen;
        for (unsigned j = 0; j < m; ++j)
          if (pick[j]) chosen.push_back(j);
        do {
          Rational w(1);
          for (unsigned j : chosen) w *= s[j];
          sum += w;
          ++count;
        } while (std::next_permutation(chosen.begin(), chosen.end()));
      } while (std::prev_permutation(pick.begin(), pick.end()));
      EXPECT_EQ(count, to_double(choose(m, n) * factorial(n)));
      EXPECT_EQ(distinct_urns_all_success(s, n), sum / count);
    }
  }
  EXPECT_THROW(distinct_urns_all_success(all, 7), domain_error);
}

TEST(Lottery, ThreeNumbers) {
  const auto l = lottery_odds(90, 5, 3);
  EXPECT_EQ(l.lambda, Rational(1, 11748));
  EXPECT_NEAR(l.fair_multiple, 11748.0, 1e-9);
  EXPECT_NEAR(l.even_bet_approx, 8143.13, 0.01);
  EXPECT_NEAR(l.even_bet_drawings, 8142.75, 0.01);
  EXPECT_THROW(lottery_odds(90, 5, 6), domain_error);
}

TEST(Petersburg, SmallFortunes) {
  // Fortune 2^beta exactly: h = 0.
  const auto e = petersburg_entry(Integer(1024), 100);
  EXPECT_EQ(e.beta, 10u);
  EXPECT_EQ(e.h, 0);
  // Direct expectation: payout 2^j capped at the fortune, j = first head.
  for (unsigned fortune : {2u, 3u, 5u, 12u, 100u}) {
    const unsigned tosses = 12;
    Rational direct(0);
    for (unsigned j = 1; j <= tosses; ++j) {
      Integer pay = Integer(1) << j;
      if (pay > fortune) pay = fortune;
      direct += Rational(pay, Integer(1) << j);
    }
    // Tails all the way: the game stops with no payout.
    EXPECT_EQ(petersburg_entry(Integer(fortune), tosses).entry, direct) << "fortune=" << fortune;
  }
}

TEST(RareEvent, MatchesDirectSum) {
  for (double w : {0.5, 3.0, 8.372}) {
    double s = 0.0, term = std::exp(-w);
    for (unsigned n = 0; n <= 20; ++n) {
      s += term;
      EXPECT_NEAR(rare_event_cdf(w, n), s, 1e-13);
      term *= w / (n + 1);
    }
  }
  EXPECT_THROW(rare_event_cdf(0.0, 1), domain_error);
}

TEST(Coincidence, GeneralFormReducesForTwo) {
  for (const Rational& p : {Rational(1, 2), Rational(1, 3), Rational(7, 9)}) {
    const auto c = coincidence_stats<Rational>(Rational(1, 10), Rational(1, 50), Rational(1, 20), 2, p, Rational(0));
    const Rational q = Rational(1) - p;
    EXPECT_EQ(c.general_m, p * p + q * q);
  }
  const auto c = coincidence_stats<Rational>(Rational(1, 5), Rational(0), Rational(1, 4), 2);
  EXPECT_EQ(c.two_coins, Rational(13, 25));
  EXPECT_EQ(c.same_coin_twice, c.two_coins);
  EXPECT_EQ(c.counter_stake_loss, Rational(2, 17));
}

TEST(OutcomeDistribution, Queries) {
  const auto d = dice_sum<Rational>(1, 6);
  EXPECT_EQ(d.at_most(3), Rational(1, 2));
  EXPECT_EQ(d.at_least(5), Rational(1, 3));
  EXPECT_EQ(d.at(0), 0);
}
