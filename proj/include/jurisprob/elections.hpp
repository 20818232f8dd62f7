#pragma once

// Electors of two parties assigned at random to colleges; chance the larger
// party carries a college, and the spread of seat counts.

#include "asymptotics.hpp"
#include "common.hpp"
#include "exact_kernels.hpp"

#include <cmath>
#include <vector>

namespace jurisprob::elections {

struct CollegeChance {
  double gamma = 0.0;  // centred, corrected argument (negative when b > a)
  double nu = 0.0;     // |gamma|
  double s = 0.0;      // party b outnumbers party a in the college
  double sigma = 0.0;  // exact tie, even mu only
};

// mu electors drawn without replacement from a + b.
inline CollegeChance college_win_chance(unsigned long a, unsigned long b, unsigned long mu) {
  const double A = static_cast<double>(a), B = static_cast<double>(b), M = static_cast<double>(mu);
  const double c = A + B;
  if (a < 1 || b < 1) throw domain_error("college_win_chance needs both parties present");
  if (mu < 2 || M >= c) throw domain_error("college_win_chance needs 2 <= mu < a + b");
  const double base = (c - M) * M * A * B * c;
  const double D = std::sqrt(2.0 * base);
  CollegeChance out;
  out.gamma = (A - B) * M * c / (2.0 * D);
  if (mu % 2 == 1) out.gamma -= c * c / (2.0 * D);
  out.nu = std::fabs(out.gamma);
  const double g2 = out.gamma * out.gamma;
  const double root = std::sqrt(2.0 * asym::pi * base);
  const double Gamma = ((A - B) * (c - 2.0 * M) * (7.0 + 4.0 * g2) + 3.0 * c * c) / (6.0 * root);
  const double tail = asym::gauss_tail(out.nu);
  out.s = (out.gamma < 0.0 ? 1.0 - tail : tail) - Gamma * std::exp(-g2);
  if (mu % 2 == 0) out.sigma = c * c * std::exp(-g2) / root;
  return out;
}

// Chance that the seat count of a party carrying each of alpha colleges with
// chance r lies in alpha r -+ u sqrt(2 alpha r (1-r)).
inline IntervalResult seat_interval(unsigned alpha, double r, double u) {
  if (!(r > 0.0 && r < 1.0)) throw domain_error("seat_interval needs 0 < r < 1");
  if (alpha < 1) throw domain_error("seat_interval needs at least one college");
  const double var2 = 2.0 * alpha * r * (1.0 - r);
  return {alpha * r, u * std::sqrt(var2),
          1.0 - 2.0 * asym::gauss_tail(u) + std::exp(-u * u) / std::sqrt(asym::pi * var2)};
}

// Chance the minority carries at most n colleges: rare_event_cdf(alpha (1-s), n).
inline double minority_tail(unsigned alpha, double loss_chance, unsigned n) {
  require_probability(loss_chance, "loss chance");
  return exact::rare_event_cdf(alpha * loss_chance, n);
}

struct CollegeGroup {
  unsigned count = 0;      // colleges of this size
  unsigned long size = 0;  // electors per college
};

struct ElectionScenario {
  std::vector<CollegeGroup> colleges;
  unsigned long a = 0;  // electors of party A
  unsigned long b = 0;  // electors of party B
};

struct GroupChance {
  CollegeGroup group;
  CollegeChance chance;
  double effective = 0.0;  // s + sigma/2, a tie counted as half a win
};

struct ScenarioReport {
  std::vector<GroupChance> groups;
  double r = 0.0;                // mean of the group chances
  IntervalResult seats;          // seats of party B
  double minority_at_most = 0.0; // party A carries at most `minority_n` colleges
  unsigned minority_n = 0;
};

// The mean r is taken over size groups, one term per group.
inline ScenarioReport scenario_report(const ElectionScenario& scn, double u, unsigned minority_n = 15) {
  if (scn.colleges.empty()) throw domain_error("scenario needs colleges");
  unsigned long total = 0;
  unsigned alpha = 0;
  for (const auto& g : scn.colleges) {
    if (g.count < 1) throw domain_error("college group with no colleges");
    total += g.count * g.size;
    alpha += g.count;
  }
  if (total != scn.a + scn.b) throw domain_error("college sizes must add up to a + b");
  ScenarioReport rep;
  double sum = 0.0;
  for (const auto& g : scn.colleges) {
    GroupChance gc{g, college_win_chance(scn.a, scn.b, g.size), 0.0};
    gc.effective = gc.chance.s + 0.5 * gc.chance.sigma;
    sum += gc.effective;
    rep.groups.push_back(gc);
  }
  rep.r = sum / scn.colleges.size();
  rep.seats = seat_interval(alpha, rep.r, u);
  rep.minority_n = minority_n;
  rep.minority_at_most = minority_tail(alpha, 1.0 - rep.r, minority_n);
  return rep;
}

}  // namespace jurisprob::elections
