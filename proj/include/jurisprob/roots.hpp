#pragma once

// One-dimensional root bracketing and bisection.

#include "common.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace jurisprob::roots {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Sample f on a logarithmic grid of `points` over [lo, hi] and return every
// interval where it changes sign. The grid values go into `table` if given.
inline std::vector<Bracket> log_scan(const std::function<double(double)>& f, double lo, double hi,
                                     int points = 64, std::vector<std::pair<double, double>>* table = nullptr) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw domain_error("log_scan needs 0 < lo < hi, points >= 2");
  std::vector<Bracket> out;
  const double step = std::log(hi / lo) / (points - 1);
  double x_prev = lo, f_prev = f(lo);
  if (table) table->emplace_back(x_prev, f_prev);
  for (int j = 1; j < points; ++j) {
    const double x = j == points - 1 ? hi : lo * std::exp(step * j);
    const double fx = f(x);
    if (table) table->emplace_back(x, fx);
    if (std::isfinite(f_prev) && std::isfinite(fx) && ((f_prev < 0.0) != (fx < 0.0) || fx == 0.0))
      out.push_back({x_prev, x});
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

// Bisection on a sign-changing bracket until the width is below tol.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw domain_error("bisect: no sign change on bracket");
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::string format_table(const std::vector<std::pair<double, double>>& table) {
  std::ostringstream os;
  os.precision(6);
  for (const auto& [x, fx] : table) os << "  t=" << x << "  f=" << fx << "\n";
  return os.str();
}

// The unique root of f on [lo, hi]. Zero or several brackets is an error
// carrying the scan table.
inline double unique_root(const std::function<double(double)>& f, double lo, double hi,
                          const std::string& what, double tol = 1e-12, int points = 64) {
  std::vector<std::pair<double, double>> table;
  auto brackets = log_scan(f, lo, hi, points, &table);
  if (brackets.size() != 1) {
    std::ostringstream os;
    os << what << ": " << (brackets.empty() ? "no root" : "several roots") << " on [" << lo << ", " << hi
       << "]\n"
       << format_table(table);
    throw infeasible_error(os.str());
  }
  return bisect(f, brackets[0].lo, brackets[0].hi, tol);
}

}  // namespace jurisprob::roots
