#pragma once

// Court records, case tallies and the Buffon coin counts, with rates,
// stability reports and the Buffon fit built on them.

#include "asymptotics.hpp"
#include "common.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace jurisprob::data {

enum class Category { person, property, all };

inline std::string to_string(Category c) {
  switch (c) {
    case Category::person: return "person";
    case Category::property: return "property";
    case Category::all: return "all";
  }
  return "all";
}

inline Category parse_category(const std::string& s) {
  if (s == "person") return Category::person;
  if (s == "property") return Category::property;
  if (s == "all") return Category::all;
  throw domain_error("unknown category '" + s + "'");
}

struct CourtRecord {
  int year = 0;
  std::string jurisdiction;
  Category category = Category::all;
  unsigned accused = 0;
  unsigned convicted_total = 0;
  std::optional<unsigned> convicted_min_majority;  // convictions by the least majority
  std::optional<unsigned> cases_min_majority;      // cases decided by the least majority

  bool operator==(const CourtRecord&) const = default;
};

inline constexpr std::string_view csv_header =
    "year,jurisdiction,category,accused,convicted_total,convicted_min_majority,cases_min_majority";

// Assize courts 1825-1833 (the 1831 rows follow the 8-of-12 rule), the Seine
// court, and civil appeals as confirmations (convicted_total) of appeals heard
// (accused).
inline constexpr std::string_view embedded_csv = R"(year,jurisdiction,category,accused,convicted_total,convicted_min_majority,cases_min_majority
1825,france,person,1897,882,,
1826,france,person,1907,967,,
1827,france,person,1911,948,,
1828,france,person,1844,871,,
1829,france,person,1791,834,,
1830,france,person,1666,766,,
1825,france,property,4755,3155,,
1826,france,property,5081,3381,,
1827,france,property,5018,3288,,
1828,france,property,5552,3680,,
1829,france,property,5582,3641,,
1830,france,property,5296,3364,,
1825,france,all,6652,4037,,
1826,france,all,6988,4348,,398
1827,france,all,6929,4236,,373
1828,france,all,7396,4551,,373
1829,france,all,7373,4475,,395
1830,france,all,6962,4130,,372
1831,france,person,2046,743,,
1831,france,property,5560,3355,,
1831,france,all,7606,4098,,
1832,france,all,7555,4448,,
1833,france,all,6964,4105,,
1825,seine,all,802,567,,
1826,seine,all,824,527,,
1827,seine,all,675,436,,
1828,seine,all,868,559,,
1829,seine,all,908,604,,
1830,seine,all,804,484,,
1831,france_civil,all,1364,976,,
1832,france_civil,all,7706,5301,,
1833,france_civil,all,8087,5470,,
)";

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline unsigned parse_count(const std::string& s, std::size_t row, const char* field) {
  auto fail = [&] {
    return domain_error("row " + std::to_string(row) + ", field " + field + ": bad count '" + s + "'");
  };
  if (s.empty()) throw fail();
  for (char ch : s)
    if (ch < '0' || ch > '9') throw fail();
  try {
    unsigned long v = std::stoul(s);
    if (v > 0xffffffffUL) throw fail();
    return static_cast<unsigned>(v);
  } catch (const std::out_of_range&) {
    throw fail();
  }
}

}  // namespace detail

inline void validate(const CourtRecord& r, std::size_t row) {
  const std::string where = "row " + std::to_string(row);
  if (r.jurisdiction.empty()) throw domain_error(where + ", field jurisdiction: empty");
  if (r.convicted_total > r.accused)
    throw domain_error(where + ", field convicted_total: exceeds accused");
  if (r.convicted_min_majority && *r.convicted_min_majority > r.convicted_total)
    throw domain_error(where + ", field convicted_min_majority: exceeds convicted_total");
}

inline std::vector<CourtRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw domain_error("empty data file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header) throw domain_error("row 1: header must be '" + std::string(csv_header) + "'");
  std::vector<CourtRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto f = detail::split_fields(line);
    if (f.size() != 7) throw domain_error("row " + std::to_string(row) + ": expected 7 fields, got " + std::to_string(f.size()));
    CourtRecord r;
    try {
      std::size_t used = 0;
      r.year = std::stoi(f[0], &used);
      if (used != f[0].size()) throw std::invalid_argument("year");
    } catch (const std::exception&) {
      throw domain_error("row " + std::to_string(row) + ", field year: bad integer '" + f[0] + "'");
    }
    r.jurisdiction = f[1];
    try {
      r.category = parse_category(f[2]);
    } catch (const domain_error&) {
      throw domain_error("row " + std::to_string(row) + ", field category: unknown '" + f[2] + "'");
    }
    r.accused = detail::parse_count(f[3], row, "accused");
    r.convicted_total = detail::parse_count(f[4], row, "convicted_total");
    if (!f[5].empty()) r.convicted_min_majority = detail::parse_count(f[5], row, "convicted_min_majority");
    if (!f[6].empty()) r.cases_min_majority = detail::parse_count(f[6], row, "cases_min_majority");
    validate(r, row);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<CourtRecord> embedded_records() {
  std::istringstream in{std::string(embedded_csv)};
  return parse_csv(in);
}

inline std::vector<CourtRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open data file '" + path + "'");
  return parse_csv(in);
}

inline std::string to_csv(const std::vector<CourtRecord>& records) {
  std::ostringstream os;
  os << csv_header << "\n";
  for (const auto& r : records) {
    os << r.year << ',' << r.jurisdiction << ',' << to_string(r.category) << ',' << r.accused << ','
       << r.convicted_total << ',';
    if (r.convicted_min_majority) os << *r.convicted_min_majority;
    os << ',';
    if (r.cases_min_majority) os << *r.cases_min_majority;
    os << "\n";
  }
  return os.str();
}

struct Filter {
  std::string jurisdiction = "france";
  Category category = Category::all;
  int year_from = 0;
  int year_to = 9999;

  bool matches(const CourtRecord& r) const {
    return r.jurisdiction == jurisdiction && r.category == category && r.year >= year_from && r.year <= year_to;
  }
};

struct Rates {
  unsigned mu = 0;                 // accused
  unsigned a = 0;                  // convicted
  std::optional<unsigned> b;       // least-majority convictions, when every record has them
  std::size_t records = 0;

  double c() const { return static_cast<double>(a) / mu; }
  std::optional<double> b_rate() const {
    if (!b) return std::nullopt;
    return static_cast<double>(*b) / mu;
  }
};

inline Rates rates(const std::vector<CourtRecord>& records, const Filter& f) {
  Rates out;
  bool all_b = true;
  unsigned b = 0;
  for (const auto& r : records) {
    if (!f.matches(r)) continue;
    out.mu += r.accused;
    out.a += r.convicted_total;
    if (r.convicted_min_majority) b += *r.convicted_min_majority;
    else all_b = false;
    ++out.records;
  }
  if (out.records == 0) throw domain_error("filter selects no records");
  if (out.mu == 0) throw domain_error("selected records have no accused");
  if (all_b) out.b = b;
  return out;
}

// Least-majority conviction rate from two voting rules: the rate under the
// looser rule minus the rate under the stricter one.
inline double min_majority_by_difference(const std::vector<CourtRecord>& records, const Filter& looser,
                                         const Filter& stricter) {
  return rates(records, looser).c() - rates(records, stricter).c();
}

// Case counts kept apart from accused counts.
struct CaseTally {
  std::string jurisdiction;
  int year_from = 0;
  int year_to = 0;
  unsigned cases = 0;               // cases judged
  unsigned cases_min_majority = 0;  // of which decided by the least majority

  double rate() const { return static_cast<double>(cases_min_majority) / cases; }
};

inline std::vector<CaseTally> embedded_case_tallies() {
  return {{"france", 1826, 1830, 26883, 1911}, {"seine", 1826, 1830, 2963, 194}};
}

inline const CaseTally& case_tally(const std::vector<CaseTally>& tallies, const std::string& jurisdiction) {
  for (const auto& t : tallies)
    if (t.jurisdiction == jurisdiction) return t;
  throw domain_error("no case tally for '" + jurisdiction + "'");
}

struct NamedSelection {
  std::string name;
  Filter filter;
};

inline std::vector<NamedSelection> named_selections() {
  return {
      {"france_1825_1830", {"france", Category::all, 1825, 1830}},
      {"france_person_1825_1830", {"france", Category::person, 1825, 1830}},
      {"france_property_1825_1830", {"france", Category::property, 1825, 1830}},
      {"france_1831", {"france", Category::all, 1831, 1831}},
      {"france_person_1831", {"france", Category::person, 1831, 1831}},
      {"france_property_1831", {"france", Category::property, 1831, 1831}},
      {"seine_1825_1830", {"seine", Category::all, 1825, 1830}},
      {"civil_1831_1833", {"france_civil", Category::all, 1831, 1833}},
  };
}

inline Filter selection(const std::string& name) {
  for (const auto& s : named_selections())
    if (s.name == name) return s.filter;
  throw domain_error("unknown selection '" + name + "'");
}

enum class StabilityFlag { within, borderline, exceeds };

inline std::string to_string(StabilityFlag f) {
  switch (f) {
    case StabilityFlag::within: return "within limits";
    case StabilityFlag::borderline: return "borderline: slightly beyond the limits";
    case StabilityFlag::exceeds: return "beyond the limits: grounds to believe the causes changed";
  }
  return "";
}

// Observed difference up to this multiple of the limit counts as borderline.
inline constexpr double borderline_ratio = 1.05;

struct StabilityReport {
  Rates first, second;
  double rate_first = 0.0;
  double rate_second = 0.0;
  double difference = 0.0;  // rate_first - rate_second
  IntervalResult limits;    // about the observed difference; half_width is the limit
  double ratio = 0.0;       // |difference| / half_width
  StabilityFlag flag = StabilityFlag::within;
};

inline StabilityReport stability_report(const std::vector<CourtRecord>& records, const Filter& first,
                                        const Filter& second, double alpha) {
  if (!(alpha > 0.0)) throw domain_error("stability_report needs alpha > 0");
  StabilityReport rep;
  rep.first = rates(records, first);
  rep.second = rates(records, second);
  rep.rate_first = rep.first.c();
  rep.rate_second = rep.second.c();
  rep.limits = asym::stability_limits(rep.first.a, rep.first.mu, rep.second.a, rep.second.mu, alpha);
  rep.difference = rep.limits.center;
  rep.ratio = rep.limits.half_width > 0.0 ? std::fabs(rep.difference) / rep.limits.half_width : 0.0;
  if (rep.limits.half_width == 0.0) rep.flag = rep.difference == 0.0 ? StabilityFlag::within : StabilityFlag::exceeds;
  else if (rep.ratio <= 1.0) rep.flag = StabilityFlag::within;
  else if (rep.ratio <= borderline_ratio) rep.flag = StabilityFlag::borderline;
  else rep.flag = StabilityFlag::exceeds;
  return rep;
}

// a_j: series in which heads first appeared at toss j (j = 1..J).
struct BuffonCounts {
  std::vector<unsigned> a;
};

inline BuffonCounts embedded_buffon() { return {{1061, 494, 232, 137, 56, 29, 25, 8, 6}}; }

struct BuffonFit {
  unsigned m = 0;                 // series
  unsigned mu = 0;                // tosses
  double p = 0.0;                 // m / mu
  std::vector<double> ladder;     // a_1/m, 1 - a_2/a_1, 1 - a_3/a_2
  double ladder_mean = 0.0;
  std::vector<long> predicted;    // round(m p (1-p)^(j-1))
};

inline BuffonFit buffon_fit(const BuffonCounts& counts) {
  BuffonFit f;
  for (std::size_t j = 0; j < counts.a.size(); ++j) {
    f.m += counts.a[j];
    f.mu += static_cast<unsigned>(j + 1) * counts.a[j];
  }
  if (f.m < 1) throw domain_error("buffon_fit needs at least one series");
  f.p = static_cast<double>(f.m) / f.mu;
  f.ladder.push_back(static_cast<double>(counts.a[0]) / f.m);
  for (std::size_t j = 1; j < 3 && j < counts.a.size(); ++j) {
    if (counts.a[j - 1] == 0) break;
    f.ladder.push_back(1.0 - static_cast<double>(counts.a[j]) / counts.a[j - 1]);
  }
  for (double x : f.ladder) f.ladder_mean += x;
  f.ladder_mean /= f.ladder.size();
  for (std::size_t j = 0; j < counts.a.size(); ++j)
    f.predicted.push_back(std::lround(f.m * f.p * std::pow(1.0 - f.p, static_cast<double>(j))));
  return f;
}

}  // namespace jurisprob::data
