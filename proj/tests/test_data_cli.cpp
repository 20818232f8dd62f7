#include "jurisprob/data.hpp"
#include "jurisprob/reproduce.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace jurisprob;
using namespace jurisprob::data;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(JURISPROB_CLI) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<CourtRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

std::string header() { return std::string(csv_header) + "\n"; }

}  // namespace

TEST(Records, EmbeddedTotals) {
  const auto recs = embedded_records();
  const auto all = rates(recs, selection("france_1825_1830"));
  EXPECT_EQ(all.mu, 42300u);
  EXPECT_EQ(all.a, 25777u);
  const auto civil = rates(recs, selection("civil_1831_1833"));
  EXPECT_EQ(civil.a, 11747u);
  EXPECT_EQ(civil.mu, 17157u);
  EXPECT_NEAR(rates(recs, selection("france_person_1825_1830")).c(), 0.4782, 5e-5);
  EXPECT_NEAR(rates(recs, selection("seine_1825_1830")).c(), 0.6509, 5e-5);
  EXPECT_NEAR(min_majority_by_difference(recs, selection("france_1825_1830"), selection("france_1831")), 0.0706,
              5e-5);
  const auto tallies = embedded_case_tallies();
  EXPECT_NEAR(case_tally(tallies, "france").rate(), 0.0711, 5e-5);
  EXPECT_NEAR(case_tally(tallies, "seine").rate(), 0.0655, 5e-5);
  EXPECT_THROW(case_tally(tallies, "belgium"), domain_error);
  EXPECT_THROW(selection("nowhere"), domain_error);
}

TEST(Records, SerializationIsIdempotent) {
  const auto recs = embedded_records();
  const std::string once = to_csv(recs);
  EXPECT_EQ(parse(once), recs);
  EXPECT_EQ(to_csv(parse(once)), once);
  const auto odd = parse(header() + "1830,x,person,10,4,2,\r\n\n1831,x,all,5,5,,3\n");
  ASSERT_EQ(odd.size(), 2u);
  EXPECT_EQ(odd[0].convicted_min_majority, 2u);
  EXPECT_FALSE(odd[0].cases_min_majority.has_value());
  EXPECT_EQ(parse(to_csv(odd)), odd);
}

TEST(Records, MalformedRowsNameRowAndField) {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const domain_error& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  EXPECT_NE(message(header() + "1830,x,all,10,11,,\n").find("row 2, field convicted_total"), std::string::npos);
  EXPECT_NE(message(header() + "1830,x,all,10,5,,\n1831,x,all,ten,5,,\n").find("row 3, field accused"),
            std::string::npos);
  EXPECT_NE(message(header() + "1830,x,cats,10,5,,\n").find("field category"), std::string::npos);
  EXPECT_NE(message(header() + "18x0,x,all,10,5,,\n").find("field year"), std::string::npos);
  EXPECT_NE(message(header() + "1830,x,all,10,5,6,\n").find("convicted_min_majority"), std::string::npos);
  EXPECT_NE(message(header() + "1830,x,all,10\n").find("expected 7 fields"), std::string::npos);
  EXPECT_NE(message("year,place\n").find("header"), std::string::npos);
  EXPECT_NE(message("").find("empty"), std::string::npos);
  EXPECT_THROW(load_records("/nonexistent/file.csv"), domain_error);
}

TEST(Rates, UnionIsCountWeighted) {
  const auto recs = embedded_records();
  const auto a = rates(recs, {"france", Category::all, 1825, 1827});
  const auto b = rates(recs, {"france", Category::all, 1828, 1830});
  const auto u = rates(recs, {"france", Category::all, 1825, 1830});
  EXPECT_EQ(u.mu, a.mu + b.mu);
  EXPECT_EQ(u.a, a.a + b.a);
  EXPECT_NEAR(u.c(), (a.c() * a.mu + b.c() * b.mu) / (a.mu + b.mu), 1e-15);
  EXPECT_THROW(rates(recs, {"france", Category::all, 1700, 1701}), domain_error);
}

TEST(Stability, Examples) {
  const auto recs = embedded_records();
  const auto st = stability_report(recs, {"france", Category::all, 1825, 1827}, {"france", Category::all, 1828, 1830}, 1.2);
  EXPECT_NEAR(st.limits.half_width, 0.00805, 5e-5);
  EXPECT_NEAR(st.difference, 0.0082, 5e-5);
  EXPECT_EQ(st.flag, StabilityFlag::borderline);
  const auto se = stability_report(recs, {"seine", Category::all, 1825, 1829}, {"seine", Category::all, 1830, 1830}, 2.0);
  EXPECT_EQ(se.flag, StabilityFlag::exceeds);
  EXPECT_NE(to_string(se.flag).find("grounds to believe"), std::string::npos);
  const auto same = stability_report(recs, selection("france_1825_1830"), selection("france_1825_1830"), 2.0);
  EXPECT_EQ(same.difference, 0.0);
  EXPECT_EQ(same.flag, StabilityFlag::within);
}

TEST(Buffon, Fit) {
  const auto f = buffon_fit(embedded_buffon());
  EXPECT_EQ(f.m, 2048u);
  EXPECT_EQ(f.mu, 4040u);
  EXPECT_NEAR(f.p, 0.50693, 5e-6);
  ASSERT_EQ(f.ladder.size(), 3u);
  // printed ladder is rounded loosely in the last place
  EXPECT_NEAR(f.ladder[0], 0.51806, 5e-5);
  EXPECT_NEAR(f.ladder[1], 0.53441, 5e-5);
  EXPECT_NEAR(f.ladder[2], 0.53033, 5e-5);
  EXPECT_NEAR(f.ladder_mean, 0.52760, 5e-5);
  EXPECT_EQ(f.predicted[0], 1038);
  EXPECT_EQ(f.predicted[1], 512);
  EXPECT_EQ(f.predicted[2], 252);
  EXPECT_EQ(buffon_fit({{1}}).p, 1.0);
  EXPECT_THROW(buffon_fit({{0, 0}}), domain_error);
}

TEST(Reproduce, DeterministicAndComplete) {
  const auto a = repro::reproduce(), b = repro::reproduce();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_EQ(a[j].id, b[j].id);
    EXPECT_EQ(a[j].computed_text, b[j].computed_text);
    EXPECT_EQ(a[j].pass, b[j].pass);
    EXPECT_FALSE(a[j].citation.empty());
  }
  for (int crit = 1; crit <= 14; ++crit)
    EXPECT_TRUE(std::any_of(a.begin(), a.end(), [&](const auto& r) { return r.criterion == crit; })) << crit;
}

TEST(Reproduce, HarnessFlagsPerturbedValue) {
  repro::Suite s;
  s.near(1, "probe", "probe", 0.5, 0.5, 1e-4);
  s.near(1, "probe.off", "probe", 0.5, 0.5002, 1e-4);
  const auto rows = s.take();
  EXPECT_TRUE(rows[0].pass);
  EXPECT_FALSE(rows[1].pass);
  EXPECT_FALSE(repro::all_pass(rows));
}

TEST(Cli, JuryAcceptsFractions) {
  const auto r = run("--json jury --k 1/2 --u 3/4 --i 5 --exact");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  const Rational U5 = Rational(7254) * 2187, V5 = 239122;
  EXPECT_EQ(j["P"]["exact"].get<std::string>(), Rational(U5 / (U5 + V5)).str());
}

TEST(Cli, EstimateRoundTrip) {
  const auto r = run("--json estimate --c 0.6 --gamma 0.0001");
  if (r.status == 0) {
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_GT(j["fit"]["k"].get<double>(), 0.5);
  } else {
    EXPECT_EQ(r.status, 1);  // infeasible input is a failed fit, not bad usage
  }
  const auto obs = run("--json estimate --mu 42300 --a 25777 --b 2987");
  ASSERT_EQ(obs.status, 0) << obs.out;
  const auto j = nlohmann::json::parse(obs.out);
  EXPECT_NEAR(j["c"].get<double>(), 25777.0 / 42300.0, 1e-15);
  const auto sel = run("--json estimate --selection france_1825_1830 --b-rate 0.0706");
  ASSERT_EQ(sel.status, 0) << sel.out;
  EXPECT_NEAR(nlohmann::json::parse(sel.out)["fit"]["k"].get<double>(), 0.6391, 1e-3);
  EXPECT_EQ(run("estimate --selection france_1825_1830").status, 2);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("jury --k abc --u 0.7").status, 2);
  EXPECT_EQ(run("jury --k 0.5").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("estimate --selection nowhere").status, 2);
  EXPECT_EQ(run("elections --a 10 --b 10 --colleges 2by10").status, 2);
}

TEST(Cli, ReproduceJsonSchema) {
  const auto r = run("--json reproduce");
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_FALSE(j.empty());
  bool all = true;
  for (const auto& row : j) {
    for (const char* key : {"id", "citation", "paper_value", "computed", "tolerance", "pass"})
      EXPECT_TRUE(row.contains(key)) << key;
    all = all && row["pass"].get<bool>();
  }
  EXPECT_EQ(r.status, all ? 0 : 1);
  EXPECT_EQ(run("--json reproduce").out, r.out);
}

TEST(Cli, DataFileReplacesEmbedded) {
  const std::string path = testing::TempDir() + "jurisprob_records.csv";
  {
    std::ofstream f(path);
    f << header() << "1825,france,all,1000,600,,\n1826,france,all,1000,600,,\n";
  }
  const auto r = run("--json --data " + path + " stability --first-from 1825 --first-to 1825 --second-from 1826 --second-to 1826");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["difference"].get<double>(), 0.0);
  {
    std::ofstream f(path);
    f << header() << "1825,france,all,10,600,,\n";
  }
  EXPECT_EQ(run("--data " + path + " stability").status, 2);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run("buffon").status, 0);
  EXPECT_EQ(run("witness --q 1/2 --p 9/10 --p 9/10").status, 0);
  EXPECT_EQ(run("approx --m 60 --n 40 --p 0.6 --u 2").status, 0);
  EXPECT_EQ(run("elections --a 95062 --b 105062 --colleges 153x654 306x327").status, 0);
  const auto a = run("--json lln-demo --trials 100000 --seed 5");
  const auto b = run("--json lln-demo --trials 100000 --seed 5");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_NEAR(j["checkpoints"].back()["frequency"].get<double>(), j["mean_chance"].get<double>(), 0.01);
}
