#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "liesylow/cli.hpp"
#include "liesylow/groups.hpp"
#include "liesylow/records.hpp"
#include "liesylow/sylow.hpp"

using namespace liesylow;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<OutputRecord> records(const std::string& text) {
  std::vector<OutputRecord> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(OutputRecord::from_json_line(line));
  return out;
}

OutputRecord last(const std::string& text) { return records(text).back(); }

}  // namespace

TEST_CASE("order") {
  const Run g2 = run({"order", "--family", "G2", "--q", "3"});
  CHECK(g2.code == kExitPass);
  const OutputRecord r = last(g2.out);
  CHECK(r.get_string("order") == "4245696");
  CHECK(r.get_string("M") == "6");
  CHECK(r.get_string("exponents") == "1:2,2:2,3:1,6:1");

  const Run alt = run({"order", "--family", "ALT", "--n", "5"});
  CHECK(alt.code == kExitPass);
  CHECK(last(alt.out).get_string("order") == "60");

  const Run bad = run({"order", "--family", "A", "--n", "1", "--q", "2"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("(n,q) not in {(1,2),(1,3)}") != std::string::npos);
  CHECK(bad.out.empty());
}

TEST_CASE("sylow") {
  CHECK(last(run({"sylow", "--family", "E8", "--q", "2", "--r", "31"}).out).get_string("sylow_order") ==
        "961");
  const Run trivial = run({"sylow", "--family", "A", "--n", "1", "--q", "5", "--r", "11"});
  CHECK(trivial.code == kExitPass);
  CHECK(last(trivial.out).get_string("status") == "trivial");

  std::vector<std::string> orders;
  for (const auto& rec : records(run({"sylow", "--family", "2F4d", "--q", "2"}).out)) {
    orders.push_back(rec.get_string("sylow_order"));
  }
  CHECK(orders == std::vector<std::string>{"2048", "27", "25", "13"});

  CHECK(run({"sylow", "--family", "A", "--n", "1", "--q", "5", "--r", "6"}).code == kExitUsage);
}

TEST_CASE("exit codes are disjoint") {
  CHECK(run({"check", "theorem1", "--families", "exceptional", "--below-q0"}).code == kExitPass);
  CHECK(run({"check", "theorem1", "--families", "exceptional", "--below-q0", "--no-allow-expected"})
            .code == kExitViolation);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"check", "nope"}).code == kExitUsage);
  CHECK(run({"order", "--family", "G2", "--q", "3", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"order", "--family", "H4", "--q", "3"}).code == kExitUsage);
  const Run budget = run({"check", "theorem1", "--families", "E8", "--q-min", "27", "--q-max", "27",
                          "--rho-iterations", "1"});
  CHECK(budget.code == kExitComputation);
  CHECK(last(budget.out).get_string("verdict") == "error");
}

TEST_CASE("theorem1 summary lists the expected exceptions") {
  const Run r = run({"check", "theorem1", "--families", "exceptional", "--below-q0"});
  const OutputRecord summary = last(r.out);
  CHECK(summary.get_string("verdict") == "match");
  CHECK(summary.get_string("expected") == "(3D4,3,13)(E6,3,13)(E8,2,31)(F4,3,13)(G2,3,13)");
  CHECK(summary.get_string("violations") == "5");
}

TEST_CASE("output does not depend on the worker count") {
  const std::vector<std::string> base{"check", "buekenhout", "--families", "classical",
                                      "--n-max", "5", "--q-max", "16"};
  auto with_jobs = [&](const char* jobs) {
    auto args = base;
    args.insert(args.end(), {"--jobs", jobs});
    return run(args);
  };
  const Run one = with_jobs("1");
  CHECK(one.code == kExitPass);
  CHECK(with_jobs("3").out == one.out);
  CHECK(with_jobs("8").out == one.out);
}

TEST_CASE("integers in records re-parse to library values") {
  std::mt19937 rng(11);
  const std::vector<std::pair<Family, unsigned>> shapes{
      {Family::A, 3}, {Family::TwistedA, 4}, {Family::E7, 0}, {Family::F4, 0}, {Family::D, 5}};
  for (const auto& [family, n] : shapes) {
    for (unsigned long q : {3ul, 4ul, 7ul, 9ul}) {
      const GroupId g = GroupId::make(family, n, q);
      std::vector<std::string> args{"sylow", "--family", std::string(family_name(family)), "--q",
                                    std::to_string(q)};
      if (n) args.insert(args.end(), {"--n", std::to_string(n)});
      const auto recs = records(run(args).out);
      const SylowSpectrum s = sylow_spectrum(g);
      REQUIRE(recs.size() == s.entries.size());
      for (std::size_t k = 0; k < recs.size(); ++k) {
        REQUIRE(BigInt(recs[k].get_string("sylow_order")) == s.entries[k].order);
        REQUIRE(BigInt(recs[k].get_string("p")) == s.entries[k].prime);
      }
      const auto ord = records(run([&] {
                                 auto a = args;
                                 a[0] = "order";
                                 return a;
                               }())
                                   .out);
      REQUIRE(BigInt(ord.back().get_string("order")) == order(g));
    }
  }
  // Random records survive the JSON-lines encoding.
  std::uniform_int_distribution<std::int64_t> small(-1000000, 1000000);
  for (int trial = 0; trial < 200; ++trial) {
    OutputRecord r;
    r.set("op", "x").set("n", small(rng)).set("big", pow(BigInt(small(rng)), 9));
    r.set("text", std::string("a,\"b\"\n") + std::to_string(trial));
    REQUIRE(OutputRecord::from_json_line(r.to_json_line()) == r);
  }
}

TEST_CASE("csv output") {
  std::vector<OutputRecord> rs(2);
  rs[0].set("a", 1).set("b", "x,y");
  rs[1].set("a", 2).set("c", true);
  std::ostringstream out;
  write_records(out, rs, OutputFormat::Csv);
  CHECK(out.str() == "a,b,c\n1,\"x,y\",\n2,,true\n");

  const Run csv = run({"order", "--family", "G2", "--q", "3", "--format", "csv"});
  CHECK(csv.out.rfind("op,family,q,group,order", 0) == 0);
  CHECK(csv.out.find("4245696") != std::string::npos);
}

TEST_CASE("config file and flag precedence") {
  const auto path = std::filesystem::temp_directory_path() / "liesylow_test.conf";
  {
    std::ofstream f(path);
    f << "rho-iterations = 1\n";
  }
  const std::vector<std::string> grid{"check", "theorem1", "--families", "E8", "--q-min", "27",
                                      "--q-max", "27"};
  auto args = grid;
  args.insert(args.begin(), {"--config", path.string()});
  CHECK(run(args).code == kExitComputation);
  args.insert(args.end(), {"--rho-iterations", "4194304"});
  CHECK(run(args).code == kExitPass);
  std::filesystem::remove(path);
}

TEST_CASE("jobs environment variable") {
  ::setenv(kJobsEnvVar, "2", 1);
  const Run r = run({"check", "qbound", "--families", "A", "--n-max", "3", "--q-max", "9"});
  CHECK(r.code == kExitPass);
  ::setenv(kJobsEnvVar, "zero", 1);
  CHECK(run({"check", "qbound", "--families", "A", "--n-max", "3", "--q-max", "9"}).code ==
        kExitUsage);
  ::unsetenv(kJobsEnvVar);
}

TEST_CASE("alt check reports the failing sizes") {
  const Run r = run({"check", "alt", "--n-max", "30"});
  CHECK(r.code == kExitViolation);
  std::vector<std::string> failing;
  for (const auto& rec : records(r.out)) {
    if (rec.get_string("op") == "alt" && rec.get_string("verdict") == "fail") {
      failing.push_back(rec.get_string("n"));
    }
  }
  CHECK(failing == std::vector<std::string>{"5", "6", "8"});
}
