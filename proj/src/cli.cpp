#include "liesylow/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "liesylow/cyclotomic.hpp"
#include "liesylow/records.hpp"
#include "liesylow/theorems.hpp"

namespace liesylow {

namespace {

const std::vector<std::string> kCheckNames{"theorem1", "factor-count", "qbound",
                                           "table3",   "remark2",      "artin",
                                           "buekenhout", "alt",        "identities"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string family;
  unsigned n = 0;
  std::string q;
  std::string r;

  std::string format = "jsonl";
  unsigned jobs = 0;
  std::uint64_t rho_iterations = FactorOptions{}.rho_iterations;

  std::string check;
  std::string families = "all";
  unsigned n_min = 1;
  unsigned n_max = 0;  // 0: per-check default
  unsigned long q_min = 2;
  unsigned long q_max = 32;
  bool below_q0 = false;
  bool from_q0 = false;
  bool allow_expected = true;
  unsigned long psl2_q_max = 8192;

  ScanOptions scan() const {
    ScanOptions o;
    o.jobs = jobs == 0 ? default_jobs() : jobs;
    o.factor.rho_iterations = rho_iterations;
    return o;
  }
};

struct Outcome {
  std::vector<OutputRecord> records;
  int code = kExitPass;
};

BigInt parse_int(const std::string& text, const char* what) {
  try {
    BigInt v(text, 10);
    return v;
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(what) + " must be a decimal integer, got '" + text + "'");
  }
}

std::string join(const std::vector<BigInt>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + xs[k].get_str();
  return s;
}

std::string exponent_string(const std::map<unsigned, unsigned>& e) {
  std::string s;
  for (const auto& [i, v] : e) s += (s.empty() ? "" : ",") + std::to_string(i) + ":" + std::to_string(v);
  return s;
}

std::string rational_string(unsigned num, unsigned den) {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::string rational_string(const BigRational& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

std::string approx(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

OutputRecord group_record(const std::string& op, const GroupId& g) {
  OutputRecord rec;
  rec.set("op", op);
  rec.set("family", std::string(family_name(g.family())));
  if (g.is_alternating() || is_classical(g.family())) rec.set("n", g.n());
  if (!g.is_alternating()) rec.set("q", g.q().value());
  rec.set("group", g.describe());
  return rec;
}

GroupId group_from(const Settings& s) {
  const auto family = parse_family(s.family);
  if (!family) throw UsageError("unknown family '" + s.family + "'");
  if ((*family == Family::Alt || is_classical(*family)) && s.n == 0) {
    throw UsageError("family " + s.family + " needs --n");
  }
  if (*family == Family::Alt) return GroupId::alternating(s.n);
  if (s.q.empty()) throw UsageError("family " + s.family + " needs --q");
  return GroupId::make(*family, s.n, parse_int(s.q, "--q"));
}

std::vector<Family> parse_families(const std::string& spec) {
  if (spec == "all" || spec == "lie") return {lie_families().begin(), lie_families().end()};
  if (spec == "classical") return {classical_families().begin(), classical_families().end()};
  if (spec == "exceptional") return {exceptional_families().begin(), exceptional_families().end()};
  std::vector<Family> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto f = parse_family(item);
    if (!f) throw UsageError("unknown family '" + item + "' in --families");
    out.push_back(*f);
  }
  if (out.empty()) throw UsageError("--families is empty");
  return out;
}

Grid grid_from(const Settings& s, unsigned default_n_max) {
  Grid g;
  g.families = parse_families(s.families);
  g.n_min = s.n_min;
  g.n_max = s.n_max == 0 ? default_n_max : s.n_max;
  g.q_min = s.q_min;
  g.q_max = s.q_max;
  g.below_q0 = s.below_q0;
  g.from_q0 = s.from_q0;
  if (g.n_min > g.n_max || g.q_min > g.q_max) throw UsageError("empty grid: " + g.describe());
  return g;
}

std::vector<GroupId> lie_groups(const Grid& grid) {
  auto groups = enumerate_groups(grid);
  std::erase_if(groups, [](const GroupId& g) { return g.is_alternating(); });
  return groups;
}

OutputRecord summary(const std::string& check, std::size_t cells, std::size_t failed,
                     std::size_t failures) {
  OutputRecord rec;
  rec.set("op", "summary");
  rec.set("check", check);
  rec.set("cells", static_cast<unsigned long>(cells));
  rec.set("failed", static_cast<unsigned long>(failed));
  rec.set("failures", static_cast<unsigned long>(failures));
  rec.set("verdict", failures ? "error" : (failed ? "fail" : "pass"));
  return rec;
}

int code_for(std::size_t failed, std::size_t failures) {
  if (failures) return kExitComputation;
  return failed ? kExitViolation : kExitPass;
}

// Runs fn on every group; fn returns (passed, record).
template <class Fn>
Outcome per_cell(const std::string& check, const std::vector<GroupId>& groups, const Settings& s, Fn fn) {
  auto cells = scan_groups(groups, s.scan(), fn);
  Outcome out;
  std::size_t failed = 0, failures = 0;
  for (auto& cell : cells) {
    if (!cell.result) {
      ++failures;
      OutputRecord rec = group_record(check, cell.group);
      rec.set("verdict", "error").set("error", cell.failure);
      out.records.push_back(std::move(rec));
      continue;
    }
    auto& [passed, rec] = *cell.result;
    if (!passed) ++failed;
    rec.set("verdict", passed ? "pass" : "fail");
    out.records.push_back(std::move(rec));
  }
  out.records.push_back(summary(check, cells.size(), failed, failures));
  out.code = code_for(failed, failures);
  return out;
}

Outcome check_theorem1_cmd(const Settings& s) {
  const Grid grid = grid_from(s, 12);
  const ScanReport rep = scan_exceptions(grid, s.scan(), s.allow_expected);
  const std::set<ExceptionKey> expected(rep.expected.begin(), rep.expected.end());
  Outcome out;
  for (const auto& cell : rep.cells) {
    OutputRecord rec = group_record("theorem1", cell.group);
    if (!cell.result) {
      rec.set("verdict", "error").set("error", cell.failure);
      out.records.push_back(std::move(rec));
      continue;
    }
    std::vector<BigInt> bad;
    bool all_expected = true;
    for (const auto& res : *cell.result) {
      if (res.holds) continue;
      bad.push_back(res.r);
      if (!expected.count(exception_key(res))) all_expected = false;
    }
    rec.set("order", GroupContext(cell.group).order);
    rec.set("primes_checked", static_cast<unsigned long>(cell.result->size()));
    rec.set("violations", join(bad));
    rec.set("verdict", bad.empty() ? "pass" : (all_expected ? "expected" : "violation"));
    out.records.push_back(std::move(rec));
  }
  for (const auto& v : rep.violations) {
    OutputRecord rec = group_record("theorem1-violation", v.group);
    rec.set("r", v.r);
    rec.set("sylow_order", v.sylow_order);
    rec.set("E", v.E);
    rec.set("K", rational_string(v.k_num, v.k_den));
    rec.set("lhs", v.lhs);
    rec.set("rhs", v.rhs);
    const bool is_expected = expected.count(exception_key(v)) > 0;
    rec.set("verdict", is_expected ? "expected" : "violation");
    out.records.push_back(std::move(rec));
  }
  auto keys = [](const std::vector<ExceptionKey>& ks) {
    std::string t;
    for (const auto& k : ks) t += k.describe();
    return t;
  };
  OutputRecord sum;
  sum.set("op", "summary");
  sum.set("check", "theorem1");
  sum.set("grid", rep.grid);
  sum.set("cells", static_cast<unsigned long>(rep.cells.size()));
  sum.set("failures", static_cast<unsigned long>(rep.failures()));
  sum.set("violations", static_cast<unsigned long>(rep.violations.size()));
  sum.set("expected", keys(rep.expected));
  sum.set("unexpected", keys(rep.unexpected));
  sum.set("missing", keys(rep.missing));
  sum.set("verdict", rep.failures() ? "error" : (rep.match() ? "match" : "mismatch"));
  out.records.push_back(std::move(sum));
  out.code = rep.failures() ? kExitComputation : (rep.match() ? kExitPass : kExitViolation);
  return out;
}

Outcome check_factor_count_cmd(const Settings& s) {
  return per_cell("factor-count", lie_groups(grid_from(s, 12)), s, [&](const GroupId& g) {
    const GroupContext ctx(g);
    std::vector<BigInt> bad;
    const auto primes = admissible_primes(g, s.scan().factor);
    for (const BigInt& r : primes) {
      const FactorCountResult fc = check_factor_count(ctx, r);
      const bool structural_ok = structural_valuation(ctx, r) == valuation(ctx.order, r);
      if (!fc.holds() || !structural_ok) bad.push_back(r);
    }
    OutputRecord rec = group_record("factor-count", g);
    rec.set("primes_checked", static_cast<unsigned long>(primes.size()));
    rec.set("failing_r", join(bad));
    return std::pair{bad.empty(), rec};
  });
}

Outcome check_qbound_cmd(const Settings& s) {
  auto groups = lie_groups(grid_from(s, 12));
  std::erase_if(groups, [](const GroupId& g) { return !is_classical(g.family()); });
  return per_cell("qbound", groups, s, [](const GroupId& g) {
    const QBoundResult qb = check_q_bound_classical(g);
    OutputRecord rec = group_record("qbound", g);
    rec.set("q_index", qb.largest.index).set("q_exponent", qb.largest.exponent);
    rec.set("Q", qb.largest.value).set("a", qb.a);
    return std::pair{qb.holds, rec};
  });
}

Outcome check_table3_cmd(const Settings& s) {
  auto groups = lie_groups(grid_from(s, 12));
  std::erase_if(groups, [](const GroupId& g) { return !is_exceptional(g.family()); });
  return per_cell("table3", groups, s, [](const GroupId& g) {
    const Table3Result t = check_table3(g);
    OutputRecord rec = group_record("table3", g);
    rec.set("q_index", t.largest.index).set("q_exponent", t.largest.exponent);
    rec.set("argmax", t.argmax_holds).set("applies", t.applies).set("bound", t.bound_holds);
    return std::pair{t.holds(), rec};
  });
}

Outcome check_remark2_cmd(const Settings& s) {
  return per_cell("remark2", lie_groups(grid_from(s, 12)), s, [&](const GroupId& g) {
    const GroupContext ctx(g);
    std::vector<BigInt> bad;
    std::size_t checked = 0;
    for (const BigInt& r : admissible_primes(g, s.scan().factor)) {
      if (ctx.row.is_exception(g.q().value(), r)) continue;
      ++checked;
      if (!check_remark2(ctx, r).holds()) bad.push_back(r);
    }
    OutputRecord rec = group_record("remark2", g);
    rec.set("rank", ctx.row.lie_rank).set("K", rational_string(ctx.row.k_num, ctx.row.k_den));
    rec.set("M", ctx.row.M).set("primes_checked", static_cast<unsigned long>(checked));
    rec.set("failing_r", join(bad));
    return std::pair{bad.empty(), rec};
  });
}

Outcome check_artin_cmd(const Settings& s) {
  std::set<GroupId> groups;
  for (const GroupId& g : lie_groups(grid_from(s, 12))) groups.insert(g);
  for (const BigInt& q : prime_powers_in(2, s.psl2_q_max)) {
    if (auto g = GroupId::try_make(Family::A, 1, q)) groups.insert(*g);
  }
  groups.insert(GroupId::make(Family::TwistedA, 2, 3));
  groups.insert(GroupId::make(Family::TwistedA, 3, 2));
  const std::vector<GroupId> list(groups.begin(), groups.end());
  return per_cell("artin", list, s, [&](const GroupId& g) {
    const SylowSpectrum spec = sylow_spectrum(g, s.scan().factor);
    const LargestSylowClass c = classify_largest_sylow(spec);
    const LargestSylowCategory predicted = predicted_category(g);
    const CharacteristicSizeResult size = check_characteristic_size(GroupContext(g));
    OutputRecord rec = group_record("artin", g);
    rec.set("top_prime", c.prime).set("top_order", spec.entries.front().order);
    rec.set("characteristic", c.is_characteristic);
    rec.set("category", std::string(category_name(c.category)));
    rec.set("predicted", std::string(category_name(predicted)));
    rec.set("size_bounds", size.holds());
    const bool ok = c.category == predicted && size.holds();
    return std::pair{ok, rec};
  });
}

Outcome check_buekenhout_cmd(const Settings& s) {
  return per_cell("buekenhout", lie_groups(grid_from(s, 12)), s, [&](const GroupId& g) {
    const BuekenhoutResult b = check_buekenhout(g, s.scan().factor);
    std::vector<BigInt> primes;
    for (const auto& c : b.report.contributors) primes.push_back(c.prime);
    OutputRecord rec = group_record("buekenhout", g);
    rec.set("good_contributors", join(primes));
    rec.set("secondary", static_cast<unsigned long>(b.report.secondary_count()));
    rec.set("exempt", b.exempt).set("near_tie", b.report.near_tie);
    if (!b.report.undecided.empty()) rec.set("undecided", join(b.report.undecided));
    return std::pair{b.holds(), rec};
  });
}

Outcome check_alt_cmd(const Settings& s) {
  const unsigned n_max = s.n_max == 0 ? 2000 : s.n_max;
  std::vector<unsigned> ns;
  for (unsigned n = std::max(5u, s.n_min); n <= n_max; ++n) ns.push_back(n);
  const auto results = parallel_map(ns, s.scan().jobs, [](unsigned n) { return check_alternating(n); });
  Outcome out;
  std::size_t failed = 0;
  for (const auto& a : results) {
    OutputRecord rec = group_record("alt", GroupId::alternating(a.n));
    rec.set("p1", a.first.prime).set("n1", a.first.exponent);
    rec.set("p2", a.second.prime).set("n2", a.second.exponent);
    rec.set("irregular", a.irregular).set("bound", a.bound_holds);
    rec.set("verdict", a.holds() ? "pass" : "fail");
    if (!a.holds()) ++failed;
    out.records.push_back(std::move(rec));
  }
  out.records.push_back(summary("alt", results.size(), failed, 0));
  out.code = code_for(failed, 0);
  return out;
}

Outcome check_identities_cmd(const Settings& s) {
  Outcome out;
  std::size_t cells = 0, failed = 0;
  auto emit = [&](OutputRecord rec, bool ok) {
    ++cells;
    if (!ok) ++failed;
    rec.set("verdict", ok ? "pass" : "fail");
    out.records.push_back(std::move(rec));
  };
  for (unsigned long q = 2; q <= 9; ++q) {
    bool minus_ok = true, plus_ok = true;
    for (unsigned i = 1; i <= 210; ++i) minus_ok = minus_ok && check_minus_identity(i, q);
    for (unsigned i = 1; i <= 105; ++i) plus_ok = plus_ok && check_plus_identity(i, q);
    OutputRecord a;
    a.set("op", "identity-minus").set("q", q).set("i_max", 210u);
    emit(a, minus_ok);
    OutputRecord b;
    b.set("op", "identity-plus").set("q", q).set("i_max", 105u);
    emit(b, plus_ok);
  }
  for (unsigned long q : {2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 9ul, 16ul}) {
    bool ok = true;
    unsigned long pairs_with_common = 0;
    for (unsigned j = 2; j <= 60; ++j) {
      for (unsigned i = 1; i < j; ++i) {
        const CommonDivisorResult c = check_common_divisors(i, j, q, s.scan().factor);
        if (!c.primes.empty()) ++pairs_with_common;
        ok = ok && c.holds;
      }
    }
    OutputRecord rec;
    rec.set("op", "common-divisor").set("q", q).set("j_max", 60u);
    rec.set("pairs_with_common_prime", pairs_with_common);
    emit(rec, ok);
  }
  for (unsigned long q = 2; q <= 9; ++q) {
    const InequalityOneResult r = check_inequality_one(q, 40);
    OutputRecord rec;
    rec.set("op", "inequality-one").set("q", q).set("terms", 40u);
    rec.set("lower", rational_string(r.lower)).set("upper", rational_string(r.upper));
    rec.set("lower_approx", approx(r.lower.get_d())).set("upper_approx", approx(r.upper.get_d()));
    emit(rec, r.holds);
  }
  for (const GroupId& g : lie_groups(grid_from(s, 12))) {
    const GroupContext ctx(g);
    const BigInt lhs = ctx.structure.evaluate(g.q().value());
    const BigInt rhs = ctx.structure.d * ctx.order * (g.is_tits() ? 2 : 1);
    const TableCrossCheck t = check_table_constants(g);
    OutputRecord rec = group_record("factorization-identity", g);
    rec.set("d", ctx.structure.d).set("e0", ctx.structure.e0);
    rec.set("exponents", exponent_string(ctx.structure.exponents)).set("M", t.computed_M);
    emit(rec, lhs == rhs && t.holds());
  }
  for (Family f : lie_families()) {
    bool ok = true;
    unsigned checked = 0;
    const unsigned top = is_classical(f) ? 50 : 0;
    for (unsigned n = 0; n <= top; ++n) {
      for (unsigned long q = 2; q <= 32; ++q) {
        auto g = GroupId::try_make(f, n, q);
        if (!g) continue;
        ++checked;
        ok = ok && check_table_constants(*g).holds();
        break;
      }
    }
    OutputRecord rec;
    rec.set("op", "table-constants").set("family", std::string(family_name(f)));
    rec.set("ranks_checked", checked);
    emit(rec, ok && checked > 0);
  }
  out.records.push_back(summary("identities", cells, failed, 0));
  out.code = code_for(failed, 0);
  return out;
}

Outcome run_check(const Settings& s) {
  static const std::map<std::string, std::function<Outcome(const Settings&)>> dispatch{
      {"theorem1", check_theorem1_cmd},   {"factor-count", check_factor_count_cmd},
      {"qbound", check_qbound_cmd},       {"table3", check_table3_cmd},
      {"remark2", check_remark2_cmd},     {"artin", check_artin_cmd},
      {"buekenhout", check_buekenhout_cmd}, {"alt", check_alt_cmd},
      {"identities", check_identities_cmd},
  };
  return dispatch.at(s.check)(s);
}

Outcome run_order(const Settings& s) {
  const GroupId g = group_from(s);
  OutputRecord rec = group_record("order", g);
  rec.set("order", order(g));
  if (!g.is_alternating()) {
    const CycloFactorization f = structural_factorization(g);
    if (g.is_tits()) rec.set("structure_of", "2F4(2)");
    rec.set("d", f.d).set("e0", f.e0).set("exponents", exponent_string(f.exponents));
    rec.set("M", f.max_index());
  }
  rec.set("verdict", "ok");
  return {{rec}, kExitPass};
}

Outcome run_sylow(const Settings& s) {
  const GroupId g = group_from(s);
  Outcome out;
  if (!s.r.empty()) {
    const BigInt r = parse_int(s.r, "--r");
    if (!is_prime(r)) throw UsageError("--r must be prime, got " + r.get_str());
    const SylowOrder so = sylow_order(g, r);
    OutputRecord rec = group_record("sylow", g);
    rec.set("r", r);
    rec.set("status", so.trivial() ? "trivial" : "ok");
    rec.set("exponent", so.exponent);
    if (!so.trivial()) rec.set("sylow_order", so.order);
    rec.set("verdict", "ok");
    out.records.push_back(std::move(rec));
    return out;
  }
  const SylowSpectrum spec = sylow_spectrum(g, s.scan().factor);
  const GoodContributorReport good = good_contributors(spec);
  auto is_good = [&](const BigInt& p) {
    return std::any_of(good.contributors.begin(), good.contributors.end(),
                       [&](const GoodContributor& c) { return c.prime == p; });
  };
  unsigned rank = 1;
  for (const auto& e : spec.entries) {
    OutputRecord rec = group_record("spectrum", g);
    rec.set("rank", rank++);
    rec.set("p", e.prime).set("exponent", e.exponent).set("sylow_order", e.order);
    rec.set("ratio_approx", approx(ratio_estimate(spec.entries.front().order, e.order)));
    rec.set("good_contributor", is_good(e.prime));
    rec.set("verdict", "ok");
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Orders, Sylow spectra and bound verification for finite simple groups of Lie type",
               "liesylow"};
  app.set_config("--config", "", "Read `key = value` defaults from a file");
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_option("--jobs", s.jobs, "Worker threads (default: all cores)")->envname(kJobsEnvVar);
  app.add_option("--rho-iterations", s.rho_iterations, "Pollard-Brent iteration cap per attempt");
  app.add_option("--families", s.families, "classical, exceptional, all, or a comma list");
  app.add_option("--n-min", s.n_min, "Smallest rank parameter");
  app.add_option("--n-max", s.n_max, "Largest rank parameter (alt: largest degree)");
  app.add_option("--q-min", s.q_min, "Smallest field size");
  app.add_option("--q-max", s.q_max, "Largest field size");
  app.add_flag("--below-q0", s.below_q0, "Exceptional families only below their q0");
  app.add_flag("--from-q0", s.from_q0, "Exceptional families only from their q0");
  app.add_flag("--allow-expected,!--no-allow-expected", s.allow_expected,
               "Treat listed exceptions as expected");
  app.add_option("--psl2-q-max", s.psl2_q_max, "Largest q for the PSL(2,q) sweep of the artin check");

  auto add_group_options = [&](CLI::App* sub, bool with_r) {
    sub->add_option("--family", s.family, "A, 2A, B, C, D, 2D, 2B2, 3D4, E6, 2E6, E7, E8, F4, 2F4d, G2, 2G2, ALT")
        ->required();
    sub->add_option("--n", s.n, "Rank parameter (classical) or degree (ALT)");
    sub->add_option("--q", s.q, "Field size");
    if (with_r) sub->add_option("--r", s.r, "Prime");
  };
  CLI::App* order_cmd = app.add_subcommand("order", "Order and cyclotomic factorization of a group");
  add_group_options(order_cmd, false);
  CLI::App* sylow_cmd = app.add_subcommand("sylow", "One Sylow order, or the full Sylow spectrum");
  add_group_options(sylow_cmd, true);
  CLI::App* check_cmd = app.add_subcommand("check", "Run a verification scan");
  check_cmd->add_option("name", s.check, "Check to run")->required()->check(CLI::IsMember(kCheckNames));

  std::vector<const char*> argv{"liesylow"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    Outcome outcome;
    if (order_cmd->parsed()) {
      outcome = run_order(s);
    } else if (sylow_cmd->parsed()) {
      outcome = run_sylow(s);
    } else {
      outcome = run_check(s);
    }
    write_records(out, outcome.records, s.format == "csv" ? OutputFormat::Csv : OutputFormat::JsonLines);
    return outcome.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidGroup& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FactorizationIncomplete& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace liesylow
