#include "liesylow/theorems.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "liesylow/cyclotomic.hpp"

namespace liesylow {

namespace {

bool divides(const BigInt& r, const BigInt& n) {
  return mpz_divisible_p(n.get_mpz_t(), r.get_mpz_t()) != 0;
}

// Largest k with m * r^k <= limit.
unsigned floor_log_ratio(const BigInt& r, unsigned long m, unsigned long limit) {
  unsigned k = 0;
  BigInt v = BigInt(m) * r;
  while (v <= limit) {
    ++k;
    v *= r;
  }
  return k;
}

// index == m * r^k for some k >= 0
bool in_chain(unsigned index, unsigned long m, const BigInt& r) {
  if (index % m != 0) return false;
  BigInt rest = index / m;
  while (rest > 1 && divides(r, rest)) rest /= r;
  return rest == 1;
}

void require_coprime_divisor(const GroupContext& ctx, const BigInt& r, const char* what) {
  if (r == ctx.group.characteristic()) {
    throw std::invalid_argument(std::string(what) + ": r = " + r.get_str() +
                                " is the characteristic of " + ctx.group.describe());
  }
  if (!is_prime(r) || !divides(r, ctx.order)) {
    throw std::invalid_argument(std::string(what) + ": " + r.get_str() +
                                " is not a prime divisor of |" + ctx.group.describe() + "|");
  }
}

}  // namespace

GroupContext::GroupContext(GroupId g)
    : group(std::move(g)),
      order(liesylow::order(group)),
      structure(structural_factorization(group)),
      row(theorem_row(group)) {}

BoundCheckResult check_theorem1(const GroupContext& ctx, const BigInt& r) {
  require_coprime_divisor(ctx, r, "check_theorem1");
  BoundCheckResult out{ctx.group, r, sylow_order(ctx.group, ctx.order, r).order, 0, 0, 1, false, 0, 0};
  out.E = floor_log(r, ctx.row.M) + 1;
  out.k_num = ctx.row.k_num;
  out.k_den = ctx.row.k_den;
  out.lhs = pow(out.sylow_order, out.k_num);
  out.rhs = pow(ctx.order, static_cast<unsigned long>(out.E) * out.k_den);
  out.holds = out.lhs <= out.rhs;
  return out;
}

BoundCheckResult check_theorem1(const GroupId& g, const BigInt& r) {
  return check_theorem1(GroupContext(g), r);
}

std::vector<BigInt> admissible_primes(const GroupId& g, const FactorOptions& options) {
  const BigInt group_order = order(g);
  std::vector<BigInt> out;
  for (const BigInt& p : order_primes(g, options)) {
    if (p != g.characteristic() && divides(p, group_order)) out.push_back(p);
  }
  return out;
}

FactorCountResult check_factor_count(const GroupContext& ctx, const BigInt& r) {
  require_coprime_divisor(ctx, r, "check_factor_count");
  const BigInt& q = ctx.group.q().value();
  const unsigned M = ctx.structure.max_index();
  FactorCountResult out;
  out.m = mult_order(q, r);
  out.pattern_holds = true;
  for (const auto& [i, e] : ctx.structure.exponents) {
    if (!divides(r, phi_eval(i, q))) continue;
    out.divisible.push_back(i);
    if (!in_chain(i, out.m, r)) out.pattern_holds = false;
  }
  out.bound = floor_log_ratio(r, out.m, M) + 1;
  out.count_holds = out.divisible.size() <= out.bound;
  out.largest = largest_cyclo_factor(ctx.structure, q);
  out.chain_exponent = 1 + floor_log(r, M);
  out.chain_holds = pow_le(sylow_order(ctx.group, ctx.order, r).order, 1, out.largest.value,
                           out.chain_exponent);
  return out;
}

FactorCountResult check_factor_count(const GroupId& g, const BigInt& r) {
  return check_factor_count(GroupContext(g), r);
}

unsigned structural_valuation(const GroupContext& ctx, const BigInt& r) {
  const BigInt& q = ctx.group.q().value();
  const unsigned long m = mult_order(q, r);
  unsigned total = 0;
  for (const auto& [i, e] : ctx.structure.exponents) {
    if (in_chain(i, m, r)) total += e * valuation(phi_eval(i, q), r);
  }
  const unsigned from_d = valuation(ctx.structure.d, r);
  if (from_d > total) throw std::logic_error("structural_valuation: d has more " + r.get_str() + "-part than d|T|");
  return total - from_d;
}

QBoundResult check_q_bound_classical(const GroupContext& ctx) {
  const Family f = ctx.group.family();
  if (!is_classical(f)) {
    throw std::invalid_argument("check_q_bound_classical: " + ctx.group.describe() + " is not classical");
  }
  QBoundResult out;
  out.largest = largest_cyclo_factor(ctx.structure, ctx.group.q().value());
  out.a = (f == Family::A || f == Family::B || f == Family::C) ? 1 : 2;
  out.holds = pow_le(out.largest.value, ctx.group.n(), ctx.order, out.a);
  return out;
}

QBoundResult check_q_bound_classical(const GroupId& g) {
  return check_q_bound_classical(GroupContext(g));
}

Table3Result check_table3(const GroupContext& ctx) {
  if (!ctx.row.exceptional) {
    throw std::invalid_argument("check_table3: " + ctx.group.describe() + " is not exceptional");
  }
  const ExceptionalConstants& t = *ctx.row.exceptional;
  const BigInt& q = ctx.group.q().value();
  const auto values = cyclo_factor_values(ctx.structure, q);
  Table3Result out;
  out.largest = largest_cyclo_factor(ctx.structure, q);
  out.argmax_holds = out.largest.index == t.q_index && out.largest.exponent == t.q_exponent &&
                     std::count_if(values.begin(), values.end(), [&](const CycloFactor& c) {
                       return c.value == out.largest.value;
                     }) == 1;
  out.applies = q >= t.q0;
  if (out.applies) {
    // Q^(k_num/k_den) * d0 <= d |T|, raised to k_den.
    const BigInt lhs = pow(out.largest.value, ctx.row.k_num) * pow(BigInt(t.d0), ctx.row.k_den);
    const BigInt rhs = pow(ctx.structure.d * ctx.order, ctx.row.k_den);
    out.bound_holds = lhs <= rhs;
  }
  return out;
}

Table3Result check_table3(const GroupId& g) { return check_table3(GroupContext(g)); }

Remark2Result check_remark2(const GroupContext& ctx, const BigInt& r) {
  require_coprime_divisor(ctx, r, "check_remark2");
  const unsigned rank = ctx.row.lie_rank;
  Remark2Result out;
  out.k_holds = 2 * ctx.row.k_num >= rank * ctx.row.k_den;
  out.m_holds = ctx.row.M <= 4 * (rank + 1);
  out.exponent = 2 * floor_log(r, BigInt(4 * (rank + 1)) * r);
  out.bound_holds = pow_le(sylow_order(ctx.group, ctx.order, r).order, rank, ctx.order, out.exponent);
  return out;
}

Remark2Result check_remark2(const GroupId& g, const BigInt& r) {
  return check_remark2(GroupContext(g), r);
}

std::map<unsigned, unsigned> closed_form_exponents(Family family, unsigned n) {
  std::map<unsigned, unsigned> e;
  auto put = [&](unsigned i, unsigned v) {
    if (v > 0) e[i] = v;
  };
  auto lcm2 = [](unsigned i) { return std::lcm(2u, i); };
  switch (family) {
    case Family::A:
      put(1, n);
      for (unsigned i = 2; i <= n + 1; ++i) put(i, (n + 1) / i);
      break;
    case Family::TwistedA:
      put(2, n);
      for (unsigned i = 1; i <= 2 * (n + 1); ++i) {
        if (i == 2) continue;
        put(i, i % 4 == 2 ? 2 * (n + 1) / i : (n + 1) / lcm2(i));
      }
      break;
    case Family::B:
    case Family::C:
      for (unsigned i = 1; i <= 2 * n; ++i) put(i, 2 * n / lcm2(i));
      break;
    case Family::D:
      for (unsigned i = 1; i <= 2 * n; ++i) {
        const bool split = n % i != 0 && (2 * n) % i == 0;
        put(i, split ? 2 * n / i - 1 : 2 * n / lcm2(i));
      }
      break;
    case Family::TwistedD:
      for (unsigned i = 1; i <= 2 * n; ++i) put(i, 2 * n / lcm2(i) - (n % i == 0 ? 1 : 0));
      break;
    default:
      throw std::invalid_argument("closed_form_exponents: classical families only");
  }
  return e;
}

TableCrossCheck check_table_constants(const GroupId& g) {
  const CycloFactorization f = structural_factorization(g);
  const TheoremRow row = theorem_row(g);
  TableCrossCheck out;
  out.computed_M = f.max_index();
  out.m_matches = out.computed_M == row.M;
  if (is_classical(g.family())) {
    out.closed_form_matches = closed_form_exponents(g.family(), g.n()) == f.exponents;
  }
  out.k_holds = 2 * row.k_num >= row.lie_rank * row.k_den;
  out.m_rank_holds = row.M <= 4 * (row.lie_rank + 1);
  return out;
}

std::string_view category_name(LargestSylowCategory c) {
  switch (c) {
    case LargestSylowCategory::Generic: return "Generic";
    case LargestSylowCategory::MersennePSL2: return "MersennePSL2";
    case LargestSylowCategory::FermatPSL2: return "FermatPSL2";
    case LargestSylowCategory::PSL28: return "PSL28";
    case LargestSylowCategory::PSU33: return "PSU33";
    case LargestSylowCategory::PSU42: return "PSU42";
    case LargestSylowCategory::Unexplained: return "Unexplained";
  }
  return "?";
}

LargestSylowCategory predicted_category(const GroupId& g) {
  if (g.is_alternating()) throw std::invalid_argument("predicted_category: Lie type groups only");
  const PrimePower& q = g.q();
  if (g.family() == Family::A && g.n() == 1) {
    if (q.exponent() == 1 && q.prime() > 2 && mpz_popcount(BigInt(q.value() + 1).get_mpz_t()) == 1) {
      return LargestSylowCategory::MersennePSL2;
    }
    if (q.prime() == 2 && is_prime(q.value() + 1)) return LargestSylowCategory::FermatPSL2;
    if (q.value() == 8) return LargestSylowCategory::PSL28;
  }
  if (g.family() == Family::TwistedA && g.n() == 2 && q.value() == 3) return LargestSylowCategory::PSU33;
  if (g.family() == Family::TwistedA && g.n() == 3 && q.value() == 2) return LargestSylowCategory::PSU42;
  return LargestSylowCategory::Generic;
}

LargestSylowClass classify_largest_sylow(const SylowSpectrum& s) {
  const GroupId& g = s.group;
  if (g.is_alternating()) throw std::invalid_argument("classify_largest_sylow: Lie type groups only");
  LargestSylowClass out;
  out.prime = s.entries.front().prime;
  out.is_characteristic = out.prime == g.characteristic();
  if (out.is_characteristic) return out;
  const LargestSylowCategory guess = predicted_category(g);
  BigInt expected_prime = 0;
  switch (guess) {
    case LargestSylowCategory::MersennePSL2:
    case LargestSylowCategory::PSU33:
      expected_prime = 2;
      break;
    case LargestSylowCategory::FermatPSL2:
      expected_prime = g.q().value() + 1;
      break;
    case LargestSylowCategory::PSL28:
    case LargestSylowCategory::PSU42:
      expected_prime = 3;
      break;
    default:
      break;
  }
  out.category = expected_prime == out.prime ? guess : LargestSylowCategory::Unexplained;
  return out;
}

LargestSylowClass classify_largest_sylow(const GroupId& g, const FactorOptions& options) {
  return classify_largest_sylow(sylow_spectrum(g, options));
}

BuekenhoutResult check_buekenhout(const SylowSpectrum& s) {
  BuekenhoutResult out{good_contributors(s)};
  const GroupId& g = s.group;
  out.exempt = (g.family() == Family::A && g.n() <= 2) ||
               (g.family() == Family::TwistedA && g.n() == 2);
  out.at_most_one = out.report.secondary_count() <= 1;
  out.small_noncharacteristic =
      std::all_of(out.report.contributors.begin(), out.report.contributors.end(),
                  [](const GoodContributor& c) { return c.is_characteristic || c.prime <= 5; });
  return out;
}

BuekenhoutResult check_buekenhout(const GroupId& g, const FactorOptions& options) {
  return check_buekenhout(sylow_spectrum(g, options));
}

CharacteristicSizeResult check_characteristic_size(const GroupContext& ctx) {
  CharacteristicSizeResult out;
  out.sylow = characteristic_sylow(ctx.group);
  out.lower_holds = !pow_le(out.sylow, 3, ctx.order, 1);
  out.upper_holds = pow_le(out.sylow, 2, ctx.order, 1);
  return out;
}

AlternatingResult check_alternating(unsigned n) {
  const GroupId g = GroupId::alternating(n);
  const SylowSpectrum s = sylow_spectrum(g);
  AlternatingResult out;
  out.n = n;
  std::tie(out.first, out.second) = largest_two(s);
  out.irregular = n == 5 || n == 6 || n == 7 || n == 9;
  const bool regular_pair = out.first.prime == 2 && out.second.prime == 3;
  out.pair_holds = regular_pair != out.irregular;
  out.bound_holds = pow_le(out.first.order, 1000, order(g), 363);
  return out;
}

bool check_minus_identity(unsigned i, const BigInt& q) {
  BigInt product = 1;
  for (unsigned long k : divisors(i)) product *= phi_eval(static_cast<unsigned>(k), q);
  return product == pow(q, i) - 1;
}

bool check_plus_identity(unsigned i, const BigInt& q) {
  BigInt product = 1;
  for (unsigned long k : divisors(2ul * i)) {
    if (i % k != 0) product *= phi_eval(static_cast<unsigned>(k), q);
  }
  return product == pow(q, i) + 1;
}

CommonDivisorResult check_common_divisors(unsigned i, unsigned j, const BigInt& q,
                                          const FactorOptions& options) {
  CommonDivisorResult out;
  const BigInt a = phi_eval(i, q), b = phi_eval(j, q);
  mpz_gcd(out.gcd.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  out.holds = true;
  const Factorization common = factorize_or_throw(out.gcd, options);
  for (const auto& e : common.entries()) {
    out.primes.push_back(e.prime);
    // j = i r^k with k >= 1
    const bool ok = j > i && j % i == 0 && in_chain(j / i, 1, e.prime);
    if (!ok) out.holds = false;
  }
  return out;
}

InequalityOneResult check_inequality_one(const BigInt& q, unsigned terms) {
  const EulerProductBounds b = euler_product_bounds(q, terms);
  BigRational low_edge = 1 - BigRational(1, q) - BigRational(1, q * q);
  low_edge.canonicalize();
  BigRational high_edge = low_edge + BigRational(1, q * q * q);
  high_edge.canonicalize();
  return {b.lower, b.upper, low_edge < b.lower && b.upper <= high_edge};
}

std::string Grid::describe() const {
  std::string s = "families=";
  for (std::size_t k = 0; k < families.size(); ++k) {
    if (k) s += ",";
    s += family_name(families[k]);
  }
  s += " n=" + std::to_string(n_min) + ".." + std::to_string(n_max);
  s += " q=" + std::to_string(q_min) + ".." + std::to_string(q_max);
  if (below_q0) s += " below-q0";
  if (from_q0) s += " from-q0";
  return s;
}

std::vector<GroupId> enumerate_groups(const Grid& grid) {
  std::set<GroupId> out;
  const std::vector<BigInt> qs = prime_powers_in(grid.q_min, grid.q_max);
  for (Family f : grid.families) {
    if (f == Family::Alt) {
      for (unsigned n = std::max(5u, grid.n_min); n <= grid.n_max; ++n) {
        out.insert(GroupId::alternating(n));
      }
      continue;
    }
    const bool classical = is_classical(f);
    for (unsigned n = classical ? grid.n_min : 0; n <= (classical ? grid.n_max : 0); ++n) {
      for (const BigInt& q : qs) {
        auto g = GroupId::try_make(f, n, q);
        if (!g) continue;
        if (!classical) {
          const unsigned long q0 = theorem_row(*g).exceptional->q0;
          if (grid.below_q0 && q >= q0) continue;
          if (grid.from_q0 && q < q0) continue;
        }
        out.insert(*g);
      }
    }
  }
  return {out.begin(), out.end()};
}

std::string ExceptionKey::describe() const {
  std::string s = "(" + std::string(family_name(family));
  if (is_classical(family)) s += "," + std::to_string(n);
  return s + "," + q.get_str() + "," + r.get_str() + ")";
}

bool operator==(const ExceptionKey& a, const ExceptionKey& b) {
  return a.family == b.family && a.n == b.n && a.q == b.q && a.r == b.r;
}

bool operator<(const ExceptionKey& a, const ExceptionKey& b) {
  if (a.family != b.family) return a.family < b.family;
  if (a.n != b.n) return a.n < b.n;
  if (a.q != b.q) return a.q < b.q;
  return a.r < b.r;
}

ExceptionKey exception_key(const BoundCheckResult& r) {
  return {r.group.family(), r.group.n(), r.group.q().value(), r.r};
}

std::size_t ScanReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c.result; }));
}

ScanReport scan_exceptions(const Grid& grid, const ScanOptions& options, bool allow_expected) {
  std::vector<GroupId> groups = enumerate_groups(grid);
  std::erase_if(groups, [](const GroupId& g) { return g.is_alternating(); });
  ScanReport report;
  report.grid = grid.describe();
  report.cells = scan_groups(groups, options, [&](const GroupId& g) {
    const GroupContext ctx(g);
    std::vector<BoundCheckResult> results;
    for (const BigInt& r : admissible_primes(g, options.factor)) results.push_back(check_theorem1(ctx, r));
    return results;
  });

  std::set<ExceptionKey> violated, expected;
  for (const auto& cell : report.cells) {
    if (!cell.result) continue;
    for (const auto& res : *cell.result) {
      if (res.holds) continue;
      report.violations.push_back(res);
      violated.insert(exception_key(res));
    }
    if (!allow_expected) continue;
    for (const auto& [q, r] : theorem_row(cell.group).exceptions) {
      if (cell.group.q().value() == q) expected.insert({cell.group.family(), cell.group.n(), BigInt(q), BigInt(r)});
    }
  }
  report.expected.assign(expected.begin(), expected.end());
  std::set_difference(violated.begin(), violated.end(), expected.begin(), expected.end(),
                      std::back_inserter(report.unexpected));
  std::set_difference(expected.begin(), expected.end(), violated.begin(), violated.end(),
                      std::back_inserter(report.missing));
  return report;
}

}  // namespace liesylow
