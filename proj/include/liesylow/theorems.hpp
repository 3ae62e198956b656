// Per-instance verification of the Sylow bound, its supporting lemmas and
// the classical facts it refines, plus grid scans over many groups.
//
// Every verdict is an exact integer comparison. Rational exponents such as
// K = 7/2 are cleared by raising both sides to the denominator.
#ifndef LIESYLOW_THEOREMS_HPP
#define LIESYLOW_THEOREMS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liesylow/groups.hpp"
#include "liesylow/parallel.hpp"
#include "liesylow/sylow.hpp"

namespace liesylow {

/// Data shared by all checks on one Lie-type group, computed once.
struct GroupContext {
  explicit GroupContext(GroupId g);

  GroupId group;
  BigInt order;
  /// Cyclotomic structure (2F4(2) for the Tits group).
  CycloFactorization structure;
  TheoremRow row;
};

// ---------------------------------------------------------------------------
// Main bound: |R|^K_num <= |T|^(E * K_den) with E = floor(log_r M) + 1.

struct BoundCheckResult {
  GroupId group;
  BigInt r;
  BigInt sylow_order;
  unsigned E = 0;
  unsigned k_num = 0;
  unsigned k_den = 1;
  bool holds = false;
  BigInt lhs;
  BigInt rhs;
};

/// Rejects r equal to the characteristic and r not dividing |T|.
BoundCheckResult check_theorem1(const GroupContext& ctx, const BigInt& r);
BoundCheckResult check_theorem1(const GroupId& g, const BigInt& r);

/// Primes r dividing |T| other than the characteristic, ascending.
std::vector<BigInt> admissible_primes(const GroupId& g, const FactorOptions& options = {});

// ---------------------------------------------------------------------------
// Factor-count lemma and the chain |R| <= Q(T)^(1 + floor(log_r M)).

struct FactorCountResult {
  unsigned long m = 0;             // order of q mod r
  std::vector<unsigned> divisible;  // indices i with e_i > 0 and r | Phi_i(q)
  unsigned bound = 0;              // floor(log_r(M/m)) + 1
  bool count_holds = false;
  /// Every divisible index is m * r^k.
  bool pattern_holds = false;
  CycloFactor largest;
  unsigned chain_exponent = 0;  // 1 + floor(log_r M)
  bool chain_holds = false;

  bool holds() const { return count_holds && pattern_holds && chain_holds; }
};

FactorCountResult check_factor_count(const GroupContext& ctx, const BigInt& r);
FactorCountResult check_factor_count(const GroupId& g, const BigInt& r);

/// v_r(|T|) recomputed from the cyclotomic structure:
/// sum over i in {m, mr, mr^2, ...} of e_i * v_r(Phi_i(q)), minus v_r(d).
unsigned structural_valuation(const GroupContext& ctx, const BigInt& r);

// ---------------------------------------------------------------------------
// Q(T) bounds.

struct QBoundResult {
  CycloFactor largest;
  unsigned a = 1;  // Q(T)^n <= |T|^a
  bool holds = false;
};

/// Classical families only.
QBoundResult check_q_bound_classical(const GroupContext& ctx);
QBoundResult check_q_bound_classical(const GroupId& g);

struct Table3Result {
  CycloFactor largest;
  bool argmax_holds = false;  // largest factor is Phi_index^exponent, uniquely
  bool applies = false;       // q >= q0
  bool bound_holds = false;   // Q^K * d0 <= d * |T| (vacuous when !applies)

  bool holds() const { return argmax_holds && (!applies || bound_holds); }
};

/// Exceptional families only.
Table3Result check_table3(const GroupContext& ctx);
Table3Result check_table3(const GroupId& g);

struct Remark2Result {
  bool k_holds = false;  // 2K >= rank
  bool m_holds = false;  // M <= 4(rank + 1)
  unsigned exponent = 0;  // 2 * floor(log_r(4(rank+1) r))
  bool bound_holds = false;  // |R|^rank <= |T|^exponent

  bool holds() const { return k_holds && m_holds && bound_holds; }
};

Remark2Result check_remark2(const GroupContext& ctx, const BigInt& r);
Remark2Result check_remark2(const GroupId& g, const BigInt& r);

// ---------------------------------------------------------------------------
// Static table cross-checks.

/// Exponents e_i from the closed forms for classical families, computed
/// directly from n without resolving the order formula.
std::map<unsigned, unsigned> closed_form_exponents(Family family, unsigned n);

struct TableCrossCheck {
  unsigned computed_M = 0;
  bool m_matches = false;
  bool closed_form_matches = true;  // classical families only
  bool k_holds = false;
  bool m_rank_holds = false;

  bool holds() const { return m_matches && closed_form_matches && k_holds && m_rank_holds; }
};

TableCrossCheck check_table_constants(const GroupId& g);

// ---------------------------------------------------------------------------
// Largest Sylow subgroup and good contributors.

enum class LargestSylowCategory { Generic, MersennePSL2, FermatPSL2, PSL28, PSU33, PSU42, Unexplained };

std::string_view category_name(LargestSylowCategory c);

struct LargestSylowClass {
  BigInt prime;
  bool is_characteristic = false;
  LargestSylowCategory category = LargestSylowCategory::Generic;
};

LargestSylowClass classify_largest_sylow(const SylowSpectrum& s);
LargestSylowClass classify_largest_sylow(const GroupId& g, const FactorOptions& options = {});

/// The category the classical list predicts for g, from q alone.
LargestSylowCategory predicted_category(const GroupId& g);

struct BuekenhoutResult {
  GoodContributorReport report;
  /// Types A1, A2 and 2A2 are outside the at-most-one claim.
  bool exempt = false;
  bool at_most_one = false;
  bool small_noncharacteristic = false;  // every non-characteristic good prime <= 5

  bool holds() const {
    return report.undecided.empty() && (exempt || (at_most_one && small_noncharacteristic));
  }
};

BuekenhoutResult check_buekenhout(const SylowSpectrum& s);
BuekenhoutResult check_buekenhout(const GroupId& g, const FactorOptions& options = {});

/// |S_p|^3 > |T| >= |S_p|^2 for the characteristic Sylow subgroup.
struct CharacteristicSizeResult {
  BigInt sylow;
  bool lower_holds = false;
  bool upper_holds = false;

  bool holds() const { return lower_holds && upper_holds; }
};

CharacteristicSizeResult check_characteristic_size(const GroupContext& ctx);

struct AlternatingResult {
  unsigned n = 0;
  SylowEntry first;
  SylowEntry second;
  bool irregular = false;  // n in {5, 6, 7, 9}
  bool pair_holds = false;  // (p1, p2) == (2, 3) iff !irregular
  bool bound_holds = false;  // p1^(1000 n1) <= (n!/2)^363

  bool holds() const { return pair_holds && bound_holds; }
};

AlternatingResult check_alternating(unsigned n);

// ---------------------------------------------------------------------------
// Cyclotomic facts.

/// prod_{k | i} Phi_k(q) == q^i - 1.
bool check_minus_identity(unsigned i, const BigInt& q);
/// prod_{k | 2i, k not dividing i} Phi_k(q) == q^i + 1.
bool check_plus_identity(unsigned i, const BigInt& q);

struct CommonDivisorResult {
  BigInt gcd;
  std::vector<BigInt> primes;
  bool holds = false;  // each common prime r gives j = i * r^k, k >= 1
};

CommonDivisorResult check_common_divisors(unsigned i, unsigned j, const BigInt& q,
                                          const FactorOptions& options = {});

struct InequalityOneResult {
  BigRational lower;
  BigRational upper;
  bool holds = false;  // 1 - 1/q - 1/q^2 < lower and upper <= 1 - 1/q - 1/q^2 + 1/q^3
};

InequalityOneResult check_inequality_one(const BigInt& q, unsigned terms = 40);

// ---------------------------------------------------------------------------
// Grids and scans.

struct Grid {
  std::vector<Family> families;
  unsigned n_min = 1;
  unsigned n_max = 12;
  unsigned long q_min = 2;
  unsigned long q_max = 32;
  /// Cap exceptional families at q < q0.
  bool below_q0 = false;
  /// Exceptional families start at q0 (the complement of below_q0).
  bool from_q0 = false;

  std::string describe() const;
};

/// Valid groups on the grid, sorted by (family, n, q).
std::vector<GroupId> enumerate_groups(const Grid& grid);

struct ScanOptions {
  unsigned jobs = default_jobs();
  FactorOptions factor;
};

template <class Result>
struct Cell {
  GroupId group;
  std::optional<Result> result;
  /// Set when the cell could not be computed (factorization budget).
  std::string failure;
};

/// Runs fn on every group in parallel; factorization failures are caught per
/// cell. Output order matches `groups`.
template <class Fn>
auto scan_groups(const std::vector<GroupId>& groups, const ScanOptions& options, Fn fn) {
  using Result = std::invoke_result_t<Fn&, const GroupId&>;
  return parallel_map(groups, options.jobs, [&](const GroupId& g) {
    Cell<Result> cell{g, std::nullopt, {}};
    try {
      cell.result.emplace(fn(g));
    } catch (const FactorizationIncomplete& e) {
      cell.failure = e.what();
    }
    return cell;
  });
}

struct ExceptionKey {
  Family family;
  unsigned n;
  BigInt q;
  BigInt r;

  std::string describe() const;
  friend bool operator==(const ExceptionKey& a, const ExceptionKey& b);
  friend bool operator<(const ExceptionKey& a, const ExceptionKey& b);
};

ExceptionKey exception_key(const BoundCheckResult& r);

struct ScanReport {
  std::string grid;
  std::vector<Cell<std::vector<BoundCheckResult>>> cells;
  std::vector<BoundCheckResult> violations;
  std::vector<ExceptionKey> expected;
  std::vector<ExceptionKey> unexpected;  // violations not in expected
  std::vector<ExceptionKey> missing;     // expected but not violated

  std::size_t failures() const;
  bool match() const { return unexpected.empty() && missing.empty(); }
};

/// Checks every admissible (group, r) on the grid and compares the violations
/// to the exception lists of the groups scanned. With allow_expected false,
/// the expected set is empty, so listed exceptions count as unexpected.
ScanReport scan_exceptions(const Grid& grid, const ScanOptions& options = {},
                           bool allow_expected = true);

}  // namespace liesylow

#endif  // LIESYLOW_THEOREMS_HPP
