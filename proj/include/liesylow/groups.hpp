// The finite simple groups of Lie type (plus the alternating groups), their
// orders, cyclotomic factorizations and per-family bound constants.
#ifndef LIESYLOW_GROUPS_HPP
#define LIESYLOW_GROUPS_HPP

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liesylow/numeric.hpp"

namespace liesylow {

enum class Family {
  A,
  TwistedA,  // 2A_n
  B,
  C,
  D,
  TwistedD,  // 2D_n
  Suzuki,    // 2B2
  Triality,  // 3D4
  E6,
  TwistedE6,  // 2E6
  E7,
  E8,
  F4,
  Ree2F4,  // 2F4(q)', derived group when q = 2
  G2,
  Ree2G2,  // 2G2
  Alt,
};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

bool is_classical(Family f);
bool is_exceptional(Family f);
std::span<const Family> classical_families();
std::span<const Family> exceptional_families();
std::span<const Family> lie_families();

/// Human-readable form of the validity condition for a family.
std::string_view family_condition(Family f);

class InvalidGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One simple group T(q), or Alt(n). Only valid groups can be constructed.
class GroupId {
 public:
  /// Throws InvalidGroup naming the violated condition. `n` is ignored for
  /// exceptional families; `q` is ignored for Alt.
  static GroupId make(Family family, unsigned n, const BigInt& q);
  static std::optional<GroupId> try_make(Family family, unsigned n, const BigInt& q);
  static GroupId alternating(unsigned n);

  Family family() const { return family_; }
  unsigned n() const { return n_; }
  /// Throws std::logic_error for Alt.
  const PrimePower& q() const;
  const BigInt& characteristic() const { return q().prime(); }

  bool is_alternating() const { return family_ == Family::Alt; }
  bool is_tits() const;

  /// e.g. "A1(4)", "2F4(2)'", "Alt(9)".
  std::string describe() const;

  friend bool operator==(const GroupId& a, const GroupId& b);
  friend std::strong_ordering operator<=>(const GroupId& a, const GroupId& b);

 private:
  GroupId(Family f, unsigned n, std::optional<PrimePower> q)
      : family_(f), n_(n), q_(std::move(q)) {}

  Family family_;
  unsigned n_;
  std::optional<PrimePower> q_;
};

/// A factor of an order formula: q^degree - sign, or, when `cyclotomic` is
/// nonempty, the product of Phi_i(q) over those indices.
struct ShapeFactor {
  unsigned degree = 0;
  int sign = 1;
  std::vector<unsigned> cyclotomic;

  BigInt evaluate(const BigInt& q) const;
  /// Cyclotomic indices whose product is this factor.
  std::vector<unsigned> resolve() const;
};

/// d = gcd(modulus, q^power - sign).
struct DiagonalRule {
  unsigned modulus = 1;
  unsigned power = 1;
  int sign = 1;

  BigInt evaluate(const BigInt& q) const;
  std::string describe() const;
};

/// d * |T| = q^e0 * prod(factors).
struct OrderShape {
  unsigned e0 = 0;
  std::vector<ShapeFactor> factors;
  DiagonalRule diagonal;

  BigInt evaluate_product(const BigInt& q) const;
};

/// d * |T| = q^e0 * prod_i Phi_i(q)^e_i.
struct CycloFactorization {
  BigInt d = 1;
  unsigned e0 = 0;
  std::map<unsigned, unsigned> exponents;

  unsigned max_index() const;
  BigInt evaluate(const BigInt& q) const;
};

struct ExceptionalConstants {
  unsigned q_index;
  unsigned q_exponent;
  unsigned d0;
  unsigned long q0;
};

struct TheoremRow {
  /// K = k_num / k_den in lowest terms.
  unsigned k_num;
  unsigned k_den;
  unsigned M;
  unsigned lie_rank;
  /// (q, r) pairs excluded from the bound.
  std::vector<std::pair<unsigned long, unsigned long>> exceptions;
  std::optional<ExceptionalConstants> exceptional;

  bool is_exception(const BigInt& q, const BigInt& r) const;
};

OrderShape order_shape(const GroupId& g);

/// |T|; Tits group gives |2F4(2)|/2, Alt(n) gives n!/2.
BigInt order(const GroupId& g);

/// Rejects the Tits group, whose order has no pure cyclotomic shape.
CycloFactorization cyclo_factorization(const GroupId& g);

/// Same as cyclo_factorization except that the Tits group maps to the
/// factorization of 2F4(2). Used for Q(T) and index-structure checks.
CycloFactorization structural_factorization(const GroupId& g);

unsigned lie_rank(const GroupId& g);
TheoremRow theorem_row(const GroupId& g);
BigInt diagonal_d(const GroupId& g);

/// The largest factor Phi_i(q)^e_i of a factorization.
struct CycloFactor {
  unsigned index;
  unsigned exponent;
  BigInt value;
};
CycloFactor largest_cyclo_factor(const CycloFactorization& f, const BigInt& q);
std::vector<CycloFactor> cyclo_factor_values(const CycloFactorization& f, const BigInt& q);

}  // namespace liesylow

#endif  // LIESYLOW_GROUPS_HPP
