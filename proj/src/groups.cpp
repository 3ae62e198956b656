#include "liesylow/groups.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>

#include "liesylow/cyclotomic.hpp"

namespace liesylow {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::string_view condition;
};

constexpr std::array kFamilies{
    FamilyInfo{Family::A, "A", "n >= 1 and (n,q) not in {(1,2),(1,3)}"},
    FamilyInfo{Family::TwistedA, "2A", "n >= 2 and (n,q) != (2,2)"},
    FamilyInfo{Family::B, "B", "n >= 2 and (n,q) != (2,2)"},
    FamilyInfo{Family::C, "C", "n >= 3 and q odd"},
    FamilyInfo{Family::D, "D", "n >= 4"},
    FamilyInfo{Family::TwistedD, "2D", "n >= 4"},
    FamilyInfo{Family::Suzuki, "2B2", "q = 2^(2m+1) with m >= 1"},
    FamilyInfo{Family::Triality, "3D4", "q any prime power"},
    FamilyInfo{Family::E6, "E6", "q any prime power"},
    FamilyInfo{Family::TwistedE6, "2E6", "q any prime power"},
    FamilyInfo{Family::E7, "E7", "q any prime power"},
    FamilyInfo{Family::E8, "E8", "q any prime power"},
    FamilyInfo{Family::F4, "F4", "q any prime power"},
    FamilyInfo{Family::Ree2F4, "2F4d", "q = 2^(2m+1) with m >= 0"},
    FamilyInfo{Family::G2, "G2", "q >= 3"},
    FamilyInfo{Family::Ree2G2, "2G2", "q = 3^(2m+1) with m >= 1"},
    FamilyInfo{Family::Alt, "ALT", "n >= 5"},
};

constexpr std::array kClassical{Family::A, Family::TwistedA, Family::B,
                                Family::C, Family::D, Family::TwistedD};
constexpr std::array kExceptional{Family::Suzuki, Family::Triality, Family::E6,
                                  Family::TwistedE6, Family::E7, Family::E8,
                                  Family::F4, Family::Ree2F4, Family::G2,
                                  Family::Ree2G2};
constexpr std::array kLie{Family::A,        Family::TwistedA, Family::B,
                          Family::C,        Family::D,        Family::TwistedD,
                          Family::Suzuki,   Family::Triality, Family::E6,
                          Family::TwistedE6, Family::E7,      Family::E8,
                          Family::F4,       Family::Ree2F4,   Family::G2,
                          Family::Ree2G2};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies) {
    if (i.family == f) return i;
  }
  throw std::logic_error("unknown family");
}

struct ExceptionalRow {
  Family family;
  unsigned k_num, k_den, M, lie_rank;
  unsigned long exception_q, exception_r;  // 0 when none
  ExceptionalConstants table3;
};

// K, M, rank and exceptions per family; Q(T) = Phi_index^exponent, d0, q0.
constexpr std::array kExceptionalRows{
    ExceptionalRow{Family::Suzuki, 2, 1, 4, 1, 0, 0, {4, 1, 1, 8}},
    ExceptionalRow{Family::Triality, 6, 1, 12, 2, 3, 13, {3, 2, 1, 4}},
    ExceptionalRow{Family::E6, 12, 1, 12, 6, 3, 13, {3, 3, 3, 5}},
    ExceptionalRow{Family::TwistedE6, 12, 1, 18, 4, 0, 0, {2, 6, 3, 7}},
    ExceptionalRow{Family::E7, 18, 1, 18, 7, 0, 0, {2, 7, 2, 9}},
    ExceptionalRow{Family::E8, 29, 1, 30, 8, 2, 31, {2, 8, 1, 7}},
    ExceptionalRow{Family::F4, 12, 1, 12, 4, 3, 13, {2, 4, 1, 7}},
    ExceptionalRow{Family::Ree2F4, 6, 1, 12, 2, 0, 0, {4, 2, 1, 8}},
    ExceptionalRow{Family::G2, 6, 1, 6, 2, 3, 13, {2, 2, 1, 4}},
    ExceptionalRow{Family::Ree2G2, 7, 2, 6, 1, 0, 0, {6, 1, 1, 27}},
};

const ExceptionalRow& exceptional_row(Family f) {
  for (const auto& r : kExceptionalRows) {
    if (r.family == f) return r;
  }
  throw std::logic_error("not an exceptional family");
}

bool odd_power_of(const PrimePower& q, unsigned long p, unsigned min_m) {
  return q.prime() == p && q.exponent() % 2 == 1 && q.exponent() >= 2 * min_m + 1;
}

bool condition_holds(Family f, unsigned n, const PrimePower& q) {
  const BigInt& v = q.value();
  switch (f) {
    case Family::A:
      return n >= 1 && !(n == 1 && (v == 2 || v == 3));
    case Family::TwistedA:
    case Family::B:
      return n >= 2 && !(n == 2 && v == 2);
    case Family::C:
      return n >= 3 && q.prime() != 2;
    case Family::D:
    case Family::TwistedD:
      return n >= 4;
    case Family::Suzuki:
      return odd_power_of(q, 2, 1);
    case Family::Ree2F4:
      return odd_power_of(q, 2, 0);
    case Family::G2:
      return v >= 3;
    case Family::Ree2G2:
      return odd_power_of(q, 3, 1);
    default:
      return true;
  }
}

ShapeFactor minus(unsigned degree) { return {degree, 1, {}}; }
ShapeFactor plus(unsigned degree) { return {degree, -1, {}}; }

OrderShape exceptional_shape(Family f) {
  auto all_minus = [](unsigned e0, std::initializer_list<unsigned> degrees,
                      DiagonalRule d = {}) {
    OrderShape s{e0, {}, d};
    for (unsigned deg : degrees) s.factors.push_back(minus(deg));
    return s;
  };
  switch (f) {
    case Family::Suzuki:
      return {2, {plus(2), minus(1)}, {}};
    case Family::Triality:
      // q^8 + q^4 + 1 = (q^12 - 1) / (q^4 - 1)
      return {12, {ShapeFactor{0, 1, {3, 6, 12}}, minus(6), minus(2)}, {}};
    case Family::G2:
      return all_minus(6, {6, 2});
    case Family::F4:
      return all_minus(24, {2, 6, 8, 12});
    case Family::E6:
      return all_minus(36, {2, 5, 6, 8, 9, 12}, {3, 1, 1});
    case Family::TwistedE6:
      return {36,
              {minus(2), plus(5), minus(6), minus(8), plus(9), minus(12)},
              {3, 1, -1}};
    case Family::E7:
      return all_minus(63, {2, 6, 8, 10, 12, 14, 18}, {2, 1, 1});
    case Family::E8:
      return all_minus(120, {2, 8, 12, 14, 18, 20, 24, 30});
    case Family::Ree2F4:
      return {12, {plus(6), minus(4), plus(3), minus(1)}, {}};
    case Family::Ree2G2:
      return {3, {plus(3), minus(1)}, {}};
    default:
      throw std::logic_error("not an exceptional family");
  }
}

void require_lie(const GroupId& g, const char* what) {
  if (g.is_alternating()) {
    throw std::invalid_argument(std::string(what) + ": not defined for alternating groups");
  }
}

}  // namespace

std::string_view family_name(Family f) { return info(f).name; }

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& i : kFamilies) {
    if (i.name == name) return i.family;
  }
  if (name == "Alt" || name == "alt") return Family::Alt;
  if (name == "2F4") return Family::Ree2F4;
  return std::nullopt;
}

bool is_classical(Family f) {
  return std::find(kClassical.begin(), kClassical.end(), f) != kClassical.end();
}

bool is_exceptional(Family f) {
  return std::find(kExceptional.begin(), kExceptional.end(), f) != kExceptional.end();
}

std::span<const Family> classical_families() { return kClassical; }
std::span<const Family> exceptional_families() { return kExceptional; }
std::span<const Family> lie_families() { return kLie; }

std::string_view family_condition(Family f) { return info(f).condition; }

GroupId GroupId::make(Family family, unsigned n, const BigInt& q) {
  if (family == Family::Alt) return alternating(n);
  auto pp = PrimePower::try_from_value(q);
  const std::string label = std::string(family_name(family)) +
                            (is_classical(family) ? " n=" + std::to_string(n) : "") +
                            " q=" + q.get_str();
  if (!pp) throw InvalidGroup("invalid group " + label + ": q must be a prime power");
  if (is_exceptional(family)) n = 0;
  if (!condition_holds(family, n, *pp)) {
    throw InvalidGroup("invalid group " + label + ": requires " +
                       std::string(family_condition(family)));
  }
  return GroupId(family, n, std::move(*pp));
}

std::optional<GroupId> GroupId::try_make(Family family, unsigned n, const BigInt& q) {
  try {
    return make(family, n, q);
  } catch (const InvalidGroup&) {
    return std::nullopt;
  }
}

GroupId GroupId::alternating(unsigned n) {
  if (n < 5) {
    throw InvalidGroup("invalid group ALT n=" + std::to_string(n) + ": requires " +
                       std::string(family_condition(Family::Alt)));
  }
  return GroupId(Family::Alt, n, std::nullopt);
}

const PrimePower& GroupId::q() const {
  if (!q_) throw std::logic_error("alternating groups have no field size");
  return *q_;
}

bool GroupId::is_tits() const { return family_ == Family::Ree2F4 && q_->value() == 2; }

std::string GroupId::describe() const {
  if (is_alternating()) return "Alt(" + std::to_string(n_) + ")";
  std::string s(family_name(family_));
  if (family_ == Family::Ree2F4) s = "2F4";
  if (is_classical(family_)) s += std::to_string(n_);
  s += "(" + q_->value().get_str() + ")";
  if (family_ == Family::Ree2F4 && is_tits()) s += "'";
  return s;
}

bool operator==(const GroupId& a, const GroupId& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const GroupId& a, const GroupId& b) {
  if (auto c = a.family_ <=> b.family_; c != 0) return c;
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (a.q_.has_value() != b.q_.has_value()) return a.q_.has_value() <=> b.q_.has_value();
  if (!a.q_) return std::strong_ordering::equal;
  const int c = cmp(a.q_->value(), b.q_->value());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

BigInt ShapeFactor::evaluate(const BigInt& q) const {
  if (!cyclotomic.empty()) {
    BigInt v = 1;
    for (unsigned i : cyclotomic) v *= phi_eval(i, q);
    return v;
  }
  return pow(q, degree) - sign;
}

std::vector<unsigned> ShapeFactor::resolve() const {
  if (!cyclotomic.empty()) return cyclotomic;
  std::vector<unsigned> out;
  if (sign == 1) {
    for (unsigned long k : divisors(degree)) out.push_back(static_cast<unsigned>(k));
  } else {
    // q^i + 1 = prod over k | 2i with k not dividing i.
    for (unsigned long k : divisors(2ul * degree)) {
      if (degree % k != 0) out.push_back(static_cast<unsigned>(k));
    }
  }
  return out;
}

BigInt DiagonalRule::evaluate(const BigInt& q) const {
  BigInt v = pow(q, power) - sign;
  BigInt g;
  BigInt m = modulus;
  mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), v.get_mpz_t());
  return g;
}

std::string DiagonalRule::describe() const {
  if (modulus == 1) return "1";
  std::string qp = power == 1 ? "q" : "q^" + std::to_string(power);
  return "gcd(" + std::to_string(modulus) + "," + qp + (sign == 1 ? "-1" : "+1") + ")";
}

BigInt OrderShape::evaluate_product(const BigInt& q) const {
  BigInt v = pow(q, e0);
  for (const auto& f : factors) v *= f.evaluate(q);
  return v;
}

unsigned CycloFactorization::max_index() const {
  return exponents.empty() ? 0 : exponents.rbegin()->first;
}

BigInt CycloFactorization::evaluate(const BigInt& q) const {
  BigInt v = pow(q, e0);
  for (const auto& [i, e] : exponents) v *= pow(phi_eval(i, q), e);
  return v;
}

bool TheoremRow::is_exception(const BigInt& q, const BigInt& r) const {
  return std::any_of(exceptions.begin(), exceptions.end(), [&](const auto& e) {
    return q == e.first && r == e.second;
  });
}

OrderShape order_shape(const GroupId& g) {
  require_lie(g, "order_shape");
  const unsigned n = g.n();
  OrderShape s;
  switch (g.family()) {
    case Family::A:
      s.e0 = n * (n + 1) / 2;
      for (unsigned i = 2; i <= n + 1; ++i) s.factors.push_back(minus(i));
      s.diagonal = {n + 1, 1, 1};
      return s;
    case Family::TwistedA:
      s.e0 = n * (n + 1) / 2;
      for (unsigned i = 2; i <= n + 1; ++i) {
        s.factors.push_back(i % 2 == 0 ? minus(i) : plus(i));
      }
      s.diagonal = {n + 1, 1, -1};
      return s;
    case Family::B:
    case Family::C:
      s.e0 = n * n;
      for (unsigned i = 1; i <= n; ++i) s.factors.push_back(minus(2 * i));
      s.diagonal = {2, 1, 1};
      return s;
    case Family::D:
    case Family::TwistedD: {
      const bool twisted = g.family() == Family::TwistedD;
      s.e0 = n * (n - 1);
      s.factors.push_back(twisted ? plus(n) : minus(n));
      for (unsigned i = 1; i < n; ++i) s.factors.push_back(minus(2 * i));
      s.diagonal = {4, n, twisted ? -1 : 1};
      return s;
    }
    default:
      return exceptional_shape(g.family());
  }
}

BigInt order(const GroupId& g) {
  if (g.is_alternating()) return factorial(g.n()) / 2;
  const OrderShape s = order_shape(g);
  const BigInt& q = g.q().value();
  BigInt product = s.evaluate_product(q);
  const BigInt d = s.diagonal.evaluate(q);
  if (!mpz_divisible_p(product.get_mpz_t(), d.get_mpz_t())) {
    throw std::logic_error("order: d does not divide the order product for " + g.describe());
  }
  product /= d;
  if (g.is_tits()) product /= 2;
  return product;
}

CycloFactorization structural_factorization(const GroupId& g) {
  const OrderShape s = order_shape(g);
  CycloFactorization f;
  f.e0 = s.e0;
  f.d = s.diagonal.evaluate(g.q().value());
  for (const auto& factor : s.factors) {
    for (unsigned i : factor.resolve()) ++f.exponents[i];
  }
  return f;
}

CycloFactorization cyclo_factorization(const GroupId& g) {
  require_lie(g, "cyclo_factorization");
  if (g.is_tits()) {
    throw std::invalid_argument(
        "cyclo_factorization: the Tits group 2F4(2)' has no cyclotomic shape");
  }
  return structural_factorization(g);
}

unsigned lie_rank(const GroupId& g) {
  require_lie(g, "lie_rank");
  const unsigned n = g.n();
  switch (g.family()) {
    case Family::A:
    case Family::B:
    case Family::C:
    case Family::D:
      return n;
    case Family::TwistedA:
      return (n + 1) / 2;
    case Family::TwistedD:
      return n - 1;
    default:
      return exceptional_row(g.family()).lie_rank;
  }
}

TheoremRow theorem_row(const GroupId& g) {
  require_lie(g, "theorem_row");
  const unsigned n = g.n();
  auto reduced = [](unsigned num, unsigned den) {
    const unsigned c = std::gcd(num, den);
    return std::pair{num / c, den / c};
  };
  TheoremRow row{};
  row.lie_rank = lie_rank(g);
  switch (g.family()) {
    case Family::A:
      row.k_num = n, row.k_den = 1, row.M = n + 1;
      return row;
    case Family::TwistedA:
      std::tie(row.k_num, row.k_den) = reduced(n, 2);
      row.M = n % 2 == 0 ? 2 * (n + 1) : 2 * n;
      return row;
    case Family::B:
    case Family::C:
      row.k_num = n, row.k_den = 1, row.M = 2 * n;
      return row;
    case Family::D:
      std::tie(row.k_num, row.k_den) = reduced(n, 2);
      row.M = 2 * (n - 1);
      return row;
    case Family::TwistedD:
      std::tie(row.k_num, row.k_den) = reduced(n, 2);
      row.M = 2 * n;
      return row;
    default:
      break;
  }
  const ExceptionalRow& e = exceptional_row(g.family());
  row.k_num = e.k_num;
  row.k_den = e.k_den;
  row.M = e.M;
  if (e.exception_q != 0) row.exceptions.emplace_back(e.exception_q, e.exception_r);
  row.exceptional = e.table3;
  return row;
}

BigInt diagonal_d(const GroupId& g) {
  require_lie(g, "diagonal_d");
  return order_shape(g).diagonal.evaluate(g.q().value());
}

std::vector<CycloFactor> cyclo_factor_values(const CycloFactorization& f, const BigInt& q) {
  std::vector<CycloFactor> out;
  out.reserve(f.exponents.size());
  for (const auto& [i, e] : f.exponents) out.push_back({i, e, pow(phi_eval(i, q), e)});
  return out;
}

CycloFactor largest_cyclo_factor(const CycloFactorization& f, const BigInt& q) {
  const auto values = cyclo_factor_values(f, q);
  if (values.empty()) throw std::invalid_argument("largest_cyclo_factor: empty factorization");
  return *std::max_element(values.begin(), values.end(),
                           [](const CycloFactor& a, const CycloFactor& b) { return a.value < b.value; });
}

}  // namespace liesylow
