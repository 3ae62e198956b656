// Cyclotomic polynomials over the integers and their values.
#ifndef LIESYLOW_CYCLOTOMIC_HPP
#define LIESYLOW_CYCLOTOMIC_HPP

#include <vector>

#include "liesylow/numeric.hpp"

namespace liesylow {

/// Dense integer polynomial, coefficients lowest degree first. The zero
/// polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);

  /// x^n - 1
  static IntPolynomial x_pow_minus_one(unsigned n);

  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const BigInt& leading() const { return coeffs_.back(); }

  BigInt evaluate(const BigInt& x) const;

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  struct DivResult;
  /// Division by a monic divisor; exact over the integers.
  DivResult divmod_monic(const IntPolynomial& divisor) const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

struct IntPolynomial::DivResult {
  IntPolynomial quotient;
  IntPolynomial remainder;
};

/// Largest index whose polynomial is kept in the shared memo table.
inline constexpr unsigned kCyclotomicMemoCap = 256;

/// Phi_i, built as (x^i - 1) / prod_{d | i, d < i} Phi_d. Thread-safe.
IntPolynomial cyclotomic_poly(unsigned i);

/// Phi_i(q).
BigInt phi_eval(unsigned i, const BigInt& q);

/// Rational enclosure of prod_{i >= 1} (1 - q^-i).
struct EulerProductBounds {
  BigRational lower;
  BigRational upper;
};

/// upper = prod_{i<=terms} (1 - q^-i), lower = upper * (1 - q^-terms / (q-1)).
/// Throws std::domain_error when lower <= 0.
EulerProductBounds euler_product_bounds(const BigInt& q, unsigned terms);

}  // namespace liesylow

#endif  // LIESYLOW_CYCLOTOMIC_HPP
