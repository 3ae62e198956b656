// Exact integer number theory used throughout liesylow.
//
// Everything here works on GMP integers. Comparisons that look like
// logarithms (r^k <= M, a^x <= b^y) are decided by exact powering; bit-length
// bounds are only used to skip work when they already settle the answer.
#ifndef LIESYLOW_NUMERIC_HPP
#define LIESYLOW_NUMERIC_HPP

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liesylow {

using BigInt = mpz_class;
using BigRational = mpq_class;

std::string to_string(const BigInt& n);

/// Deterministic for n < 3.317e24 (strong tests to the first 13 prime bases).
bool is_prime(const BigInt& n);

/// A prime power p^e with e >= 1.
class PrimePower {
 public:
  /// Throws std::invalid_argument if `value` is not a prime power.
  static PrimePower from_value(const BigInt& value);
  static std::optional<PrimePower> try_from_value(const BigInt& value);

  const BigInt& prime() const { return prime_; }
  unsigned exponent() const { return exponent_; }
  const BigInt& value() const { return value_; }

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.value_ == b.value_;
  }

 private:
  PrimePower(BigInt p, unsigned e, BigInt v)
      : prime_(std::move(p)), exponent_(e), value_(std::move(v)) {}

  BigInt prime_;
  unsigned exponent_;
  BigInt value_;
};

struct PrimeExponent {
  BigInt prime;
  unsigned exponent;

  friend bool operator==(const PrimeExponent&, const PrimeExponent&) = default;
};

/// Prime factorization, entries strictly increasing by prime.
class Factorization {
 public:
  Factorization() = default;

  const std::vector<PrimeExponent>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Multiplies in prime^exponent, keeping entries sorted and merged.
  void add(const BigInt& prime, unsigned exponent);
  void merge(const Factorization& other, unsigned times = 1);

  BigInt value() const;
  unsigned exponent_of(const BigInt& prime) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimeExponent> entries_;
};

struct FactorOptions {
  /// Iteration cap for each Pollard-Brent attempt.
  std::uint64_t rho_iterations = 1u << 22;
  /// Distinct polynomial constants tried before giving up on a cofactor.
  unsigned rho_attempts = 8;
};

/// Result of a factorization. `unfactored` is 1 on success; otherwise it is
/// the composite cofactor that resisted splitting and `factors` holds the
/// primes already extracted.
struct FactorResult {
  Factorization factors;
  BigInt unfactored = 1;

  bool complete() const { return unfactored == 1; }
};

FactorResult factorize(const BigInt& n, const FactorOptions& options = {});

/// Throws FactorizationIncomplete if the budget runs out.
Factorization factorize_or_throw(const BigInt& n,
                                 const FactorOptions& options = {});

class FactorizationIncomplete : public std::runtime_error {
 public:
  explicit FactorizationIncomplete(BigInt cofactor);
  const BigInt& cofactor() const { return cofactor_; }

 private:
  BigInt cofactor_;
};

/// v_r(n). Rejects n = 0 and composite r.
unsigned valuation(const BigInt& n, const BigInt& r);

/// Least m >= 1 with q^m = 1 (mod r), r prime not dividing q.
unsigned long mult_order(const BigInt& q, const BigInt& r);

/// Largest k with r^k <= m. Requires r >= 2 and m >= 1.
unsigned floor_log(const BigInt& r, const BigInt& m);

int mobius(unsigned long n);
unsigned long euler_phi(unsigned long n);
std::vector<unsigned long> divisors(unsigned long n);

/// v_r(n!) by Legendre's formula.
unsigned long legendre_valuation(unsigned long n, unsigned long r);

/// a^x <= b^y for a, b >= 1, decided exactly.
bool pow_le(const BigInt& a, unsigned long x, const BigInt& b,
            unsigned long y);

BigInt pow(const BigInt& base, unsigned long exponent);
BigInt factorial(unsigned long n);

/// All prime powers in [lo, hi], ascending.
std::vector<BigInt> prime_powers_in(unsigned long lo, unsigned long hi);

}  // namespace liesylow

#endif  // LIESYLOW_NUMERIC_HPP
