#include "liesylow/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace liesylow {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::x_pow_minus_one(unsigned n) {
  std::vector<BigInt> c(n + 1, 0);
  c[0] = -1;
  c[n] += 1;
  return IntPolynomial(std::move(c));
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial::DivResult IntPolynomial::divmod_monic(const IntPolynomial& divisor) const {
  if (divisor.is_zero() || divisor.leading() != 1) {
    throw std::invalid_argument("divmod_monic: divisor must be monic");
  }
  const long dd = divisor.degree();
  std::vector<BigInt> rem = coeffs_;
  if (degree() < dd) return {IntPolynomial{}, *this};
  std::vector<BigInt> quot(static_cast<std::size_t>(degree() - dd + 1), 0);
  for (long k = degree(); k >= dd; --k) {
    const BigInt lead = rem[static_cast<std::size_t>(k)];
    if (lead == 0) continue;
    quot[static_cast<std::size_t>(k - dd)] = lead;
    for (long j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k - dd + j)] -= lead * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

namespace {

class CyclotomicTable {
 public:
  IntPolynomial get(unsigned i) {
    if (i <= kCyclotomicMemoCap) {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(i); it != table_.end()) return it->second;
    }
    IntPolynomial built = build(i);
    if (i <= kCyclotomicMemoCap) {
      std::unique_lock lock(mutex_);
      table_.emplace(i, built);
    }
    return built;
  }

  BigInt evaluate(unsigned i, const BigInt& q) {
    if (i <= kCyclotomicMemoCap) {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(i); it != table_.end()) return it->second.evaluate(q);
    }
    return get(i).evaluate(q);
  }

 private:
  IntPolynomial build(unsigned i) {
    IntPolynomial denom(std::vector<BigInt>{1});
    for (unsigned long d : divisors(i)) {
      if (d == i) break;
      denom = denom * get(static_cast<unsigned>(d));
    }
    auto [quot, rem] = IntPolynomial::x_pow_minus_one(i).divmod_monic(denom);
    if (!rem.is_zero()) {
      throw std::logic_error("cyclotomic_poly: inexact division at index " + std::to_string(i));
    }
    return quot;
  }

  std::shared_mutex mutex_;
  std::map<unsigned, IntPolynomial> table_;
};

CyclotomicTable& table() {
  static CyclotomicTable t;
  return t;
}

}  // namespace

IntPolynomial cyclotomic_poly(unsigned i) {
  if (i == 0) throw std::invalid_argument("cyclotomic_poly: index must be positive");
  return table().get(i);
}

BigInt phi_eval(unsigned i, const BigInt& q) {
  if (i == 0) throw std::invalid_argument("phi_eval: index must be positive");
  return table().evaluate(i, q);
}

EulerProductBounds euler_product_bounds(const BigInt& q, unsigned terms) {
  if (q < 2) throw std::invalid_argument("euler_product_bounds: q must be >= 2");
  if (terms < 1) throw std::invalid_argument("euler_product_bounds: need at least one term");
  BigRational upper = 1;
  BigInt qpow = 1;
  for (unsigned i = 1; i <= terms; ++i) {
    qpow *= q;
    upper *= BigRational(qpow - 1, qpow);
  }
  upper.canonicalize();
  BigRational tail(1, qpow * (q - 1));
  tail.canonicalize();
  BigRational lower = upper * (1 - tail);
  if (lower <= 0) {
    throw std::domain_error("euler_product_bounds: tail bound too weak, raise the term count");
  }
  return {lower, upper};
}

}  // namespace liesylow
