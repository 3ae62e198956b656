#include "liesylow/numeric.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace liesylow {

namespace {

constexpr unsigned kTrialBound = 1u << 16;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = static_cast<unsigned long>(i) * i; j <= kTrialBound;
           j += i) {
        composite[j] = true;
      }
    }
    return out;
  }();
  return primes;
}

// 3317044064679887385961981: below this the first 13 prime bases give a
// deterministic strong-pseudoprime test.
const BigInt& deterministic_bound() {
  static const BigInt bound("3317044064679887385961981");
  return bound;
}

bool strong_probable_prime(const BigInt& n, unsigned base) {
  BigInt d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  BigInt a = base;
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt minus_one = n - 1;
  if (x == 1 || x == minus_one) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == minus_one) return true;
    if (x == 1) return false;
  }
  return false;
}

std::uint64_t bits(const BigInt& n) { return mpz_sizeinbase(n.get_mpz_t(), 2); }

// Pollard-Brent with batched gcds. Returns a nontrivial divisor or nothing.
std::optional<BigInt> brent_split(const BigInt& n, unsigned long c,
                                  std::uint64_t max_iterations) {
  auto step = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  constexpr std::uint64_t kBatch = 128;
  BigInt y = 2 + c;
  BigInt x, ys, g = 1, acc = 1, diff;
  std::uint64_t run = 1;
  std::uint64_t spent = 0;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < run; ++i) step(y);
    std::uint64_t k = 0;
    while (k < run && g == 1) {
      ys = y;
      const std::uint64_t span = std::min(kBatch, run - k);
      for (std::uint64_t i = 0; i < span; ++i) {
        step(y);
        diff = x - y;
        acc = (acc * abs(diff)) % n;
      }
      mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
      k += span;
    }
    spent += run;
    run *= 2;
    if (g == 1 && spent > max_iterations) return std::nullopt;
  }
  if (g == n) {
    // The batch overshot; replay one step at a time.
    do {
      step(ys);
      diff = x - ys;
      diff = abs(diff);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n) return std::nullopt;
  return g;
}

// Adds the full factorization of n (times `mult`) to out; leaves resistant
// composites in `unfactored`.
void split_into(const BigInt& n, unsigned mult, const FactorOptions& options,
                Factorization& out, BigInt& unfactored) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.add(n, mult);
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    BigInt root;
    for (unsigned k = static_cast<unsigned>(bits(n)); k >= 2; --k) {
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        split_into(root, mult * k, options, out, unfactored);
        return;
      }
    }
  }
  for (unsigned attempt = 0; attempt < options.rho_attempts; ++attempt) {
    if (auto d = brent_split(n, 1 + 2 * attempt, options.rho_iterations)) {
      const BigInt other = n / *d;
      split_into(*d, mult, options, out, unfactored);
      split_into(other, mult, options, out, unfactored);
      return;
    }
  }
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), n.get_mpz_t(), mult);
  unfactored *= p;
}

}  // namespace

std::string to_string(const BigInt& n) { return n.get_str(); }

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 43 * 43) return true;
  if (n < deterministic_bound()) {
    for (unsigned base : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
      if (!strong_probable_prime(n, base)) return false;
    }
    return true;
  }
  // Beyond the deterministic range: Baillie-PSW plus extra Miller-Rabin rounds.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::optional<PrimePower> PrimePower::try_from_value(const BigInt& value) {
  if (value < 2) return std::nullopt;
  const FactorResult r = factorize(value);
  if (!r.complete() || r.factors.size() != 1) return std::nullopt;
  const auto& e = r.factors.entries().front();
  return PrimePower(e.prime, e.exponent, value);
}

PrimePower PrimePower::from_value(const BigInt& value) {
  auto pp = try_from_value(value);
  if (!pp) throw std::invalid_argument(to_string(value) + " is not a prime power");
  return *pp;
}

void Factorization::add(const BigInt& prime, unsigned exponent) {
  if (exponent == 0) return;
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), prime,
      [](const PrimeExponent& e, const BigInt& p) { return e.prime < p; });
  if (it != entries_.end() && it->prime == prime) {
    it->exponent += exponent;
  } else {
    entries_.insert(it, PrimeExponent{prime, exponent});
  }
}

void Factorization::merge(const Factorization& other, unsigned times) {
  for (const auto& e : other.entries_) add(e.prime, e.exponent * times);
}

BigInt Factorization::value() const {
  BigInt v = 1;
  BigInt pe;
  for (const auto& e : entries_) {
    mpz_pow_ui(pe.get_mpz_t(), e.prime.get_mpz_t(), e.exponent);
    v *= pe;
  }
  return v;
}

unsigned Factorization::exponent_of(const BigInt& prime) const {
  for (const auto& e : entries_) {
    if (e.prime == prime) return e.exponent;
  }
  return 0;
}

FactorizationIncomplete::FactorizationIncomplete(BigInt cofactor)
    : std::runtime_error("factorization budget exhausted on cofactor " +
                         cofactor.get_str()),
      cofactor_(std::move(cofactor)) {}

FactorResult factorize(const BigInt& n, const FactorOptions& options) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  FactorResult result;
  BigInt rest = n;
  for (unsigned p : small_primes()) {
    if (rest == 1) break;
    if (rest < BigInt(p) * p) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    result.factors.add(p, e);
  }
  split_into(rest, 1, options, result.factors, result.unfactored);
  return result;
}

Factorization factorize_or_throw(const BigInt& n, const FactorOptions& options) {
  FactorResult r = factorize(n, options);
  if (!r.complete()) throw FactorizationIncomplete(r.unfactored);
  return std::move(r.factors);
}

unsigned valuation(const BigInt& n, const BigInt& r) {
  if (n == 0) throw std::invalid_argument("valuation: n must be nonzero");
  if (!is_prime(r)) throw std::invalid_argument("valuation: " + r.get_str() + " is not prime");
  BigInt rest = abs(n);
  unsigned k = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), r.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), r.get_mpz_t());
    ++k;
  }
  return k;
}

unsigned long mult_order(const BigInt& q, const BigInt& r) {
  if (!is_prime(r)) throw std::invalid_argument("mult_order: " + r.get_str() + " is not prime");
  if (mpz_divisible_p(q.get_mpz_t(), r.get_mpz_t())) {
    throw std::invalid_argument("mult_order: " + r.get_str() + " divides " + q.get_str());
  }
  BigInt order = r - 1;
  const Factorization f = factorize_or_throw(order);
  BigInt base = q % r;
  if (base < 0) base += r;
  BigInt trial, power;
  for (const auto& e : f.entries()) {
    for (unsigned i = 0; i < e.exponent; ++i) {
      trial = order / e.prime;
      mpz_powm(power.get_mpz_t(), base.get_mpz_t(), trial.get_mpz_t(), r.get_mpz_t());
      if (power != 1) break;
      order = trial;
    }
  }
  if (!order.fits_ulong_p()) throw std::overflow_error("mult_order: order exceeds unsigned long");
  return order.get_ui();
}

unsigned floor_log(const BigInt& r, const BigInt& m) {
  if (r < 2) throw std::invalid_argument("floor_log: base must be >= 2");
  if (m < 1) throw std::invalid_argument("floor_log: argument must be >= 1");
  unsigned k = 0;
  BigInt power = r;
  while (power <= m) {
    ++k;
    power *= r;
  }
  return k;
}

int mobius(unsigned long n) {
  if (n == 0) throw std::invalid_argument("mobius: n must be positive");
  int sign = 1;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

unsigned long euler_phi(unsigned long n) {
  if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<unsigned long> divisors(unsigned long n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<unsigned long> low, high;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

unsigned long legendre_valuation(unsigned long n, unsigned long r) {
  if (r < 2) throw std::invalid_argument("legendre_valuation: r must be prime");
  unsigned long total = 0;
  for (unsigned long rest = n / r; rest > 0; rest /= r) total += rest;
  return total;
}

bool pow_le(const BigInt& a, unsigned long x, const BigInt& b, unsigned long y) {
  if (a < 1 || b < 1) throw std::invalid_argument("pow_le: bases must be >= 1");
  if (x == 0 || a == 1) return true;  // lhs is 1
  if (y == 0 || b == 1) return false;  // rhs is 1 < lhs
  // 2^(la-1) <= a < 2^la, likewise for b.
  using Wide = unsigned __int128;
  const Wide la = bits(a), lb = bits(b);
  if (Wide(x) * la <= Wide(y) * (lb - 1)) return true;
  if (Wide(x) * (la - 1) >= Wide(y) * lb) return false;
  return pow(a, x) <= pow(b, y);
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::vector<BigInt> prime_powers_in(unsigned long lo, unsigned long hi) {
  std::vector<BigInt> out;
  for (unsigned long v = std::max(lo, 2ul); v <= hi; ++v) {
    unsigned long rest = v;
    unsigned long p = 2;
    while (p * p <= rest && rest % p != 0) ++p;
    if (p * p > rest) p = rest;
    while (rest % p == 0) rest /= p;
    if (rest == 1) out.emplace_back(v);
  }
  return out;
}

}  // namespace liesylow
