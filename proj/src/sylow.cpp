#include "liesylow/sylow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <mpfr.h>

#include "liesylow/cyclotomic.hpp"

namespace liesylow {

namespace {

// Factorizations of Phi_i(q), shared across scans.
class PhiFactorCache {
 public:
  Factorization get(unsigned i, const BigInt& q, const FactorOptions& options) {
    const auto key = std::pair{i, q};
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    Factorization f = factorize_or_throw(phi_eval(i, q), options);
    std::lock_guard lock(mutex_);
    cache_.emplace(key, f);
    return f;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<unsigned, BigInt>, Factorization> cache_;
};

PhiFactorCache& phi_cache() {
  static PhiFactorCache cache;
  return cache;
}

double log2_estimate(const BigInt& n) {
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log2(mantissa) + static_cast<double>(exp);
}

// If n = base^k exactly, returns k.
// Enclosure [lo, hi] of log2(n).
struct Interval {
  explicit Interval(mpfr_prec_t prec) { mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr)); }
  ~Interval() { mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr)); }
  Interval(const Interval&) = delete;
  Interval& operator=(const Interval&) = delete;
  mpfr_t lo, hi;
};

void log2_interval(Interval& out, const BigInt& n) {
  mpfr_set_z(out.lo, n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi, n.get_mpz_t(), MPFR_RNDU);
  mpfr_log2(out.lo, out.lo, MPFR_RNDD);
  mpfr_log2(out.hi, out.hi, MPFR_RNDU);
}

std::optional<unsigned> exact_power_of(const BigInt& n, unsigned long base) {
  BigInt rest = n;
  unsigned k = 0;
  while (rest > 1 && mpz_divisible_ui_p(rest.get_mpz_t(), base)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), base);
    ++k;
  }
  if (rest != 1) return std::nullopt;
  return k;
}

}  // namespace

SylowOrder sylow_order(const GroupId& g, const BigInt& group_order, const BigInt& r) {
  if (!is_prime(r)) throw std::invalid_argument("sylow_order: " + r.get_str() + " is not prime");
  SylowOrder out;
  out.prime = r;
  if (g.is_alternating()) {
    if (!r.fits_ulong_p() || r > g.n()) return out;
    out.exponent = static_cast<unsigned>(legendre_valuation(g.n(), r.get_ui())) - (r == 2 ? 1 : 0);
  } else {
    out.exponent = valuation(group_order, r);
  }
  out.order = pow(r, out.exponent);
  return out;
}

SylowOrder sylow_order(const GroupId& g, const BigInt& r) {
  if (g.is_alternating()) return sylow_order(g, BigInt(0), r);
  return sylow_order(g, order(g), r);
}

BigInt characteristic_sylow(const GroupId& g) {
  if (g.is_alternating()) {
    throw std::invalid_argument("characteristic_sylow: alternating groups have no characteristic");
  }
  BigInt s = pow(g.q().value(), order_shape(g).e0);
  if (g.is_tits()) s /= 2;
  return s;
}

std::vector<BigInt> order_primes(const GroupId& g, const FactorOptions& options) {
  std::vector<BigInt> primes;
  if (g.is_alternating()) {
    for (unsigned long p = 2; p <= g.n(); ++p) {
      if (is_prime(p)) primes.emplace_back(p);
    }
    return primes;
  }
  Factorization all;
  all.add(g.characteristic(), 1);
  const CycloFactorization f = structural_factorization(g);
  for (const auto& [i, e] : f.exponents) {
    all.merge(phi_cache().get(i, g.q().value(), options));
  }
  for (const auto& e : all.entries()) primes.push_back(e.prime);
  return primes;
}

BigInt SylowSpectrum::product() const {
  BigInt p = 1;
  for (const auto& e : entries) p *= e.order;
  return p;
}

SylowSpectrum sylow_spectrum(const GroupId& g, const FactorOptions& options) {
  SylowSpectrum s{g, {}};
  const BigInt group_order = g.is_alternating() ? BigInt(0) : order(g);
  for (const BigInt& p : order_primes(g, options)) {
    SylowOrder so = sylow_order(g, group_order, p);
    // d can swallow every copy of a prime (e.g. 3 in PSL(3,4)).
    if (so.trivial()) continue;
    s.entries.push_back({p, so.exponent, std::move(so.order)});
  }
  std::sort(s.entries.begin(), s.entries.end(),
            [](const SylowEntry& a, const SylowEntry& b) { return a.order > b.order; });
  return s;
}

std::pair<SylowEntry, SylowEntry> largest_two(const SylowSpectrum& s) {
  if (s.entries.size() < 2) {
    throw std::logic_error("largest_two: " + s.group.describe() + " has fewer than two prime divisors");
  }
  return {s.entries[0], s.entries[1]};
}

Comparison within_good_ratio(const BigInt& top, const BigInt& other, unsigned long max_bits) {
  if (top < 2 || other < 2) throw std::invalid_argument("within_good_ratio: orders must be >= 2");
  if (top <= other) return Comparison::Yes;
  // Equality log(3^k)/log(2^k) = log 3/log 2 is the only way to hit the
  // threshold exactly.
  if (auto k3 = exact_power_of(top, 3)) {
    if (auto k2 = exact_power_of(other, 2); k2 && *k2 == *k3) return Comparison::Yes;
  }
  // Want: log2(top) <= log2(3) * log2(other). Evaluate both sides with
  // directed rounding and double the precision until the intervals separate.
  for (mpfr_prec_t prec = 64; prec <= static_cast<mpfr_prec_t>(max_bits); prec *= 2) {
    Interval lhs(prec), three(prec), rhs(prec);
    log2_interval(lhs, top);
    log2_interval(three, 3);
    log2_interval(rhs, other);
    mpfr_t lo, hi;
    mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_mul(lo, three.lo, rhs.lo, MPFR_RNDD);
    mpfr_mul(hi, three.hi, rhs.hi, MPFR_RNDU);
    Comparison verdict = Comparison::Undecided;
    if (mpfr_less_p(lhs.hi, lo)) verdict = Comparison::Yes;
    else if (mpfr_greater_p(lhs.lo, hi)) verdict = Comparison::No;
    mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
    if (verdict != Comparison::Undecided) return verdict;
  }
  return Comparison::Undecided;
}

double ratio_estimate(const BigInt& top, const BigInt& other) {
  return log2_estimate(top) / log2_estimate(other);
}

std::size_t GoodContributorReport::secondary_count() const {
  return contributors.empty() ? 0 : contributors.size() - 1;
}

GoodContributorReport good_contributors(const SylowSpectrum& s) {
  GoodContributorReport report{s.group, {}, false, {}};
  if (s.entries.empty()) return report;
  const BigInt& top = s.entries.front().order;
  const double threshold = std::log2(3.0);
  for (const auto& e : s.entries) {
    const bool characteristic = !s.group.is_alternating() && e.prime == s.group.characteristic();
    if (&e == &s.entries.front()) {
      report.contributors.push_back({e.prime, characteristic});
      continue;
    }
    if (std::fabs(ratio_estimate(top, e.order) - threshold) < 1e-9) report.near_tie = true;
    switch (within_good_ratio(top, e.order)) {
      case Comparison::Yes:
        report.contributors.push_back({e.prime, characteristic});
        break;
      case Comparison::No:
        break;
      case Comparison::Undecided:
        report.undecided.push_back(e.prime);
        break;
    }
  }
  return report;
}

}  // namespace liesylow
