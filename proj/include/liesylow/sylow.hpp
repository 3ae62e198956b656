// Sylow subgroup orders and spectra of simple groups.
#ifndef LIESYLOW_SYLOW_HPP
#define LIESYLOW_SYLOW_HPP

#include <vector>

#include "liesylow/groups.hpp"

namespace liesylow {

/// The r-part of |T|. A prime not dividing |T| gives a trivial result
/// (exponent 0) which callers must check for.
struct SylowOrder {
  BigInt prime;
  unsigned exponent = 0;
  BigInt order = 1;

  bool trivial() const { return exponent == 0; }
};

SylowOrder sylow_order(const GroupId& g, const BigInt& r);
/// Same, reusing an already computed |T|.
SylowOrder sylow_order(const GroupId& g, const BigInt& group_order, const BigInt& r);

/// The Sylow p-subgroup order for the defining characteristic p.
BigInt characteristic_sylow(const GroupId& g);

struct SylowEntry {
  BigInt prime;
  unsigned exponent;
  BigInt order;
};

/// All Sylow orders, strictly decreasing by order.
struct SylowSpectrum {
  GroupId group;
  std::vector<SylowEntry> entries;

  BigInt product() const;
};

/// Throws FactorizationIncomplete if some factor resists the budget.
SylowSpectrum sylow_spectrum(const GroupId& g, const FactorOptions& options = {});

/// Primes dividing |T|, ascending.
std::vector<BigInt> order_primes(const GroupId& g, const FactorOptions& options = {});

std::pair<SylowEntry, SylowEntry> largest_two(const SylowSpectrum& s);

enum class Comparison { Yes, No, Undecided };

/// Decides log(top)/log(other) <= log 3 / log 2 exactly. Uses interval
/// arithmetic in MPFR up to max_bits of precision, then gives Undecided.
Comparison within_good_ratio(const BigInt& top, const BigInt& other,
                             unsigned long max_bits = 1ul << 16);

/// log(top)/log(other) in floating point. Display only.
double ratio_estimate(const BigInt& top, const BigInt& other);

struct GoodContributor {
  BigInt prime;
  bool is_characteristic;
};

struct GoodContributorReport {
  GroupId group;
  /// Includes p_1 itself, which always qualifies.
  std::vector<GoodContributor> contributors;
  /// Some ratio landed within 1e-9 of the threshold (diagnostic only).
  bool near_tie = false;
  /// Primes the bracketing could not separate from the threshold.
  std::vector<BigInt> undecided;

  /// Good contributors other than p_1.
  std::size_t secondary_count() const;
};

GoodContributorReport good_contributors(const SylowSpectrum& s);

}  // namespace liesylow

#endif  // LIESYLOW_SYLOW_HPP
