#include <cmath>
#include <vector>

#include "doctest.h"
#include "liesylow/cyclotomic.hpp"
#include "liesylow/sylow.hpp"
#include "liesylow/theorems.hpp"

using namespace liesylow;

namespace {

GroupId group(Family f, unsigned n, unsigned long q) { return GroupId::make(f, n, q); }
GroupId group(Family f, unsigned long q) { return GroupId::make(f, 0, q); }

std::vector<std::pair<BigInt, BigInt>> pairs(const SylowSpectrum& s) {
  std::vector<std::pair<BigInt, BigInt>> out;
  for (const auto& e : s.entries) out.emplace_back(e.prime, e.order);
  return out;
}

using Pairs = std::vector<std::pair<BigInt, BigInt>>;

}  // namespace

TEST_CASE("sylow_order") {
  const SylowOrder e8 = sylow_order(group(Family::E8, 2), 31);
  CHECK(e8.order == 961);
  CHECK(e8.exponent == 2);
  CHECK(sylow_order(group(Family::G2, 3), 13).order == 13);
  CHECK(sylow_order(group(Family::A, 1, 4), 2).order == 4);
  const SylowOrder none = sylow_order(group(Family::A, 1, 5), 11);
  CHECK(none.trivial());
  CHECK(none.order == 1);
  CHECK(sylow_order(GroupId::alternating(10), 2).order == 128);
  CHECK_THROWS(sylow_order(group(Family::A, 1, 5), 4));
}

TEST_CASE("characteristic_sylow") {
  CHECK(characteristic_sylow(group(Family::A, 1, 8)) == 8);
  CHECK(characteristic_sylow(group(Family::F4, 3)) == pow(BigInt(3), 24));
  CHECK(characteristic_sylow(group(Family::Ree2F4, 2)) == 2048);
  CHECK(characteristic_sylow(group(Family::Ree2F4, 8)) == pow(BigInt(8), 12));
}

TEST_CASE("sylow_spectrum") {
  CHECK(pairs(sylow_spectrum(group(Family::A, 1, 5))) == Pairs{{5, 5}, {2, 4}, {3, 3}});
  CHECK(pairs(sylow_spectrum(group(Family::Ree2F4, 2))) ==
        Pairs{{2, 2048}, {3, 27}, {5, 25}, {13, 13}});
  // |G2(3)| = 2^6 3^6 7 13.
  CHECK(pairs(sylow_spectrum(group(Family::G2, 3))) ==
        Pairs{{3, 729}, {2, 64}, {13, 13}, {7, 7}});
  const auto [first, second] = largest_two(sylow_spectrum(GroupId::alternating(9)));
  CHECK(first.prime == 3);
  CHECK(first.order == 81);
  CHECK(second.prime == 2);
  CHECK(second.order == 64);
}

TEST_CASE("spectrum reassembles the order") {
  Grid grid;
  grid.families.assign(lie_families().begin(), lie_families().end());
  grid.n_max = 8;
  grid.q_max = 16;
  for (const GroupId& g : enumerate_groups(grid)) {
    INFO(g.describe());
    const SylowSpectrum s = sylow_spectrum(g);
    REQUIRE(s.product() == order(g));
    for (std::size_t k = 1; k < s.entries.size(); ++k) {
      REQUIRE(s.entries[k - 1].order > s.entries[k].order);
    }
  }
}

TEST_CASE("r-parts follow the cyclotomic structure") {
  Grid grid;
  grid.families.assign(classical_families().begin(), classical_families().end());
  grid.n_max = 10;
  grid.q_max = 16;
  for (const GroupId& g : enumerate_groups(grid)) {
    const GroupContext ctx(g);
    const BigInt q = g.q().value();
    for (const BigInt& r : admissible_primes(g)) {
      if (r > 97) continue;
      INFO(g.describe() << " r=" << r.get_str());
      REQUIRE(structural_valuation(ctx, r) == sylow_order(g, ctx.order, r).exponent);
      // r divides Phi_i(q) with e_i > 0 only along the chain m, mr, mr^2, ...
      const unsigned long m = mult_order(q, r);
      for (const auto& [i, e] : ctx.structure.exponents) {
        if (!mpz_divisible_p(phi_eval(i, q).get_mpz_t(), r.get_mpz_t())) continue;
        unsigned long rest = i;
        REQUIRE(rest % m == 0);
        rest /= m;
        while (rest % r.get_ui() == 0) rest /= r.get_ui();
        REQUIRE(rest == 1);
      }
    }
  }
}

TEST_CASE("within_good_ratio") {
  // log 5 / log 4 < log 3 / log 2
  CHECK(within_good_ratio(5, 4) == Comparison::Yes);
  // log 729 / log 32 > log 3 / log 2
  CHECK(within_good_ratio(729, 32) == Comparison::No);
  // Exact equality: 3^6 against 2^6.
  CHECK(within_good_ratio(729, 64) == Comparison::Yes);
  CHECK(within_good_ratio(pow(BigInt(3), 40), pow(BigInt(2), 40)) == Comparison::Yes);
  CHECK(within_good_ratio(pow(BigInt(3), 40) + 1, pow(BigInt(2), 40)) == Comparison::No);
  CHECK(within_good_ratio(7, 7) == Comparison::Yes);
  // 3^12 = 531441 and 2^19 = 524288 differ by a ratio close to one.
  CHECK(within_good_ratio(531441, 524288) == Comparison::Yes);
  for (unsigned long top = 2; top <= 400; ++top) {
    for (unsigned long other = 2; other <= top; ++other) {
      const double ratio = std::log(double(top)) / std::log(double(other));
      const double gap = ratio - std::log(3.0) / std::log(2.0);
      if (std::abs(gap) < 1e-9) continue;
      REQUIRE(within_good_ratio(top, other) == (gap < 0 ? Comparison::Yes : Comparison::No));
    }
  }
}

TEST_CASE("good contributors") {
  const GoodContributorReport psl25 = good_contributors(sylow_spectrum(group(Family::A, 1, 5)));
  // |A1(5)| = 60: log 5/log 4 and log 5/log 3 both stay below log 3/log 2.
  REQUIRE(psl25.contributors.size() == 3);
  CHECK(psl25.contributors[0].prime == 5);
  CHECK(psl25.contributors[1].prime == 2);
  CHECK(psl25.contributors[2].prime == 3);
  CHECK(psl25.secondary_count() == 2);

  // 2^6 against 3^6 sits exactly on the threshold and counts as good.
  const GoodContributorReport g23 = good_contributors(sylow_spectrum(group(Family::G2, 3)));
  REQUIRE(g23.contributors.size() == 2);
  CHECK(g23.contributors[0].prime == 3);
  CHECK(g23.contributors[0].is_characteristic);
  CHECK(g23.contributors[1].prime == 2);
  CHECK_FALSE(g23.contributors[1].is_characteristic);
  CHECK(g23.undecided.empty());

  const GoodContributorReport e8 = good_contributors(sylow_spectrum(group(Family::E8, 2)));
  CHECK(e8.secondary_count() == 0);
}
