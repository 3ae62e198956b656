#include <algorithm>
#include <string>

#include "doctest.h"
#include "liesylow/theorems.hpp"

using namespace liesylow;

namespace {

GroupId group(Family f, unsigned n, unsigned long q) { return GroupId::make(f, n, q); }
GroupId group(Family f, unsigned long q) { return GroupId::make(f, 0, q); }

std::vector<std::string> keys(const std::vector<ExceptionKey>& ks) {
  std::vector<std::string> out;
  for (const auto& k : ks) out.push_back(k.describe());
  return out;
}

}  // namespace

TEST_CASE("check_theorem1 instances") {
  const BoundCheckResult g2 = check_theorem1(group(Family::G2, 3), 13);
  CHECK_FALSE(g2.holds);
  CHECK(g2.sylow_order == 13);
  CHECK(g2.E == 1);
  CHECK(g2.lhs == 4826809);
  CHECK(g2.rhs == 4245696);

  const BoundCheckResult d4 = check_theorem1(group(Family::Triality, 3), 13);
  CHECK_FALSE(d4.holds);
  CHECK(d4.sylow_order == 169);

  const BoundCheckResult tits = check_theorem1(group(Family::Ree2F4, 2), 13);
  CHECK(tits.holds);
  CHECK(tits.E == 1);
  CHECK(tits.k_num == 6);
  CHECK(tits.lhs == 4826809);
  CHECK(tits.rhs == 17971200);

  // K = 7/2: both sides are squared.
  const BoundCheckResult ree = check_theorem1(group(Family::Ree2G2, 27), 37);
  CHECK(ree.k_num == 7);
  CHECK(ree.k_den == 2);
  CHECK(ree.holds);
  CHECK(ree.lhs == pow(BigInt(37), 7));
  CHECK(ree.rhs == pow(order(group(Family::Ree2G2, 27)), 2));

  CHECK_THROWS_AS(check_theorem1(group(Family::G2, 3), 3), std::invalid_argument);
  CHECK_THROWS_AS(check_theorem1(group(Family::G2, 3), 11), std::invalid_argument);
}

TEST_CASE("admissible primes") {
  CHECK(admissible_primes(group(Family::G2, 3)) == std::vector<BigInt>{2, 7, 13});
  CHECK(admissible_primes(group(Family::A, 1, 4)) == std::vector<BigInt>{3, 5});
}

TEST_CASE("factor-count lemma") {
  const FactorCountResult e8 = check_factor_count(group(Family::E8, 2), 31);
  CHECK(e8.m == 5);
  CHECK(e8.divisible == std::vector<unsigned>{5});
  CHECK(e8.bound == 1);
  CHECK(e8.holds());

  const FactorCountResult g2 = check_factor_count(group(Family::G2, 3), 13);
  CHECK(g2.m == 3);
  CHECK(g2.divisible == std::vector<unsigned>{3});
  CHECK(g2.bound == 1);
  CHECK(g2.holds());

  const FactorCountResult a3 = check_factor_count(group(Family::A, 3, 2), 3);
  CHECK(a3.m == 2);
  CHECK(a3.divisible == std::vector<unsigned>{2});
  CHECK(a3.bound == 1);
  CHECK(a3.holds());

  // r = 2 divides Phi_1 and Phi_2 of odd q.
  const FactorCountResult b = check_factor_count(group(Family::B, 3, 3), 2);
  CHECK(b.m == 1);
  CHECK(b.divisible == std::vector<unsigned>{1, 2, 4});
  CHECK(b.bound == 3);
  CHECK(b.holds());
}

TEST_CASE("Q(T) bounds for classical groups") {
  const QBoundResult a1 = check_q_bound_classical(group(Family::A, 1, 4));
  CHECK(a1.largest.index == 2);
  CHECK(a1.largest.value == 5);
  CHECK(a1.a == 1);
  CHECK(a1.holds);

  const QBoundResult b2 = check_q_bound_classical(group(Family::B, 2, 3));
  CHECK(b2.largest.value == 16);
  CHECK(b2.holds);

  const QBoundResult u3 = check_q_bound_classical(group(Family::TwistedA, 2, 3));
  CHECK(u3.a == 2);
  CHECK(u3.holds);
  CHECK_THROWS(check_q_bound_classical(group(Family::G2, 3)));
}

TEST_CASE("Table 3 constants") {
  const Table3Result e7 = check_table3(group(Family::E7, 9));
  CHECK(e7.largest.index == 2);
  CHECK(e7.largest.exponent == 7);
  CHECK(e7.largest.value == 10000000);
  CHECK(e7.applies);
  CHECK(e7.holds());

  const Table3Result ree = check_table3(group(Family::Ree2G2, 27));
  CHECK(ree.largest.value == 703);
  CHECK(ree.applies);
  CHECK(ree.bound_holds);

  const Table3Result g2 = check_table3(group(Family::G2, 4));
  CHECK(g2.largest.value == 25);
  CHECK(g2.bound_holds);

  const Table3Result g2_small = check_table3(group(Family::G2, 3));
  CHECK_FALSE(g2_small.applies);
  CHECK(g2_small.holds());
}

TEST_CASE("rank form of the bound") {
  const Remark2Result d4 = check_remark2(group(Family::TwistedD, 4, 2), 17);
  CHECK(d4.k_holds);
  CHECK(d4.m_holds);
  CHECK(d4.holds());

  CHECK(check_remark2(group(Family::E6, 2), 73).holds());

  const Remark2Result a1 = check_remark2(group(Family::A, 1, 4), 5);
  CHECK(a1.exponent == 4);
  CHECK(a1.holds());
}

TEST_CASE("largest Sylow classification") {
  const LargestSylowClass psl27 = classify_largest_sylow(group(Family::A, 1, 7));
  CHECK(psl27.prime == 2);
  CHECK_FALSE(psl27.is_characteristic);
  CHECK(psl27.category == LargestSylowCategory::MersennePSL2);

  const LargestSylowClass psl28 = classify_largest_sylow(group(Family::A, 1, 8));
  CHECK(psl28.prime == 3);
  CHECK(psl28.category == LargestSylowCategory::PSL28);

  const LargestSylowClass psl24 = classify_largest_sylow(group(Family::A, 1, 4));
  CHECK(psl24.prime == 5);
  CHECK(psl24.category == LargestSylowCategory::FermatPSL2);

  const LargestSylowClass f4 = classify_largest_sylow(group(Family::F4, 3));
  CHECK(f4.prime == 3);
  CHECK(f4.is_characteristic);
  CHECK(f4.category == LargestSylowCategory::Generic);

  CHECK(classify_largest_sylow(group(Family::TwistedA, 2, 3)).category ==
        LargestSylowCategory::PSU33);
  CHECK(classify_largest_sylow(group(Family::TwistedA, 3, 2)).category ==
        LargestSylowCategory::PSU42);
  CHECK(classify_largest_sylow(group(Family::A, 1, 9)).category == LargestSylowCategory::Generic);
}

TEST_CASE("classification matches the prediction on PSL(2,q)") {
  for (const BigInt& q : prime_powers_in(4, 2048)) {
    const GroupId g = group(Family::A, 1, q.get_ui());
    INFO(g.describe());
    const LargestSylowClass c = classify_largest_sylow(g);
    REQUIRE(c.category == predicted_category(g));
    REQUIRE(c.category != LargestSylowCategory::Unexplained);
    REQUIRE(c.is_characteristic == (c.category == LargestSylowCategory::Generic));
  }
}

TEST_CASE("Buekenhout property") {
  const BuekenhoutResult g2 = check_buekenhout(group(Family::G2, 3));
  CHECK(g2.holds());
  CHECK(g2.report.secondary_count() == 1);

  const BuekenhoutResult b2 = check_buekenhout(group(Family::B, 2, 3));
  CHECK(b2.holds());
  CHECK(b2.report.secondary_count() == 1);
  CHECK(b2.report.contributors[1].prime == 2);

  CHECK(check_buekenhout(group(Family::E8, 2)).holds());
  CHECK(check_buekenhout(group(Family::A, 1, 5)).exempt);
  CHECK(check_buekenhout(group(Family::TwistedA, 2, 3)).exempt);
  CHECK_FALSE(check_buekenhout(group(Family::TwistedA, 3, 3)).exempt);
}

TEST_CASE("characteristic Sylow size") {
  for (const GroupId& g : {group(Family::A, 1, 4), group(Family::E8, 2), group(Family::Ree2F4, 2),
                           group(Family::TwistedD, 4, 3)}) {
    const GroupContext ctx(g);
    const CharacteristicSizeResult r = check_characteristic_size(ctx);
    CHECK(r.holds());
  }
}

TEST_CASE("alternating groups") {
  const AlternatingResult a9 = check_alternating(9);
  CHECK(a9.first.prime == 3);
  CHECK(a9.first.order == 81);
  CHECK(a9.irregular);
  CHECK(a9.pair_holds);
  CHECK(a9.bound_holds);

  const AlternatingResult a5 = check_alternating(5);
  CHECK(a5.first.prime == 5);
  CHECK(a5.pair_holds);

  const AlternatingResult a8 = check_alternating(8);
  CHECK(a8.first.prime == 2);
  CHECK(a8.second.prime == 3);
  CHECK_FALSE(a8.irregular);
  CHECK(a8.pair_holds);

  // 2^6 = 64 exceeds (20160)^0.363 ~ 36.5, and likewise at n = 5, 6.
  CHECK_FALSE(a8.bound_holds);
  CHECK_FALSE(a5.bound_holds);
  CHECK_FALSE(check_alternating(6).bound_holds);
  for (unsigned n = 9; n <= 300; ++n) {
    INFO(n);
    REQUIRE(check_alternating(n).holds());
  }
}

TEST_CASE("cyclotomic facts") {
  CHECK(check_minus_identity(12, 5));
  CHECK(check_plus_identity(9, 2));
  const CommonDivisorResult c = check_common_divisors(2, 6, 2);
  CHECK(c.gcd == 3);
  CHECK(c.primes == std::vector<BigInt>{3});
  CHECK(c.holds);
  const CommonDivisorResult none = check_common_divisors(3, 4, 2);
  CHECK(none.gcd == 1);
  CHECK(none.holds);
  for (unsigned q = 2; q <= 9; ++q) CHECK(check_inequality_one(q).holds);
}

TEST_CASE("grid enumeration") {
  Grid grid;
  grid.families = {Family::G2, Family::Suzuki};
  grid.q_max = 32;
  grid.below_q0 = true;
  std::vector<std::string> names;
  for (const GroupId& g : enumerate_groups(grid)) names.push_back(g.describe());
  CHECK(names == std::vector<std::string>{"G2(3)"});
  grid.below_q0 = false;
  grid.from_q0 = true;
  names.clear();
  for (const GroupId& g : enumerate_groups(grid)) names.push_back(g.describe());
  CHECK(names.front() == "2B2(8)");
  CHECK(names.back() == "G2(32)");
}

TEST_CASE("exception scan") {
  Grid grid;
  grid.families.assign(exceptional_families().begin(), exceptional_families().end());
  std::erase(grid.families, Family::E8);
  grid.below_q0 = true;
  const ScanReport report = scan_exceptions(grid);
  CHECK(report.failures() == 0);
  CHECK(report.match());
  CHECK(keys(report.expected) ==
        std::vector<std::string>{"(3D4,3,13)", "(E6,3,13)", "(F4,3,13)", "(G2,3,13)"});

  const ScanReport strict = scan_exceptions(grid, {}, false);
  CHECK_FALSE(strict.match());
  CHECK(strict.unexpected.size() == 4);

  Grid suzuki;
  suzuki.families = {Family::Suzuki};
  suzuki.q_max = 128;
  const ScanReport s = scan_exceptions(suzuki);
  CHECK(s.cells.size() == 3);
  CHECK(s.violations.empty());
  CHECK(s.match());
}

TEST_CASE("scan output does not depend on worker count") {
  Grid grid;
  grid.families = {Family::A, Family::TwistedA, Family::G2};
  grid.n_max = 4;
  grid.q_max = 16;
  const ScanReport one = scan_exceptions(grid, ScanOptions{1, {}});
  const ScanReport many = scan_exceptions(grid, ScanOptions{6, {}});
  REQUIRE(one.cells.size() == many.cells.size());
  for (std::size_t k = 0; k < one.cells.size(); ++k) {
    REQUIRE(one.cells[k].group == many.cells[k].group);
    REQUIRE(one.cells[k].result->size() == many.cells[k].result->size());
  }
  CHECK(keys(one.expected) == keys(many.expected));
}

TEST_CASE("scan records exhausted factorization budgets per cell") {
  Grid grid;
  // Phi_30(27) = 387631 * 755551 needs the rho splitter.
  grid.families = {Family::E8};
  grid.q_min = 27;
  grid.q_max = 27;
  const ScanReport r = scan_exceptions(grid, ScanOptions{2, FactorOptions{1, 1}});
  CHECK(r.failures() == 1);
  for (const auto& cell : r.cells) {
    if (!cell.result) CHECK_FALSE(cell.failure.empty());
  }
}
