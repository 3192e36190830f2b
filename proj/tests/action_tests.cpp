#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torodyn/action.hpp"
#include "torodyn/errors.hpp"
#include "torodyn/matrix.hpp"

using namespace torodyn;
using action::CommutingPair;
using action::multiplicative_dependence;

namespace {
const IMat kCatM = IMat::from_rows({{2, 1}, {1, 1}});

CommutingPair times_pair(long long k, long long l) {
  return CommutingPair::make(ToralMap::times(k), ToralMap::times(l));
}
}  // namespace

TEST_CASE("commutation is verified exactly") {
  CHECK(action::commutes(ToralMap::times(2), ToralMap::times(3)));
  auto cat = ToralMap::from_matrix(kCatM);
  auto other = ToralMap::from_matrix(IMat::from_rows({{1, 1}, {1, 0}}));
  CHECK(action::commutes(cat, other));
  auto shear = ToralMap::from_matrix(IMat::from_rows({{1, 1}, {0, 1}}));
  CHECK_FALSE(action::commutes(cat, shear));
  CHECK_THROWS_AS(CommutingPair::make(cat, shear), PreconditionError);
  CHECK_THROWS_AS(CommutingPair::make(cat, ToralMap::times(2)), DimensionMismatch);
}

TEST_CASE("x2 and x8 satisfy T^3 = S") {
  auto cert = multiplicative_dependence(times_pair(2, 8), 20);
  REQUIRE(cert.relation.has_value());
  CHECK(cert.relation->first == 3);
  CHECK(cert.relation->second == 1);
}

TEST_CASE("x2 and x3 admit no relation at bound 20") {
  auto cert = multiplicative_dependence(times_pair(2, 3), 20);
  CHECK_FALSE(cert.relation.has_value());
  CHECK(cert.search_bound == 20);
}

TEST_CASE("a map and its square satisfy T^2 = S") {
  auto cat = ToralMap::from_matrix(kCatM);
  auto sq = ToralMap::from_matrix(IMat::from_rows({{5, 3}, {3, 2}}));  // cat^2
  auto cert = multiplicative_dependence(CommutingPair::make(cat, sq), 20);
  REQUIRE(cert.relation.has_value());
  CHECK(cert.relation->first == 2);
  CHECK(cert.relation->second == 1);
}

TEST_CASE("negative exponents are found for automorphism pairs") {
  auto cat = ToralMap::from_matrix(kCatM);
  auto inv = ToralMap::from_matrix(IMat::from_rows({{1, -1}, {-1, 2}}));  // cat^-1
  auto cert = multiplicative_dependence(CommutingPair::make(cat, inv), 20);
  REQUIRE(cert.relation.has_value());
  // canonical orientation prefers t > 0
  CHECK(cert.relation->first == 1);
  CHECK(cert.relation->second == -1);
}

TEST_CASE("sign mismatches resolve at even exponents") {
  // (-2)^2 = 2^2, so the smallest relation for x2 vs x-2 is (2, 2)
  auto cert = multiplicative_dependence(times_pair(2, -2), 10);
  REQUIRE(cert.relation.has_value());
  CHECK(cert.relation->first == 2);
  CHECK(cert.relation->second == 2);
}

TEST_CASE("equal entropies alone never certify a relation") {
  // diag(2,3) and diag(3,2) commute and share entropy log 6, but
  // 2^t = 3^s has no nonzero integer solution
  auto t = ToralMap::from_matrix(IMat::from_rows({{2, 0}, {0, 3}}));
  auto s = ToralMap::from_matrix(IMat::from_rows({{3, 0}, {0, 2}}));
  auto cert = multiplicative_dependence(CommutingPair::make(t, s), 10);
  CHECK_FALSE(cert.relation.has_value());
  CHECK_FALSE(cert.log_ratio_witness.empty());
}

TEST_CASE("commuting partners of the cat map form the expected unit group slice") {
  auto cat = ToralMap::from_matrix(kCatM);
  auto partners = action::find_commuting_partners(cat, 3);
  CHECK(!partners.empty());
  for (const auto& p : partners) {
    CHECK(action::commutes(cat, p));
    CHECK(p.invertible());
  }
  // powers of the seed up to squares are excluded by contract
  for (const auto& p : partners) {
    bool is_cat = p.entries.a == kCatM.a;
    CHECK_FALSE(is_cat);
  }
}

TEST_CASE("partner search requires an irreducible seed") {
  auto split = ToralMap::from_matrix(IMat::from_rows({{2, 0}, {0, 3}}));
  CHECK_THROWS_AS(action::find_commuting_partners(split, 2), ReducibleSeed);
}

TEST_CASE("joint factor scan splits a diagonal pair into rank-one blocks") {
  auto t = ToralMap::from_matrix(IMat::from_rows({{2, 0}, {0, 3}}));
  auto s = ToralMap::from_matrix(IMat::from_rows({{4, 0}, {0, 3}}));
  auto scan = action::rank_one_factor_scan(CommutingPair::make(t, s), 10);
  REQUIRE(scan.blocks.size() == 2);
  CHECK(scan.rank_one_found);
  int dependent = 0;
  for (const auto& b : scan.blocks) dependent += b.dependent ? 1 : 0;
  // x2 vs x4 block carries T^2 = S, x3 vs x3 block carries T = S
  CHECK(dependent == 2);
}

TEST_CASE("an irreducible independent pair yields a single non-dependent block") {
  auto cat = ToralMap::from_matrix(kCatM);
  auto other = ToralMap::from_matrix(IMat::from_rows({{3, 1}, {1, 2}}));  // cat + I, commutes
  auto scan = action::rank_one_factor_scan(CommutingPair::make(cat, other), 8);
  REQUIRE(scan.blocks.size() == 1);
  CHECK(scan.blocks[0].integer_basis.size() == 2);
}

TEST_CASE("twisted relations are caught with the root-of-unity cap") {
  // T = x2, S = x-2: S^2 = T^2, i.e. T^2 = U S^2 with U = id, but the
  // plain search already sees (2, 2). The twist matters for U = -1:
  // T^1 = (-1) S^1.
  auto scan = action::rank_one_factor_scan(times_pair(2, -2), 8, 12);
  REQUIRE(scan.blocks.size() == 1);
  REQUIRE(scan.blocks[0].relation.has_value());
  auto [t, s, k] = *scan.blocks[0].relation;
  CHECK(t >= 1);
  CHECK(k >= 1);
}
