#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "torodyn/cartan.hpp"
#include "torodyn/errors.hpp"

using namespace torodyn;
using cartan::CartanElement;
using cartan::RootSystemSpec;

TEST_CASE("sl_n root systems know their dimensions") {
  auto sl3 = RootSystemSpec::sl({3});
  CHECK(sl3.rank() == 2);
  CHECK(sl3.lie_dimension() == 8);
  CHECK(sl3.eligible());
  auto sl2 = RootSystemSpec::sl({2});
  CHECK(sl2.lie_dimension() == 3);
  CHECK_FALSE(sl2.eligible());  // rank 1 factors carry rank-one subactions
  auto prod = RootSystemSpec::sl({3, 4});
  CHECK(prod.rank() == 5);
  CHECK(prod.lie_dimension() == 8 + 15);
}

TEST_CASE("diagonal flow entropy counts expanded roots with multiplicity") {
  auto sl3 = RootSystemSpec::sl({3});
  auto t = CartanElement::make(sl3, {{1.0, 0.0, -1.0}});
  auto rep = cartan::cartan_entropy(sl3, t);
  CHECK(rep.entropy == 4.0);  // roots 1, 1, 2 on the positive side
  CHECK(rep.dim_expanded == 3);
  CHECK(rep.dim_contracted == 3);
  CHECK(rep.dim_neutral == 2);
  CHECK(rep.dim_expanded + rep.dim_contracted + rep.dim_neutral == sl3.lie_dimension());
  REQUIRE(rep.factors.size() == 1);
  CHECK_FALSE(rep.factors[0].neutral);
}

TEST_CASE("entropy is symmetric under inversion and scales linearly") {
  auto sl3 = RootSystemSpec::sl({3});
  auto t = CartanElement::make(sl3, {{1.0, 0.25, -1.25}});
  auto neg = CartanElement::make(sl3, {{-1.0, -0.25, 1.25}});
  auto twice = CartanElement::make(sl3, {{2.0, 0.5, -2.5}});
  auto r1 = cartan::cartan_entropy(sl3, t);
  auto r2 = cartan::cartan_entropy(sl3, neg);
  auto r3 = cartan::cartan_entropy(sl3, twice);
  CHECK(r1.entropy == doctest::Approx(r2.entropy).epsilon(1e-15));
  CHECK(r1.dim_expanded == r2.dim_contracted);
  CHECK(r1.dim_contracted == r2.dim_expanded);
  CHECK(r3.entropy == doctest::Approx(2.0 * r1.entropy).epsilon(1e-15));
  CHECK(r3.dim_expanded == r1.dim_expanded);
}

TEST_CASE("elements must be traceless and well shaped") {
  auto sl3 = RootSystemSpec::sl({3});
  CHECK_THROWS_AS(CartanElement::make(sl3, {{1.0, 0.0, 0.0}}), PreconditionError);
  CHECK_THROWS_AS(CartanElement::make(sl3, {{1.0, -1.0}}), PreconditionError);
  CHECK_THROWS_AS(CartanElement::make(sl3, {{1.0, -1.0, 0.0}, {0.5, -0.5, 0.0}}),
                  PreconditionError);
}

TEST_CASE("a neutral factor is flagged") {
  auto prod = RootSystemSpec::sl({3, 3});
  auto t = CartanElement::make(prod, {{1.0, 0.0, -1.0}, {0.0, 0.0, 0.0}});
  auto rep = cartan::cartan_entropy(prod, t);
  REQUIRE(rep.factors.size() == 2);
  CHECK_FALSE(rep.factors[0].neutral);
  CHECK(rep.factors[1].neutral);
  CHECK(rep.entropy == 4.0);  // only the live factor contributes
}

TEST_CASE("plane independence accepts the generic pair and rejects multiples") {
  auto sl3 = RootSystemSpec::sl({3});
  auto a1 = CartanElement::make(sl3, {{1.0, 0.0, -1.0}});
  auto good = CartanElement::make(sl3, {{0.0, 1.0, -1.0}});
  auto bad = CartanElement::make(sl3, {{2.0, 0.0, -2.0}});
  auto pass = cartan::check_theorem14_hypotheses(sl3, a1, good);
  CHECK(pass.all_pass);
  REQUIRE(pass.factors.size() == 1);
  CHECK(pass.factors[0].independent);
  auto fail = cartan::check_theorem14_hypotheses(sl3, a1, bad);
  CHECK_FALSE(fail.all_pass);
  CHECK_FALSE(fail.factors[0].independent);
}

TEST_CASE("independence must hold on every factor") {
  auto prod = RootSystemSpec::sl({3, 3});
  auto a1 = CartanElement::make(prod, {{1.0, 0.0, -1.0}, {1.0, 0.0, -1.0}});
  auto a2 = CartanElement::make(prod, {{0.0, 1.0, -1.0}, {2.0, 0.0, -2.0}});
  auto rep = cartan::check_theorem14_hypotheses(prod, a1, a2);
  CHECK(rep.factors[0].independent);
  CHECK_FALSE(rep.factors[1].independent);
  CHECK_FALSE(rep.all_pass);
}

TEST_CASE("rank-one root systems are turned away") {
  auto sl2 = RootSystemSpec::sl({2});
  auto t = CartanElement::make(sl2, {{1.0, -1.0}});
  CHECK_THROWS_AS(cartan::check_theorem14_hypotheses(sl2, t, t), RankTooLow);
  CHECK_THROWS_AS(cartan::cartan_dim_bound(sl2, t, 0.5), RankTooLow);
}

TEST_CASE("dimension bound without an entropy assumption recovers the full group") {
  auto sl3 = RootSystemSpec::sl({3});
  auto t = CartanElement::make(sl3, {{1.0, 0.0, -1.0}});
  auto b = cartan::cartan_dim_bound(sl3, t);
  CHECK(b.bound == 8.0);  // expanded + contracted + neutral, exactly
  CHECK(b.delta_u == 3.0);
  CHECK(b.delta_s == 3.0);
  CHECK(b.dim_neutral == 2);
  CHECK_FALSE(b.degenerate);
}

TEST_CASE("dimension bound interpolates for intermediate entropies") {
  auto sl3 = RootSystemSpec::sl({3});
  auto t = CartanElement::make(sl3, {{1.0, 0.0, -1.0}});
  // at h = 2 the cheapest allocation is the double root alone
  auto b = cartan::cartan_dim_bound(sl3, t, 2.0);
  CHECK(b.delta_u == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.delta_s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.bound == doctest::Approx(4.0).epsilon(1e-12));
  // higher assumed entropy can only push the bound up
  auto b2 = cartan::cartan_dim_bound(sl3, t, 3.0);
  CHECK(b2.bound >= b.bound - 1e-12);
  CHECK_THROWS_AS(cartan::cartan_dim_bound(sl3, t, 4.0 + 1e-6), EntropyOutOfRange);
}

TEST_CASE("a null element yields the degenerate neutral bound") {
  auto sl3 = RootSystemSpec::sl({3});
  auto zero = CartanElement::make(sl3, {{0.0, 0.0, 0.0}});
  auto b = cartan::cartan_dim_bound(sl3, zero, 0.0);
  CHECK(b.degenerate);
  CHECK(b.bound == 8.0);  // everything is neutral
  CHECK(b.dim_neutral == 8);
}

TEST_CASE("multiplicity scales the root spaces") {
  auto spec = RootSystemSpec::sl({3}, 2);
  auto t = CartanElement::make(spec, {{1.0, 0.0, -1.0}});
  auto rep = cartan::cartan_entropy(spec, t);
  CHECK(rep.entropy == 8.0);
  CHECK(rep.dim_expanded == 6);
  CHECK(rep.dim_neutral == 2);  // the Cartan itself is not duplicated
}
