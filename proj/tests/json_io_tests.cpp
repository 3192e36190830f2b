#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torodyn/json_io.hpp"

using namespace torodyn;
using jsonio::Json;

TEST_CASE("integers widen to decimal strings only when they must") {
  CHECK(jsonio::big_int(BigInt(42)) == Json(42));
  CHECK(jsonio::big_int(BigInt(-7)) == Json(-7));
  BigInt big = ipow(BigInt(10), 25);
  auto j = jsonio::big_int(big);
  REQUIRE(j.is_string());
  CHECK(j.get<std::string>() == "10000000000000000000000000");
}

TEST_CASE("rationals serialize as p/q strings") {
  CHECK(jsonio::rational(Rational(7, 8)) == Json("7/8"));
  CHECK(jsonio::rational(Rational(-1, 3)) == Json("-1/3"));
  CHECK(jsonio::rational(Rational(5)) == Json("5"));
}

TEST_CASE("certified values carry their radius") {
  ValErr v{0.5, 1e-12};
  auto j = jsonio::val_err(v);
  CHECK(j.at("value") == 0.5);
  CHECK(j.at("error_radius") == 1e-12);
}

TEST_CASE("map serialization names dimension, kind, and determinant") {
  auto j = jsonio::toral_map(ToralMap::from_matrix(IMat::from_rows({{2, 1}, {1, 1}})));
  CHECK(j.at("dim") == 2);
  CHECK(j.at("kind") == "automorphism");
  CHECK(j.at("determinant") == 1);
  CHECK(j.at("matrix") == Json::array({Json::array({2, 1}), Json::array({1, 1})}));
  auto e = jsonio::toral_map(ToralMap::times(3));
  CHECK(e.at("kind") == "epimorphism");
}

TEST_CASE("report serializers expose the fields the CLI promises") {
  auto cat = ToralMap::from_matrix(IMat::from_rows({{2, 1}, {1, 1}}));
  auto sd = spectral::spectral_data(cat);
  auto spec_json = jsonio::spectral_report(sd);
  CHECK(spec_json.contains("characteristic"));
  CHECK(spec_json.contains("eigenvalues"));
  CHECK(spec_json.at("eigenvalues").size() == 2);

  auto rep_json = jsonio::entropy_report(spectral::entropy_report(cat, sd));
  for (const char* k : {"h_top", "kappa", "hyperbolic", "ergodic", "expanding_dim"})
    CHECK(rep_json.contains(k));

  auto ball = symbolic::BallSpec::make(Rational(7, 8), Rational(1, 8));
  auto [inner, outer] = symbolic::avoid_ball_sft(2, ball, 2);
  auto sft_json = jsonio::sft_spec(inner);
  CHECK(sft_json.at("forbidden_words") == Json::array({"11"}));
  CHECK(sft_json.at("polarity") == "inner");

  auto pd = symbolic::perron(inner);
  auto perron_json = jsonio::perron_report(pd);
  for (const char* k : {"spectral_radius", "entropy", "dimension", "states",
                        "dominant_states", "residual_bound"})
    CHECK(perron_json.contains(k));
}

TEST_CASE("optional bound fields serialize as null") {
  auto m2 = ToralMap::times(2);
  auto sd = spectral::spectral_data(m2);
  auto rep = spectral::entropy_report(m2, sd);
  auto chain = bounds::predicted_dim_bound(sd, rep, bounds::QGeometry{1, 1.0});
  auto j = jsonio::bound_report(chain);
  CHECK(j.at("delta_s_bound").is_null());
  CHECK(j.at("entropy_bound_stable").is_null());
  CHECK(j.at("combined") == 1.0);
  CHECK(j.at("provenance").is_array());
}
