#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "torodyn/errors.hpp"
#include "torodyn/symbolic.hpp"

using namespace torodyn;
using symbolic::avoid_ball_sft;
using symbolic::BallSpec;
using symbolic::perron;
using symbolic::Polarity;

namespace {
const double kGoldenDim = std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::log(2.0);

BallSpec top_quarter() { return BallSpec::make(Rational(7, 8), Rational(1, 8)); }
}  // namespace

TEST_CASE("ball validation rejects out-of-range radii") {
  CHECK_THROWS_AS(BallSpec::make(Rational(1, 2), Rational(1, 2)), PreconditionError);
  CHECK_THROWS_AS(BallSpec::make(Rational(1, 2), Rational(0)), PreconditionError);
  auto b = BallSpec::make(Rational(9, 8), Rational(1, 8));  // center reduced mod 1
  CHECK(b.center == Rational(1, 8));
}

TEST_CASE("avoiding the top quarter arc forbids exactly the word 11") {
  auto [inner, outer] = avoid_ball_sft(2, top_quarter(), 2);
  REQUIRE(inner.forbidden.size() == 1);
  CHECK(inner.forbidden[0] == 3u);
  CHECK(inner.word_string(3) == "11");
  REQUIRE(outer.forbidden.size() == 1);
  CHECK(outer.forbidden[0] == 3u);
  CHECK(inner.polarity == Polarity::inner);
  CHECK(outer.polarity == Polarity::outer);
}

TEST_CASE("a ball straddling zero forbids 00 and 11 at both polarities") {
  auto ball = BallSpec::make(Rational(0), Rational(1, 4));
  auto [inner, outer] = avoid_ball_sft(2, ball, 2);
  CHECK(inner.forbidden == std::vector<std::uint32_t>{0u, 3u});
  CHECK(outer.forbidden == std::vector<std::uint32_t>{0u, 3u});
}

TEST_CASE("windows too coarse for the ball are rejected") {
  CHECK_THROWS_AS(avoid_ball_sft(2, top_quarter(), 1), WindowTooCoarse);
}

TEST_CASE("golden mean shift dimension is certified to full precision") {
  auto [inner, outer] = avoid_ball_sft(2, top_quarter(), 2);
  auto pd = perron(inner);
  CHECK(std::abs(pd.dimension.value - kGoldenDim) < 1e-12);
  CHECK(pd.dimension.radius < 1e-12);
  CHECK(std::abs(pd.spectral_radius.value - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-12);
  CHECK(pd.residual_bound < 1e-10);
  // the transfer graph on 1-digit states: 0 -> {0,1}, 1 -> {0}
  CHECK(pd.min_row_sum == 1);
  CHECK(pd.max_row_sum == 2);
}

TEST_CASE("admissible word counts follow the Fibonacci recursion") {
  auto [inner, outer] = avoid_ball_sft(2, top_quarter(), 2);
  // f(n) = f(n-1) + f(n-2), no length-12 word contains 11 in 377 ways
  CHECK(symbolic::count_admissible_words(inner, 12) == BigInt(377));
  CHECK(symbolic::count_admissible_words(inner, 1) == BigInt(2));
  CHECK(symbolic::count_admissible_words(inner, 2) == BigInt(3));
  BigInt a = symbolic::count_admissible_words(inner, 10);
  BigInt b = symbolic::count_admissible_words(inner, 11);
  CHECK(symbolic::count_admissible_words(inner, 12) == a + b);
}

TEST_CASE("an all-covering ball leaves an empty shift") {
  auto ball = BallSpec::make(Rational(1, 2), Rational(49, 100));
  auto [inner, outer] = avoid_ball_sft(2, ball, 1);
  CHECK_THROWS_AS(perron(inner), EmptyShift);
}

TEST_CASE("inner dimension never exceeds outer dimension") {
  std::mt19937_64 rng(11);
  int tested = 0;
  while (tested < 12) {
    int base = (rng() % 2) ? 2 : 3;
    int window = 2 + static_cast<int>(rng() % 4);
    Rational center(static_cast<long long>(rng() % 64), 64);
    Rational radius(1 + static_cast<long long>(rng() % 12), 32);
    if (Rational(2) * radius < Rational(BigInt(1), ipow(BigInt(base), static_cast<unsigned>(window))))
      continue;
    auto [inner, outer] = avoid_ball_sft(base, BallSpec::make(center, radius), window);
    double din, dout;
    try {
      din = perron(inner).dimension.value;
    } catch (const EmptyShift&) {
      din = 0.0;
    }
    try {
      dout = perron(outer).dimension.value;
    } catch (const EmptyShift&) {
      dout = 0.0;
    }
    CHECK(din <= dout + 1e-12);
    ++tested;
  }
}

TEST_CASE("refining the window squeezes the sandwich monotonically") {
  auto ball = BallSpec::make(Rational(1, 3), Rational(1, 7));
  double prev_inner = -1.0, prev_outer = 2.0;
  for (int window = 3; window <= 7; ++window) {
    auto [inner, outer] = avoid_ball_sft(2, ball, window);
    double din = perron(inner).dimension.value;
    double dout = perron(outer).dimension.value;
    CHECK(din >= prev_inner - 1e-12);   // inner shifts grow with the window
    CHECK(dout <= prev_outer + 1e-12);  // outer shifts shrink
    CHECK(din <= dout + 1e-12);
    prev_inner = din;
    prev_outer = dout;
  }
}

TEST_CASE("parry samples are admissible and deterministic in the seed") {
  auto [inner, outer] = avoid_ball_sft(2, top_quarter(), 2);
  auto pd = perron(inner);
  auto w1 = symbolic::parry_sample(inner, pd, 2000, 99);
  auto w2 = symbolic::parry_sample(inner, pd, 2000, 99);
  auto w3 = symbolic::parry_sample(inner, pd, 2000, 100);
  CHECK(w1 == w2);
  CHECK(w1 != w3);
  CHECK(inner.admissible(w1));
  CHECK(inner.admissible(w3));
}

TEST_CASE("parry symbol frequencies match the stationary law") {
  auto [inner, outer] = avoid_ball_sft(2, top_quarter(), 2);
  auto pd = perron(inner);
  const long long n = 100000;
  auto w = symbolic::parry_sample(inner, pd, n, 12345);
  long long ones = 0;
  for (int d : w) ones += d;
  // stationary P(1) = (5 - sqrt 5)/10; allow 3 sigma of binomial noise
  const double p = (5.0 - std::sqrt(5.0)) / 10.0;
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  CHECK(std::abs(static_cast<double>(ones) / n - p) < 3.0 * sigma);
}

TEST_CASE("base-3 middle ball reproduces the no-middle-digit shift") {
  // the open middle-third ball kills exactly cylinder 1 at window 1
  auto ball = BallSpec::make(Rational(1, 2), Rational(1, 6));
  auto [inner, outer] = avoid_ball_sft(3, ball, 1);
  CHECK(inner.forbidden == std::vector<std::uint32_t>{1u});
  auto pd = perron(inner);
  CHECK(std::abs(pd.dimension.value - std::log(2.0) / std::log(3.0)) < 1e-12);
}

TEST_CASE("dimension certificates carry honest interval bounds") {
  auto [inner, outer] = avoid_ball_sft(2, top_quarter(), 2);
  for (double tol : {1e-6, 1e-10, 1e-13}) {
    auto pd = perron(inner, tol);
    CHECK(std::abs(pd.dimension.value - kGoldenDim) <= pd.dimension.radius + tol);
    CHECK(pd.spectral_radius.radius <= tol * 1.01);
  }
}
