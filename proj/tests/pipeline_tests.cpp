#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "torodyn/errors.hpp"
#include "torodyn/pipeline.hpp"

using namespace torodyn;
using pipeline::FlagshipConfig;

namespace {
FlagshipConfig tiny() {
  FlagshipConfig cfg;
  cfg.samples = 4;
  cfg.digit_length = 3000;
  cfg.iterate_steps = 20000;
  cfg.seed = 9;
  return cfg;
}
}  // namespace

TEST_CASE("derived sample seeds are distinct and stable") {
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(pipeline::sample_seed(1, i));
  CHECK(seen.size() == 1000);
  CHECK(pipeline::sample_seed(1, 0) == pipeline::sample_seed(1, 0));
  CHECK(pipeline::sample_seed(1, 0) != pipeline::sample_seed(2, 0));
}

TEST_CASE("the default ball is the top dyadic arc") {
  FlagshipConfig cfg;
  auto ball = cfg.ball();
  CHECK(ball.center == Rational(7, 8));
  CHECK(ball.radius == Rational(1, 8));
  cfg.ball_exponent = 3;
  auto finer = cfg.ball();
  CHECK(finer.center == Rational(15, 16));
  CHECK(finer.radius == Rational(1, 16));
}

TEST_CASE("ball overrides must come in pairs") {
  FlagshipConfig cfg;
  cfg.center = Rational(1, 3);
  CHECK_THROWS_AS(cfg.ball(), PreconditionError);
  cfg.radius = Rational(1, 9);
  auto ball = cfg.ball();
  CHECK(ball.center == Rational(1, 3));
}

TEST_CASE("a small experiment runs end to end") {
  auto rep = pipeline::run_flagship(tiny());
  CHECK(rep.per_sample.size() == 4);
  CHECK(rep.avoid_passes == 4);  // avoidance holds by construction
  CHECK(std::abs(rep.dimension_inner.value -
                 std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::log(2.0)) < 1e-9);
  CHECK(rep.dimension_outer.value == rep.dimension_inner.value);
  // the bound chain lands exactly on the certified dimension
  CHECK(rep.chain.combined == doctest::Approx(rep.dimension_inner.value).epsilon(1e-12));
  for (const auto& s : rep.per_sample) {
    CHECK(s.recorded_avoid == 3000);
    CHECK(s.recorded_density > 1000);
    CHECK(s.discrepancy < 1.0);
  }
}

TEST_CASE("runs are deterministic in the seed and the thread count") {
  auto a = pipeline::run_flagship(tiny());
  auto b = pipeline::run_flagship(tiny());
  auto cfg = tiny();
  cfg.threads = 3;
  auto c = pipeline::run_flagship(cfg);
  REQUIRE(a.per_sample.size() == b.per_sample.size());
  for (size_t i = 0; i < a.per_sample.size(); ++i) {
    CHECK(a.per_sample[i].density_pass == b.per_sample[i].density_pass);
    CHECK(a.per_sample[i].discrepancy == b.per_sample[i].discrepancy);
    CHECK(a.per_sample[i].discrepancy == c.per_sample[i].discrepancy);
    CHECK(a.per_sample[i].first_cover_step == c.per_sample[i].first_cover_step);
  }
  CHECK(a.density_passes == c.density_passes);
  CHECK(a.mean_discrepancy == c.mean_discrepancy);

  auto cfg2 = tiny();
  cfg2.seed = 10;
  auto d = pipeline::run_flagship(cfg2);
  bool any_differs = false;
  for (size_t i = 0; i < a.per_sample.size(); ++i)
    any_differs |= (a.per_sample[i].discrepancy != d.per_sample[i].discrepancy);
  CHECK(any_differs);
}

TEST_CASE("zero samples still certify the subshifts") {
  auto cfg = tiny();
  cfg.samples = 0;
  auto rep = pipeline::run_flagship(cfg);
  CHECK(rep.per_sample.empty());
  CHECK(rep.avoid_passes == 0);
  CHECK(rep.dimension_inner.value > 0.69);
}

TEST_CASE("bad configurations are rejected up front") {
  auto cfg = tiny();
  cfg.samples = -1;
  CHECK_THROWS_AS(pipeline::run_flagship(cfg), PreconditionError);
  cfg = tiny();
  cfg.digit_length = 1;
  CHECK_THROWS_AS(pipeline::run_flagship(cfg), PreconditionError);
  cfg = tiny();
  cfg.threads = 0;
  CHECK_THROWS_AS(pipeline::run_flagship(cfg), PreconditionError);
  cfg = tiny();
  cfg.ball_exponent = 31;
  CHECK_THROWS_AS(pipeline::run_flagship(cfg), PreconditionError);
}
