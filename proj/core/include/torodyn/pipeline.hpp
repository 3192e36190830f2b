#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "torodyn/bounds.hpp"
#include "torodyn/orbits.hpp"
#include "torodyn/symbolic.hpp"

namespace torodyn::pipeline {

// The x2/x3 experiment: sample points whose binary expansions avoid a ball
// around a target, then test finite-resolution density of their x3 orbits.
struct FlagshipConfig {
  // Ball defaults to the one-sided dyadic ball of diameter 2^-k at the top of
  // the circle: center 1 - 2^-(k+1), radius 2^-(k+1). k = 2 gives the
  // golden-mean shift. Explicit center/radius override it.
  int ball_exponent = 2;
  std::optional<Rational> center;
  std::optional<Rational> radius;
  int window = 2;

  int samples = 1000;
  long long digit_length = 40000;  // sampled binary digits = orbit precision
  long long iterate_steps = 1000000;
  int density_depth = 7;
  double epsilon = 0.02;
  std::uint64_t seed = 1;
  int threads = 1;
  double tolerance = 1e-12;

  symbolic::BallSpec ball() const;
};

struct SampleOutcome {
  bool avoid_pass = false;    // the x2 orbit stays out of the ball (exact)
  bool density_pass = false;  // the x3 orbit covers the epsilon grid
  std::optional<long long> first_cover_step;
  double discrepancy = 1.0;
  long long recorded_density = 0;  // x3 points inside the fidelity budget
  long long recorded_avoid = 0;    // x2 points checked exactly
};

struct FlagshipReport {
  symbolic::SftSpec inner;
  symbolic::SftSpec outer;
  ValErr dimension_inner;  // certified dim of the inner avoid-set approximant
  ValErr dimension_outer;
  double parry_entropy = 0.0;

  std::vector<SampleOutcome> per_sample;
  long long avoid_passes = 0;
  long long density_passes = 0;
  double mean_discrepancy = 0.0;  // over samples, 0 when there are none

  bounds::BoundReport chain;  // dimension bound chain for the avoided map x2
};

// Deterministic given (config, seed): per-sample seed streams make the result
// independent of the thread count.
FlagshipReport run_flagship(const FlagshipConfig& config);

// Seed for sample i; exposed so tests can replay single samples.
std::uint64_t sample_seed(std::uint64_t seed, int index);

}  // namespace torodyn::pipeline
