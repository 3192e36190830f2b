#include "torodyn/pipeline.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "torodyn/errors.hpp"
#include "torodyn/spectral.hpp"

namespace torodyn::pipeline {

symbolic::BallSpec FlagshipConfig::ball() const {
  if (center.has_value() != radius.has_value())
    throw PreconditionError("ball override needs both center and radius");
  if (center) return symbolic::BallSpec::make(*center, *radius);
  if (ball_exponent < 1 || ball_exponent > 30)
    throw PreconditionError("ball exponent out of range");
  const Rational r = Rational(1, BigInt(1) << (ball_exponent + 1));
  return symbolic::BallSpec::make(Rational(1) - r, r);
}

std::uint64_t sample_seed(std::uint64_t seed, int index) {
  return seed ^ (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1));
}

namespace {

SampleOutcome run_sample(const FlagshipConfig& cfg, const symbolic::SftSpec& inner,
                         const symbolic::PerronData& pd, const symbolic::BallSpec& ball,
                         int index) {
  const auto digits =
      symbolic::parry_sample(inner, pd, cfg.digit_length, sample_seed(cfg.seed, index));
  const auto start = orbits::TorusPoint::from_digits(inner.base, digits);

  SampleOutcome out;
  const auto dense_trace =
      orbits::iterate(ToralMap::times(3), start, cfg.iterate_steps, cfg.density_depth);
  out.recorded_density = dense_trace.recorded;
  const auto verdict = orbits::epsilon_dense(dense_trace, cfg.epsilon);
  out.density_pass = verdict.achieved;
  out.first_cover_step = verdict.first_cover_step;
  out.discrepancy = verdict.discrepancy;

  const auto avoid_trace = orbits::iterate(ToralMap::times(2), start, cfg.iterate_steps, 1);
  out.recorded_avoid = avoid_trace.recorded;
  out.avoid_pass = orbits::avoid_check(avoid_trace, ball);
  return out;
}

}  // namespace

FlagshipReport run_flagship(const FlagshipConfig& cfg) {
  if (cfg.samples < 0) throw PreconditionError("sample count must be nonnegative");
  if (cfg.digit_length < cfg.window) throw PreconditionError("digit length below the window");
  if (cfg.threads < 1) throw PreconditionError("thread count must be positive");

  const auto ball = cfg.ball();
  FlagshipReport rep;
  std::tie(rep.inner, rep.outer) = symbolic::avoid_ball_sft(2, ball, cfg.window);
  const auto pd = symbolic::perron(rep.inner, cfg.tolerance);
  const auto pd_outer = symbolic::perron(rep.outer, cfg.tolerance);
  rep.dimension_inner = pd.dimension;
  rep.dimension_outer = pd_outer.dimension;
  rep.parry_entropy = pd.entropy.value;

  rep.per_sample.resize(static_cast<size_t>(cfg.samples));
  const int workers = std::max(1, std::min(cfg.threads, cfg.samples));
  if (workers <= 1) {
    for (int i = 0; i < cfg.samples; ++i)
      rep.per_sample[static_cast<size_t>(i)] = run_sample(cfg, rep.inner, pd, ball, i);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_lock;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i = w; i < cfg.samples; i += workers)
            rep.per_sample[static_cast<size_t>(i)] = run_sample(cfg, rep.inner, pd, ball, i);
        } catch (...) {
          std::lock_guard<std::mutex> guard(error_lock);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  double disc_sum = 0.0;
  for (const SampleOutcome& s : rep.per_sample) {
    rep.avoid_passes += s.avoid_pass ? 1 : 0;
    rep.density_passes += s.density_pass ? 1 : 0;
    disc_sum += s.discrepancy;
  }
  rep.mean_discrepancy = cfg.samples > 0 ? disc_sum / cfg.samples : 0.0;

  // Bound chain for the avoided map, with the certified inner dimension as
  // the assumed avoid-set dimension.
  const auto two = ToralMap::times(2);
  const auto spec2 = spectral::spectral_data(two);
  const auto ent2 = spectral::entropy_report(two, spec2);
  rep.chain = bounds::predicted_dim_bound(spec2, ent2,
                                          bounds::QGeometry{1, rep.dimension_inner.value});
  return rep;
}

}  // namespace torodyn::pipeline
