#include "torodyn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torodyn/errors.hpp"

namespace torodyn::bounds {

namespace {

Rational abs_sq(const spectral::EigenvalueDisk& d) {
  return d.center_re * d.center_re + d.center_im * d.center_im;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

LyapunovSpectrum LyapunovSpectrum::from_spectral(const spectral::SpectralData& spec,
                                                 bool inverse_direction) {
  // Group disks of exactly equal modulus (conjugate pairs share |center|^2
  // and radius by construction) into one exponent band.
  struct Band {
    Rational key;
    ValErr kappa;
    int mult;
  };
  std::vector<Band> bands;
  for (const auto& d : spec.eigenvalues) {
    bool take = inverse_direction ? (d.side == spectral::CircleSide::inside)
                                  : (d.side == spectral::CircleSide::outside);
    if (!take) continue;
    if (inverse_direction && abs_sq(d) == 0)
      throw PreconditionError("zero eigenvalue has no inverse direction");
    double lo = d.abs_lower(), hi = d.abs_upper();
    ValErr kappa = inverse_direction ? log_interval(1.0 / hi, 1.0 / lo)
                                     : log_interval(lo, hi);
    Rational key = abs_sq(d);
    bool merged = false;
    for (auto& b : bands)
      if (b.key == key) {
        b.mult += d.multiplicity;
        merged = true;
        break;
      }
    if (!merged) bands.push_back({key, kappa, d.multiplicity});
  }
  std::sort(bands.begin(), bands.end(), [&](const Band& x, const Band& y) {
    return inverse_direction ? x.key < y.key : x.key > y.key;
  });
  // Defensive merge of bands indistinguishable at double resolution, keeping
  // the exponent list strictly decreasing.
  LyapunovSpectrum s;
  for (const auto& b : bands) {
    if (!s.exponents.empty() && s.exponents.back().first.value <= b.kappa.value) {
      s.exponents.back().second += b.mult;
    } else {
      s.exponents.emplace_back(b.kappa, b.mult);
    }
    s.total_unstable_dim += b.mult;
  }
  return s;
}

LyapunovSpectrum LyapunovSpectrum::from_values(
    const std::vector<std::pair<double, int>>& vals) {
  LyapunovSpectrum s;
  for (const auto& [k, m] : vals) {
    if (k <= 0) throw PreconditionError("exponents must be positive");
    if (m <= 0) throw PreconditionError("multiplicities must be positive");
    s.exponents.emplace_back(ValErr::exact(k), m);
    s.total_unstable_dim += m;
  }
  std::sort(s.exponents.begin(), s.exponents.end(),
            [](const auto& a, const auto& b) { return a.first.value > b.first.value; });
  for (size_t i = 1; i < s.exponents.size(); ++i)
    if (s.exponents[i].first.value == s.exponents[i - 1].first.value)
      throw PreconditionError("exponents must be distinct");
  return s;
}

double LyapunovSpectrum::max_entropy() const {
  double h = 0;
  for (const auto& [k, m] : exponents) h += k.value * static_cast<double>(m);
  return h;
}

LYAllocation ly_min_unstable_dim(const LyapunovSpectrum& spectrum, double entropy) {
  double total = spectrum.max_entropy();
  double slack = 1e-9;
  for (const auto& [k, m] : spectrum.exponents)
    slack += k.radius * static_cast<double>(m);
  if (entropy < -slack || entropy > total + slack)
    throw EntropyOutOfRange("entropy " + fmt(entropy) + " outside [0, " + fmt(total) + "]");

  LYAllocation a;
  a.gammas.assign(spectrum.exponents.size(), 0.0);

  // Full allocation is the only feasible point at maximal entropy; taking it
  // exactly keeps the integer answer free of division noise.
  if (std::abs(entropy - total) <= slack) {
    for (size_t i = 0; i < spectrum.exponents.size(); ++i) {
      a.gammas[i] = static_cast<double>(spectrum.exponents[i].second);
      a.delta_u += a.gammas[i];
      a.achieved_entropy += spectrum.exponents[i].first.value * a.gammas[i];
    }
    return a;
  }

  double remaining = std::max(entropy, 0.0);
  for (size_t i = 0; i < spectrum.exponents.size() && remaining > 0; ++i) {
    const double kappa = spectrum.exponents[i].first.value;
    const double cap = static_cast<double>(spectrum.exponents[i].second);
    double g = std::min(cap, remaining / kappa);
    a.gammas[i] = g;
    remaining -= g * kappa;
  }
  for (size_t i = 0; i < a.gammas.size(); ++i) {
    a.delta_u += a.gammas[i];
    a.achieved_entropy += spectrum.exponents[i].first.value * a.gammas[i];
  }
  return a;
}

double prop24_bound(double h_top, int d, double dim_F, double log_lambda1) {
  if (dim_F < 0 || dim_F > static_cast<double>(d))
    throw InvalidGeometry("set dimension must lie in [0, ambient dimension]");
  if (dim_F == static_cast<double>(d)) return std::max(0.0, h_top);
  return std::max(0.0, h_top - (static_cast<double>(d) - dim_F) * log_lambda1);
}

double marstrand_combine(double dim_base, double dim_fiber_inf) {
  if (dim_base < 0 || dim_fiber_inf < 0)
    throw PreconditionError("dimensions must be nonnegative");
  return dim_base + dim_fiber_inf;
}

BoundReport predicted_dim_bound(const spectral::SpectralData& spec,
                                const spectral::EntropyReport& report,
                                const QGeometry& geometry) {
  if (!report.hyperbolic)
    throw NeutralSpectrum("dimension chain requires a hyperbolic map");
  if (geometry.ambient_dim != spec.dim)
    throw DimensionMismatch("geometry dimension does not match the spectrum");

  BoundReport r;
  r.geometry = geometry;
  r.neutral_dim = 0;

  const bool invertible = !spec.characteristic.empty() &&
                          iabs(spec.characteristic[0]) == 1;

  LyapunovSpectrum unstable = LyapunovSpectrum::from_spectral(spec, false);
  if (unstable.exponents.empty())
    throw NeutralSpectrum("no expanding direction: entropy chain is vacuous");

  const double h = report.h_top.value;
  const double log_l1_u = unstable.exponents.front().first.value;
  r.entropy_bound_unstable =
      prop24_bound(h, geometry.ambient_dim, geometry.dim_avoid, log_l1_u);
  r.provenance.push_back("entropy retention: h(F) >= h - (d - dim F) log|lambda_1| = " +
                         fmt(r.entropy_bound_unstable));

  LYAllocation au = ly_min_unstable_dim(unstable, r.entropy_bound_unstable);
  r.delta_u_bound = au.delta_u;
  r.provenance.push_back(
      "unstable allocation: min sum gamma_i s.t. sum kappa_i gamma_i = h(F), "
      "0 <= gamma_i <= dim E_i; delta_u = " +
      fmt(au.delta_u));

  double stable_part = 0;
  if (invertible) {
    LyapunovSpectrum stable = LyapunovSpectrum::from_spectral(spec, true);
    const double log_l1_s = stable.exponents.front().first.value;
    double hs = prop24_bound(h, geometry.ambient_dim, geometry.dim_avoid, log_l1_s);
    r.entropy_bound_stable = hs;
    LYAllocation as = ly_min_unstable_dim(stable, hs);
    r.delta_s_bound = as.delta_u;
    stable_part = as.delta_u;
    r.provenance.push_back(
        "stable allocation via the inverse map: delta_s = " + fmt(as.delta_u));
  } else {
    r.provenance.push_back("stable side omitted: map is not invertible");
  }

  r.combined = marstrand_combine(r.delta_u_bound, stable_part) + r.neutral_dim;
  r.provenance.push_back(
      "slicing: dim >= delta_u + delta_s + neutral = " + fmt(r.combined));
  return r;
}

double product_box_slope(const symbolic::SftSpec& spec, int depth) {
  if (depth < 1) throw PreconditionError("depth must be positive");
  BigInt n = symbolic::count_admissible_words(spec, depth);
  if (n <= 0) throw EmptyShift("no admissible words at this depth");
  // log2(N^2) / depth, with N exact.
  double log2n = static_cast<double>(msb(n)) +
                 std::log2(to_double(Rational(n, BigInt(1) << msb(n))));
  return 2.0 * log2n / static_cast<double>(depth);
}

}  // namespace torodyn::bounds
