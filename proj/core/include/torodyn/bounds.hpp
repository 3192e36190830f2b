#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torodyn/interval.hpp"
#include "torodyn/spectral.hpp"
#include "torodyn/symbolic.hpp"

namespace torodyn::bounds {

// Positive Lyapunov exponents with multiplicities, strictly decreasing.
struct LyapunovSpectrum {
  std::vector<std::pair<ValErr, int>> exponents;  // (kappa > 0, dim E_i)
  int total_unstable_dim = 0;

  // Expanding side of the spectrum; with inverse_direction the contracting
  // side read as exponents of the inverse map (requires an invertible
  // spectrum, i.e. no zero eigenvalue).
  static LyapunovSpectrum from_spectral(const spectral::SpectralData& spec,
                                        bool inverse_direction);
  static LyapunovSpectrum from_values(const std::vector<std::pair<double, int>>& vals);

  double max_entropy() const;  // sum kappa_i * dim E_i
};

struct LYAllocation {
  std::vector<double> gammas;  // per exponent, 0 <= gamma_i <= dim E_i
  double delta_u = 0;
  double achieved_entropy = 0;
};

// Minimal total allocation Sum gamma_i subject to Sum kappa_i gamma_i =
// entropy: fill the largest exponents first. Sharp lower bound on the
// unstable dimension of any invariant measure with that entropy.
LYAllocation ly_min_unstable_dim(const LyapunovSpectrum& spectrum, double entropy);

// max(0, h_top - (d - dim_F) * log_lambda1): entropy retained by a closed
// invariant set of the given dimension.
double prop24_bound(double h_top, int d, double dim_F, double log_lambda1);

// Slicing lower bound: dimensions add.
double marstrand_combine(double dim_base, double dim_fiber_inf);

struct QGeometry {
  int ambient_dim = 1;
  double dim_avoid = 0;  // assumed dimension of the avoid set
};

struct BoundReport {
  QGeometry geometry;
  double entropy_bound_unstable = 0;
  std::optional<double> entropy_bound_stable;
  double delta_u_bound = 0;
  std::optional<double> delta_s_bound;  // absent for noninvertible maps
  double neutral_dim = 0;
  double combined = 0;
  std::vector<std::string> provenance;
};

// Full chain: entropy retention, then minimal unstable allocation for the
// map (and for its inverse when invertible), then the slicing sum. At
// dim_avoid = d the result is exactly dim W^u + dim W^s.
BoundReport predicted_dim_bound(const spectral::SpectralData& spec,
                                const spectral::EntropyReport& report,
                                const QGeometry& geometry);

// log2(N_m^2) / m for the m-digit box count N_m of the subshift's underlying
// circle set, i.e. the box-dimension slope of the product set at that depth.
double product_box_slope(const symbolic::SftSpec& spec, int depth);

}  // namespace torodyn::bounds
