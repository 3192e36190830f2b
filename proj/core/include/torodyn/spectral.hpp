#pragma once

#include <vector>

#include "torodyn/interval.hpp"
#include "torodyn/matrix.hpp"
#include "torodyn/poly.hpp"

namespace torodyn::spectral {

enum class CircleSide { outside, inside, on_circle };

// One certified eigenvalue cluster: the disk |z - center| <= radius contains
// exactly `multiplicity` roots of the characteristic polynomial (one root of
// its squarefree factor, with that factor's Yun exponent). Centers are exact
// rationals; conjugate pairs are exactly mirrored and real roots have
// imaginary part exactly zero, so ordering is deterministic. `side` is
// decided exactly: on_circle means |lambda| = 1 precisely.
struct EigenvalueDisk {
  Rational center_re;
  Rational center_im;
  Rational radius;
  int multiplicity = 1;
  CircleSide side = CircleSide::outside;

  double re() const { return to_double(center_re); }
  double im() const { return to_double(center_im); }
  // Certified bounds on |lambda|.
  double abs_lower() const;
  double abs_upper() const;
  bool on_circle() const { return side == CircleSide::on_circle; }
};

struct SpectralData {
  int dim = 0;
  IPoly characteristic;  // monic, exact
  std::vector<EigenvalueDisk> eigenvalues;  // sorted: |.| desc, arg asc, stable
};

// Certified isolation of all eigenvalues. `radius_budget` is the requested
// maximum disk radius. Throws PrecisionExhausted when isolation cannot
// certify within the internal precision cap (pathological clustering).
SpectralData spectral_data(const ToralMap& map, double radius_budget = 1e-13);

struct EntropyReport {
  ValErr h_top;                // sum of log|lambda| over expanding eigenvalues
  ValErr kappa;                // drop-one entropy fraction, in [0, 1)
  bool kappa_degenerate = false;  // fewer than two expanding eigenvalues
  int expanding_dim = 0;
  int contracting_dim = 0;
  int neutral_dim = 0;
  bool hyperbolic = false;
  bool ergodic = false;
};

// Entropy, the drop-one threshold kappa, and the hyperbolic/ergodic flags.
// Ergodicity is decided exactly by cyclotomic trial division. kappa is the
// maximum over ways to drop one expanding eigenvalue copy of the remaining
// expanding log-sum, divided by h_top; zero (flagged degenerate) when fewer
// than two expanding copies exist.
EntropyReport entropy_report(const ToralMap& map, const SpectralData& spec);

}  // namespace torodyn::spectral
