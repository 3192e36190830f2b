#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "torodyn/exact.hpp"
#include "torodyn/matrix.hpp"
#include "torodyn/symbolic.hpp"

namespace torodyn::orbits {

// Point of T^d in exact fixed-point form: each coordinate is an integer
// numerator over base^precision, kept in [0, base^precision). Integer-matrix
// maps act exactly on this lattice; what expires as the map expands is not
// exactness but the point's fidelity as a proxy for an infinite expansion,
// and the iteration budget below accounts for that.
struct TorusPoint {
  int dim = 1;
  int base = 2;
  long long precision = 0;  // digits in `base`
  std::vector<BigInt> coords;

  static TorusPoint from_digits(int base, const std::vector<int>& digits);
  // Exact embedding: every denominator must divide base^precision.
  static TorusPoint from_rationals(const std::vector<Rational>& xs, int base,
                                   long long precision);
  BigInt denominator() const;
  Rational coord_value(int i) const;
};

// Bit-reversal point: n reversed in `bits` bits, as a dyadic TorusPoint.
TorusPoint van_der_corput(std::uint64_t n, int bits);

struct OrbitTrace {
  ToralMap map;
  TorusPoint start;
  bool has_map = false;
  bool two_sided = false;
  long long requested = 0;
  int depth = 1;  // dyadic cells: 2^(depth * dim) of them
  std::vector<std::uint64_t> visits;
  std::vector<long long> first_visit;  // merged-order index, -1 if unvisited
  long long recorded = 0;
  std::optional<long long> precision_exhausted_at;
  std::vector<TorusPoint> stored_points;  // only for synthetic streams

  static OrbitTrace from_point_stream(const std::vector<TorusPoint>& points, int depth);
};

// Forward orbit x, Mx, M^2 x, ... recorded on the depth-m dyadic grid. Stops
// early (in-band, never silently) once the accumulated expansion eats the
// proxy fidelity: max row sum r > 1 gives floor((bits - m - 64) / log2 r)
// steps; a matching-base digit shift keeps p - ceil((m+64)/log2 b); r = 1
// never expires.
OrbitTrace iterate(const ToralMap& map, const TorusPoint& start, long long steps,
                   int depth);

// Two-sided orbit of an automorphism, merged in the order
// x, Tx, T^-1 x, T^2 x, T^-2 x, ...; stops at the first merged index whose
// direction ran out of budget.
OrbitTrace iterate_two_sided(const ToralMap& map, const TorusPoint& start,
                             long long steps, int depth);

struct DensityVerdict {
  double epsilon = 0;
  int grid_depth = 0;  // coarsest m with 2^-m <= epsilon
  bool achieved = false;
  std::optional<long long> first_cover_step;  // points needed to touch all cells
  std::uint64_t empty_cells = 0;
  double discrepancy = 1.0;  // max over depths 1..m, cells, of |freq - uniform|
};

DensityVerdict epsilon_dense(const OrbitTrace& trace, double epsilon);

// True when no recorded orbit point lies in the open ball (exact rational
// comparisons; the orbit is re-walked or read from the stored stream).
bool avoid_check(const OrbitTrace& trace, const symbolic::BallSpec& ball);

}  // namespace torodyn::orbits
