#include "torodyn/orbits.hpp"

#include <algorithm>
#include <cmath>

#include "torodyn/errors.hpp"

namespace torodyn::orbits {

namespace {

constexpr int kMaxGridBits = 26;  // cap on depth * dim

void check_grid(int depth, int dim) {
  if (depth < 1) throw PreconditionError("grid depth must be at least 1");
  if (depth * dim > kMaxGridBits) throw PreconditionError("grid too fine for this dimension");
}

double log2_bigint(const BigInt& v) {
  // Exact enough for budget arithmetic: mantissa from the top bits.
  return static_cast<double>(msb(v)) +
         std::log2(to_double(Rational(v, BigInt(1) << msb(v))));
}

// Number of recordable points (including the start) before the expansion
// outruns the stored digits.
long long fidelity_budget(const ToralMap& map, const TorusPoint& start, int depth) {
  const double bits_total = static_cast<double>(start.precision) *
                            std::log2(static_cast<double>(start.base));
  const double lb = std::log2(static_cast<double>(start.base));
  BigInt row = max_abs_row_sum(map.entries);
  if (row <= 1) return -1;  // no expansion: never expires
  if (map.dim == 1 && iabs(map.entries.at(0, 0)) == start.base) {
    // Pure digit shift: step n reads digits n+1 .. n+overhead, nothing else.
    // On a binary grid with binary digits the cell is those digits verbatim,
    // so no guard is needed; other bases keep slack for boundary rounding.
    long long overhead = (start.base == 2)
                             ? depth
                             : static_cast<long long>(std::ceil((depth + 64) / lb));
    long long n_max = start.precision - overhead;
    return n_max < 0 ? 0 : n_max + 1;
  }
  double budget = (bits_total - depth - 64) / log2_bigint(row);
  if (budget < 0) return 0;
  return static_cast<long long>(budget) + 1;
}

std::uint64_t cell_index(const std::vector<BigInt>& coords, int depth, const BigInt& den) {
  // Power-of-two denominators take the top bits directly.
  const bool pow2 = (den & (den - 1)) == 0;
  const long long bits = pow2 ? static_cast<long long>(msb(den)) : 0;
  std::uint64_t idx = 0;
  for (const BigInt& x : coords) {
    BigInt c = pow2 ? (bits > depth ? BigInt(x >> (bits - depth)) : BigInt(x << (depth - bits)))
                    : BigInt((x << depth) / den);
    idx = (idx << depth) | static_cast<std::uint64_t>(c);
  }
  return idx;
}

struct Stepper {
  const ToralMap& map;
  BigInt den;
  BigInt mask;  // den - 1 when den is a power of two (cheap reduction)
  bool pow2;
  bool scalar;
  BigInt k;

  Stepper(const ToralMap& m, const TorusPoint& p)
      : map(m),
        den(p.denominator()),
        mask(den - 1),
        pow2((den & mask) == 0),
        scalar(m.dim == 1),
        k(scalar ? m.entries.at(0, 0) : 0) {}

  void reduce(BigInt& x) const {
    if (pow2 && x >= 0) {
      x &= mask;
      return;
    }
    x %= den;
    if (x < 0) x += den;
  }

  void step(std::vector<BigInt>& c) const {
    if (scalar) {
      c[0] *= k;
      reduce(c[0]);
      return;
    }
    std::vector<BigInt> out(c.size());
    for (int i = 0; i < map.dim; ++i) {
      BigInt acc = 0;
      for (int j = 0; j < map.dim; ++j)
        acc += map.entries.at(i, j) * c[static_cast<size_t>(j)];
      reduce(acc);
      out[static_cast<size_t>(i)] = std::move(acc);
    }
    c = std::move(out);
  }
};

void record(OrbitTrace& t, const std::vector<BigInt>& coords, const BigInt& den,
            long long order) {
  std::uint64_t idx = cell_index(coords, t.depth, den);
  ++t.visits[idx];
  if (t.first_visit[idx] < 0) t.first_visit[idx] = order;
  ++t.recorded;
}

}  // namespace

TorusPoint TorusPoint::from_digits(int base, const std::vector<int>& digits) {
  if (base < 2) throw PreconditionError("base must be at least 2");
  TorusPoint p;
  p.dim = 1;
  p.base = base;
  p.precision = static_cast<long long>(digits.size());
  BigInt num = 0;
  for (int d : digits) {
    if (d < 0 || d >= base) throw PreconditionError("digit out of range");
    num = num * base + d;
  }
  p.coords.push_back(std::move(num));
  return p;
}

TorusPoint TorusPoint::from_rationals(const std::vector<Rational>& xs, int base,
                                      long long precision) {
  if (base < 2 || precision < 1) throw PreconditionError("bad fixed-point parameters");
  TorusPoint p;
  p.dim = static_cast<int>(xs.size());
  p.base = base;
  p.precision = precision;
  BigInt scale = ipow(BigInt(base), static_cast<unsigned>(precision));
  for (const Rational& x : xs) {
    Rational scaled = mod1(x) * scale;
    if (den(scaled) != 1)
      throw PreconditionError("coordinate not representable at this precision");
    p.coords.push_back(num(scaled));
  }
  return p;
}

BigInt TorusPoint::denominator() const {
  return ipow(BigInt(base), static_cast<unsigned>(precision));
}

Rational TorusPoint::coord_value(int i) const {
  return Rational(coords[static_cast<size_t>(i)], denominator());
}

TorusPoint van_der_corput(std::uint64_t n, int bits) {
  if (bits < 1 || bits > 63) throw PreconditionError("bit count out of range");
  std::uint64_t rev = 0;
  for (int i = 0; i < bits; ++i)
    if (n & (1ull << i)) rev |= 1ull << (bits - 1 - i);
  TorusPoint p;
  p.dim = 1;
  p.base = 2;
  p.precision = bits;
  p.coords.push_back(BigInt(rev));
  return p;
}

OrbitTrace OrbitTrace::from_point_stream(const std::vector<TorusPoint>& points, int depth) {
  if (points.empty()) throw PreconditionError("empty point stream");
  const int dim = points.front().dim;
  check_grid(depth, dim);
  OrbitTrace t;
  t.has_map = false;
  t.start = points.front();
  t.requested = static_cast<long long>(points.size());
  t.depth = depth;
  t.visits.assign(1ull << (depth * dim), 0);
  t.first_visit.assign(t.visits.size(), -1);
  for (size_t i = 0; i < points.size(); ++i) {
    const TorusPoint& p = points[i];
    if (p.dim != dim) throw DimensionMismatch("mixed dimensions in point stream");
    record(t, p.coords, p.denominator(), static_cast<long long>(i));
  }
  t.stored_points = points;
  return t;
}

OrbitTrace iterate(const ToralMap& map, const TorusPoint& start, long long steps,
                   int depth) {
  if (map.dim != start.dim) throw DimensionMismatch("map and point dimensions differ");
  if (steps < 0) throw PreconditionError("step count must be nonnegative");
  check_grid(depth, map.dim);

  OrbitTrace t;
  t.map = map;
  t.start = start;
  t.has_map = true;
  t.requested = steps;
  t.depth = depth;
  t.visits.assign(1ull << (depth * map.dim), 0);
  t.first_visit.assign(t.visits.size(), -1);

  long long budget = fidelity_budget(map, start, depth);
  long long n_points = steps;
  if (budget >= 0 && budget < steps) {
    n_points = budget;
    t.precision_exhausted_at = budget;
  }

  Stepper st(map, start);
  std::vector<BigInt> c = start.coords;
  for (long long n = 0; n < n_points; ++n) {
    record(t, c, st.den, n);
    if (n + 1 < n_points) st.step(c);
  }
  return t;
}

OrbitTrace iterate_two_sided(const ToralMap& map, const TorusPoint& start,
                             long long steps, int depth) {
  if (!map.invertible())
    throw PreconditionError("two-sided orbits require an automorphism");
  if (map.dim != start.dim) throw DimensionMismatch("map and point dimensions differ");
  if (steps < 0) throw PreconditionError("step count must be nonnegative");
  check_grid(depth, map.dim);

  ToralMap inverse = ToralMap::from_matrix(unimodular_inverse(map.entries));

  OrbitTrace t;
  t.map = map;
  t.start = start;
  t.has_map = true;
  t.two_sided = true;
  t.requested = steps;
  t.depth = depth;
  t.visits.assign(1ull << (depth * map.dim), 0);
  t.first_visit.assign(t.visits.size(), -1);

  const long long fw_budget = fidelity_budget(map, start, depth);
  const long long bw_budget = fidelity_budget(inverse, start, depth);

  Stepper fw(map, start), bw(inverse, start);
  std::vector<BigInt> cf = start.coords, cb = start.coords;

  long long fw_done = 0, bw_done = 0;  // steps taken in each direction
  for (long long n = 0; n < steps; ++n) {
    // Merged order: index 0 is the start, odd indices go forward, even > 0
    // go backward.
    if (n == 0) {
      record(t, cf, fw.den, n);
      continue;
    }
    if (n % 2 == 1) {
      if (fw_budget >= 0 && fw_done + 1 >= fw_budget) {
        t.precision_exhausted_at = n;
        break;
      }
      fw.step(cf);
      ++fw_done;
      record(t, cf, fw.den, n);
    } else {
      if (bw_budget >= 0 && bw_done + 1 >= bw_budget) {
        t.precision_exhausted_at = n;
        break;
      }
      bw.step(cb);
      ++bw_done;
      record(t, cb, fw.den, n);
    }
  }
  return t;
}

namespace {

// Collapse a depth-m visit table to depth mm (per-coordinate index shift).
std::vector<std::uint64_t> aggregate(const std::vector<std::uint64_t>& visits, int dim,
                                     int m_from, int m_to) {
  std::vector<std::uint64_t> out(1ull << (m_to * dim), 0);
  const int drop = m_from - m_to;
  const std::uint64_t mask_from = (1ull << m_from) - 1;
  for (std::uint64_t idx = 0; idx < visits.size(); ++idx) {
    if (!visits[idx]) continue;
    std::uint64_t coarse = 0;
    for (int i = dim - 1; i >= 0; --i) {
      std::uint64_t ci = (idx >> (m_from * (dim - 1 - i))) & mask_from;
      coarse |= (ci >> drop) << (m_to * (dim - 1 - i));
    }
    out[coarse] += visits[idx];
  }
  return out;
}

std::vector<long long> aggregate_first(const std::vector<long long>& first, int dim,
                                       int m_from, int m_to) {
  std::vector<long long> out(1ull << (m_to * dim), -1);
  const int drop = m_from - m_to;
  const std::uint64_t mask_from = (1ull << m_from) - 1;
  for (std::uint64_t idx = 0; idx < first.size(); ++idx) {
    if (first[idx] < 0) continue;
    std::uint64_t coarse = 0;
    for (int i = dim - 1; i >= 0; --i) {
      std::uint64_t ci = (idx >> (m_from * (dim - 1 - i))) & mask_from;
      coarse |= (ci >> drop) << (m_to * (dim - 1 - i));
    }
    if (out[coarse] < 0 || first[idx] < out[coarse]) out[coarse] = first[idx];
  }
  return out;
}

}  // namespace

DensityVerdict epsilon_dense(const OrbitTrace& trace, double epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw PreconditionError("epsilon must lie in (0,1)");
  const int dim = static_cast<int>(trace.start.dim);
  int m = 1;
  while (std::ldexp(1.0, -m) > epsilon && m < 64) ++m;
  if (m > trace.depth)
    throw DepthTooCoarse("trace recorded at depth " + std::to_string(trace.depth) +
                         " but epsilon needs depth " + std::to_string(m));

  DensityVerdict v;
  v.epsilon = epsilon;
  v.grid_depth = m;

  auto at_m = aggregate(trace.visits, dim, trace.depth, m);
  auto first_m = aggregate_first(trace.first_visit, dim, trace.depth, m);
  v.empty_cells = 0;
  long long worst_first = -1;
  for (size_t i = 0; i < at_m.size(); ++i) {
    if (at_m[i] == 0)
      ++v.empty_cells;
    else
      worst_first = std::max(worst_first, first_m[i]);
  }
  v.achieved = (v.empty_cells == 0);
  if (v.achieved) v.first_cover_step = worst_first + 1;

  if (trace.recorded == 0) {
    v.discrepancy = 1.0;
    return v;
  }
  double disc = 0.0;
  const double n = static_cast<double>(trace.recorded);
  for (int mm = m; mm >= 1; --mm) {
    auto vis = (mm == m) ? at_m : aggregate(at_m, dim, m, mm);
    const double uniform = std::ldexp(1.0, -mm * dim);
    for (std::uint64_t c : vis)
      disc = std::max(disc, std::abs(static_cast<double>(c) / n - uniform));
  }
  v.discrepancy = disc;
  return v;
}

bool avoid_check(const OrbitTrace& trace, const symbolic::BallSpec& ball) {
  if (trace.start.dim != 1)
    throw PreconditionError("avoid-ball checks are defined on the circle");

  const BigInt scale = trace.start.denominator();
  const Rational lo = ball.center - ball.radius;
  const Rational hi = ball.center + ball.radius;

  // Numerator ranges whose points lie in the open ball (up to two after
  // wrapping): lo + k < c/scale < hi + k.
  std::vector<std::pair<BigInt, BigInt>> ranges;
  for (int k = -1; k <= 1; ++k) {
    Rational a = (lo + k) * scale;
    Rational b = (hi + k) * scale;
    BigInt cmin = floor_rat(a) + 1;
    BigInt cmax = (den(b) == 1) ? num(b) - 1 : floor_rat(b);
    if (cmin < 0) cmin = 0;
    if (cmax > scale - 1) cmax = scale - 1;
    if (cmin <= cmax) ranges.emplace_back(cmin, cmax);
  }
  auto inside = [&](const BigInt& c) {
    for (const auto& [a, b] : ranges)
      if (c >= a && c <= b) return true;
    return false;
  };

  if (!trace.stored_points.empty()) {
    for (const auto& p : trace.stored_points)
      if (inside(p.coords[0])) return false;
    return true;
  }
  if (!trace.has_map) throw PreconditionError("trace has neither a map nor stored points");

  if (trace.two_sided)
    throw PreconditionError("avoid checks re-walk forward traces only");

  Stepper st(trace.map, trace.start);
  std::vector<BigInt> c = trace.start.coords;
  for (long long n = 0; n < trace.recorded; ++n) {
    if (inside(c[0])) return false;
    if (n + 1 < trace.recorded) st.step(c);
  }
  return true;
}

}  // namespace torodyn::orbits
