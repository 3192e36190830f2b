#include "torodyn/averaging.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "torodyn/errors.hpp"

namespace torodyn::averaging {

namespace {

constexpr std::uint64_t kMaxCells = 1ull << 22;

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void check_geometry(int dim, int base, int depth) {
  if (dim < 1 || dim > 2) throw IncompatibleGrid("grid dimension must be 1 or 2");
  if (base < 2) throw PreconditionError("grid base must be at least 2");
  if (depth < 0) throw PreconditionError("grid depth must be nonnegative");
  double cells = std::pow(static_cast<double>(base), depth * dim);
  if (cells > static_cast<double>(kMaxCells)) throw PreconditionError("grid too fine");
}

std::uint64_t umod(long long x, std::uint64_t side) {
  long long s = static_cast<long long>(side);
  long long r = x % s;
  return static_cast<std::uint64_t>(r < 0 ? r + s : r);
}

using RPoint = std::array<Rational, 2>;

// Keep the part of a convex polygon on one side of an axis-aligned line.
std::vector<RPoint> clip_half(const std::vector<RPoint>& poly, int axis, const Rational& bound,
                              bool keep_ge) {
  std::vector<RPoint> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const RPoint& a = poly[i];
    const RPoint& b = poly[(i + 1) % n];
    const bool in_a = keep_ge ? a[axis] >= bound : a[axis] <= bound;
    const bool in_b = keep_ge ? b[axis] >= bound : b[axis] <= bound;
    if (in_a) out.push_back(a);
    if (in_a != in_b) {
      Rational t = (bound - a[static_cast<size_t>(axis)]) /
                   (b[static_cast<size_t>(axis)] - a[static_cast<size_t>(axis)]);
      RPoint p;
      p[static_cast<size_t>(axis)] = bound;
      p[static_cast<size_t>(1 - axis)] =
          a[static_cast<size_t>(1 - axis)] +
          t * (b[static_cast<size_t>(1 - axis)] - a[static_cast<size_t>(1 - axis)]);
      out.push_back(p);
    }
  }
  return out;
}

Rational polygon_area(const std::vector<RPoint>& poly) {
  Rational s = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const RPoint& a = poly[i];
    const RPoint& b = poly[(i + 1) % poly.size()];
    s += a[0] * b[1] - b[0] * a[1];
  }
  if (s < 0) s = -s;
  return s / 2;
}

// Sparse double view of an operator, for repeated application.
std::vector<std::vector<std::pair<std::uint64_t, double>>> compiled(const TransferOperator& op) {
  std::vector<std::vector<std::pair<std::uint64_t, double>>> rows(op.entries.size());
  for (size_t s = 0; s < op.entries.size(); ++s) {
    rows[s].reserve(op.entries[s].size());
    for (const auto& [dst, frac] : op.entries[s])
      rows[s].emplace_back(dst, static_cast<double>(frac));
  }
  return rows;
}

std::vector<double> apply_compiled(
    const std::vector<std::vector<std::pair<std::uint64_t, double>>>& rows,
    const std::vector<double>& w) {
  std::vector<double> out(w.size(), 0.0);
  for (size_t s = 0; s < rows.size(); ++s) {
    if (w[s] == 0.0) continue;
    for (const auto& [dst, f] : rows[s]) out[dst] += w[s] * f;
  }
  return out;
}

GridMeasure cesaro_impl(const GridMeasure& initial, const TransferOperator& op,
                        std::uint64_t n_terms) {
  initial.validate();
  if (n_terms == 0) throw PreconditionError("Cesaro average needs at least one term");
  const auto rows = compiled(op);
  std::vector<double> acc = initial.weights;
  std::vector<double> cur = initial.weights;
  for (std::uint64_t n = 1; n < n_terms; ++n) {
    cur = apply_compiled(rows, cur);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += cur[i];
  }
  GridMeasure out{initial.dim, initial.base, initial.depth, std::move(acc)};
  const double inv = 1.0 / static_cast<double>(n_terms);
  for (double& w : out.weights) w *= inv;
  return out;
}

}  // namespace

std::uint64_t GridMeasure::side() const { return upow(static_cast<std::uint64_t>(base), depth); }

std::uint64_t GridMeasure::cell_count() const {
  return upow(side(), dim);
}

void GridMeasure::validate() const {
  check_geometry(dim, base, depth);
  if (weights.size() != cell_count()) throw PreconditionError("weight vector has wrong size");
  double mass = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw PreconditionError("negative cell weight");
    mass += w;
  }
  if (std::fabs(mass - 1.0) > 1e-12) throw PreconditionError("total mass drifted from one");
}

GridMeasure GridMeasure::uniform(int dim, int base, int depth) {
  check_geometry(dim, base, depth);
  GridMeasure m{dim, base, depth, {}};
  const std::uint64_t cells = m.cell_count();
  m.weights.assign(cells, 1.0 / static_cast<double>(cells));
  return m;
}

GridMeasure GridMeasure::point_mass(int dim, int base, int depth, std::uint64_t cell) {
  check_geometry(dim, base, depth);
  GridMeasure m{dim, base, depth, {}};
  const std::uint64_t cells = m.cell_count();
  if (cell >= cells) throw PreconditionError("cell index out of range");
  m.weights.assign(cells, 0.0);
  m.weights[cell] = 1.0;
  return m;
}

TransferOperator times_map_operator(int base, int depth, long long k) {
  check_geometry(1, base, depth);
  if (k == 0) throw IncompatibleGrid("x -> 0 collapses the circle; no exact cell decomposition");
  const std::uint64_t side = upow(static_cast<std::uint64_t>(base), depth);
  const std::uint64_t reach = static_cast<std::uint64_t>(k > 0 ? k : -k);
  const Rational frac = Rational(1) / Rational(static_cast<long long>(reach));

  TransferOperator op{1, base, depth, {}};
  op.entries.resize(side);
  for (std::uint64_t j = 0; j < side; ++j) {
    // Image of [j, j+1)/side is |k| consecutive cells starting at k*j (or
    // k*(j+1) when k < 0, where the image interval begins).
    const long long lo = k > 0 ? k * static_cast<long long>(j)
                               : k * (static_cast<long long>(j) + 1);
    auto& row = op.entries[j];
    if (reach >= side) {
      // Image wraps fully around; merge coincident cells.
      std::map<std::uint64_t, Rational> acc;
      for (std::uint64_t t = 0; t < reach; ++t)
        acc[umod(lo + static_cast<long long>(t), side)] += frac;
      row.assign(acc.begin(), acc.end());
      continue;
    }
    row.reserve(reach);
    for (std::uint64_t t = 0; t < reach; ++t)
      row.emplace_back(umod(lo + static_cast<long long>(t), side), frac);
    std::sort(row.begin(), row.end());
  }
  return op;
}

TransferOperator matrix_map_operator(int base, int depth, const ToralMap& map) {
  if (map.dim == 1) {
    long long k = static_cast<long long>(map.entries.at(0, 0));
    return times_map_operator(base, depth, k);
  }
  if (map.dim != 2)
    throw IncompatibleGrid("exact matrix pushforward implemented for dimensions 1 and 2");
  if (map.determinant == 0) throw IncompatibleGrid("singular matrix collapses cells");
  check_geometry(2, base, depth);

  const std::uint64_t side = upow(static_cast<std::uint64_t>(base), depth);
  const long long m00 = static_cast<long long>(map.entries.at(0, 0));
  const long long m01 = static_cast<long long>(map.entries.at(0, 1));
  const long long m10 = static_cast<long long>(map.entries.at(1, 0));
  const long long m11 = static_cast<long long>(map.entries.at(1, 1));

  // Image of the origin cell, in cell-width units: a parallelogram with
  // integer vertices. Every other cell's image is an integer translate, so
  // the overlap pattern is computed once.
  const std::vector<RPoint> image = {{Rational(0), Rational(0)},
                                     {Rational(m00), Rational(m10)},
                                     {Rational(m00 + m01), Rational(m10 + m11)},
                                     {Rational(m01), Rational(m11)}};
  long long xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  for (const RPoint& v : image) {
    const long long x = static_cast<long long>(numerator(v[0]));
    const long long y = static_cast<long long>(numerator(v[1]));
    xlo = std::min(xlo, x), xhi = std::max(xhi, x);
    ylo = std::min(ylo, y), yhi = std::max(yhi, y);
  }

  const Rational inv_det = Rational(1) / Rational(abs(map.determinant));
  std::vector<std::tuple<long long, long long, Rational>> pattern;
  Rational total = 0;
  for (long long u = xlo; u < xhi; ++u) {
    for (long long v = ylo; v < yhi; ++v) {
      auto piece = clip_half(image, 0, Rational(u), true);
      piece = clip_half(piece, 0, Rational(u + 1), false);
      piece = clip_half(piece, 1, Rational(v), true);
      piece = clip_half(piece, 1, Rational(v + 1), false);
      if (piece.size() < 3) continue;
      Rational a = polygon_area(piece);
      if (a == 0) continue;
      pattern.emplace_back(u, v, a * inv_det);
      total += a * inv_det;
    }
  }
  if (total != 1) throw Error("pushforward pattern does not conserve mass");

  TransferOperator op{2, base, depth, {}};
  op.entries.resize(side * side);
  for (std::uint64_t i = 0; i < side; ++i) {
    const std::uint64_t bx = umod(m00 * static_cast<long long>(i), side);
    const std::uint64_t by = umod(m10 * static_cast<long long>(i), side);
    for (std::uint64_t j = 0; j < side; ++j) {
      const std::uint64_t cx = (bx + umod(m01 * static_cast<long long>(j), side)) % side;
      const std::uint64_t cy = (by + umod(m11 * static_cast<long long>(j), side)) % side;
      std::map<std::uint64_t, Rational> acc;
      for (const auto& [du, dv, frac] : pattern) {
        const std::uint64_t tx = (cx + umod(du, side)) % side;
        const std::uint64_t ty = (cy + umod(dv, side)) % side;
        acc[tx * side + ty] += frac;
      }
      op.entries[i * side + j].assign(acc.begin(), acc.end());
    }
  }
  return op;
}

TransferOperator compose(const TransferOperator& outer, const TransferOperator& inner) {
  if (outer.dim != inner.dim || outer.base != inner.base || outer.depth != inner.depth)
    throw IncompatibleGrid("operators live on different grids");
  TransferOperator op{outer.dim, outer.base, outer.depth, {}};
  op.entries.resize(inner.entries.size());
  for (size_t s = 0; s < inner.entries.size(); ++s) {
    std::map<std::uint64_t, Rational> acc;
    for (const auto& [mid, f1] : inner.entries[s])
      for (const auto& [dst, f2] : outer.entries[mid]) acc[dst] += f1 * f2;
    op.entries[s].assign(acc.begin(), acc.end());
  }
  return op;
}

GridMeasure apply(const TransferOperator& op, const GridMeasure& measure) {
  measure.validate();
  if (op.dim != measure.dim || op.base != measure.base || op.depth != measure.depth)
    throw IncompatibleGrid("operator and measure live on different grids");
  GridMeasure out{measure.dim, measure.base, measure.depth,
                  std::vector<double>(measure.weights.size(), 0.0)};
  for (size_t s = 0; s < op.entries.size(); ++s) {
    const double w = measure.weights[s];
    if (w == 0.0) continue;
    for (const auto& [dst, frac] : op.entries[s]) out.weights[dst] += w * static_cast<double>(frac);
  }
  return out;
}

GridMeasure pushforward(const GridMeasure& measure, long long k) {
  if (measure.dim != 1) throw IncompatibleGrid("x -> kx acts on the circle");
  return apply(times_map_operator(measure.base, measure.depth, k), measure);
}

GridMeasure pushforward(const GridMeasure& measure, const ToralMap& map) {
  if (map.dim != measure.dim) throw IncompatibleGrid("map and grid dimension differ");
  return apply(matrix_map_operator(measure.base, measure.depth, map), measure);
}

GridMeasure cesaro_average(const GridMeasure& initial, long long k, std::uint64_t n_terms) {
  if (initial.dim != 1) throw IncompatibleGrid("x -> kx acts on the circle");
  return cesaro_impl(initial, times_map_operator(initial.base, initial.depth, k), n_terms);
}

GridMeasure cesaro_average(const GridMeasure& initial, const ToralMap& map,
                           std::uint64_t n_terms) {
  if (map.dim != initial.dim) throw IncompatibleGrid("map and grid dimension differ");
  return cesaro_impl(initial, matrix_map_operator(initial.base, initial.depth, map), n_terms);
}

GridMeasure coarsen(const GridMeasure& measure, int new_depth) {
  measure.validate();
  if (new_depth < 0 || new_depth > measure.depth)
    throw PreconditionError("coarsen target depth out of range");
  if (new_depth == measure.depth) return measure;
  GridMeasure out{measure.dim, measure.base, new_depth, {}};
  out.weights.assign(out.cell_count(), 0.0);
  const std::uint64_t old_side = measure.side();
  const std::uint64_t new_side = out.side();
  const std::uint64_t factor = old_side / new_side;
  for (std::uint64_t c = 0; c < measure.weights.size(); ++c) {
    std::uint64_t rest = c, packed = 0;
    // Decode per-coordinate cells (coordinate 0 is most significant).
    std::uint64_t mul = 1;
    for (int axis = measure.dim - 1; axis >= 0; --axis) {
      const std::uint64_t coord = rest % old_side;
      rest /= old_side;
      packed += (coord / factor) * mul;
      mul *= new_side;
    }
    out.weights[packed] += measure.weights[c];
  }
  return out;
}

UniformDistance distance_to_uniform(const GridMeasure& measure) {
  measure.validate();
  const double u = 1.0 / static_cast<double>(measure.cell_count());
  UniformDistance d;
  double l1 = 0.0;
  for (double w : measure.weights) {
    const double dev = std::fabs(w - u);
    l1 += dev;
    d.max_cell_deviation = std::max(d.max_cell_deviation, dev);
  }
  d.total_variation = 0.5 * l1;
  return d;
}

GridMeasure parry_grid_measure(const symbolic::SftSpec& spec,
                               const symbolic::PerronData& perron_data, int depth) {
  const int lm1 = spec.window - 1;
  if (depth < lm1) throw PreconditionError("grid depth must cover the shift memory");
  check_geometry(1, spec.base, depth);
  if (perron_data.dominant.empty()) throw EmptyShift("no dominant component");

  const size_t n_states = perron_data.states.size();
  std::vector<int> local(n_states, -1);
  for (size_t i = 0; i < perron_data.dominant.size(); ++i)
    local[static_cast<size_t>(perron_data.dominant[i])] = static_cast<int>(i);

  std::vector<double> pi(perron_data.dominant.size());
  double pi_sum = 0.0;
  for (size_t i = 0; i < pi.size(); ++i) {
    pi[i] = perron_data.left_vector[i] * perron_data.right_vector[i];
    pi_sum += pi[i];
  }
  for (double& p : pi) p /= pi_sum;

  const double rho = perron_data.spectral_radius.value;
  const std::uint64_t b = static_cast<std::uint64_t>(spec.base);
  const std::uint64_t cells = upow(b, depth);
  const std::uint64_t state_mod = upow(b, lm1);

  auto find_local = [&](std::uint64_t word) -> int {
    const auto it = std::lower_bound(perron_data.states.begin(), perron_data.states.end(),
                                     static_cast<std::uint32_t>(word));
    if (it == perron_data.states.end() || *it != word) return -1;
    return local[static_cast<size_t>(it - perron_data.states.begin())];
  };

  GridMeasure out{1, spec.base, depth, std::vector<double>(cells, 0.0)};
  for (std::uint64_t c = 0; c < cells; ++c) {
    std::uint64_t cur_word = c / upow(b, depth - lm1);
    int cur = find_local(cur_word);
    if (cur < 0) continue;
    double w = pi[static_cast<size_t>(cur)];
    for (int t = lm1; t < depth && w > 0.0; ++t) {
      const std::uint64_t digit = (c / upow(b, depth - 1 - t)) % b;
      const std::uint64_t full = cur_word * b + digit;
      if (spec.is_forbidden(static_cast<std::uint32_t>(full))) {
        w = 0.0;
        break;
      }
      const std::uint64_t next_word = full % state_mod;
      const int next = find_local(next_word);
      if (next < 0) {
        w = 0.0;
        break;
      }
      w *= perron_data.right_vector[static_cast<size_t>(next)] /
           (rho * perron_data.right_vector[static_cast<size_t>(cur)]);
      cur_word = next_word;
      cur = next;
    }
    out.weights[c] = w;
  }

  double mass = 0.0;
  for (double w : out.weights) mass += w;
  if (mass <= 0.0) throw DegenerateShift("no admissible cylinder carries mass");
  for (double& w : out.weights) w /= mass;
  return out;
}

}  // namespace torodyn::averaging
