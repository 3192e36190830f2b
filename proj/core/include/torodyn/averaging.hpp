#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "torodyn/matrix.hpp"
#include "torodyn/symbolic.hpp"

namespace torodyn::averaging {

// Probability vector over the depth-m grid on the torus: base^depth cells per
// axis, base^(depth*dim) cells total. Cell indices pack coordinate 0 as the
// most significant block, matching the orbit engine.
struct GridMeasure {
  int dim = 1;
  int base = 2;
  int depth = 0;
  std::vector<double> weights;

  std::uint64_t side() const;
  std::uint64_t cell_count() const;
  void validate() const;  // nonnegative, total mass within 1e-12 of one

  static GridMeasure uniform(int dim, int base, int depth);
  static GridMeasure point_mass(int dim, int base, int depth, std::uint64_t cell);
};

// Exact transfer operator of a map at grid resolution: a column-stochastic
// sparse matrix with rational coefficients. entries[src] lists (dst, fraction)
// pairs sorted by dst; the fractions of each source cell sum to exactly one,
// so mass is conserved by construction.
struct TransferOperator {
  int dim = 1;
  int base = 2;
  int depth = 0;
  std::vector<std::vector<std::pair<std::uint64_t, Rational>>> entries;

  bool operator==(const TransferOperator&) const = default;
};

// x -> kx on the circle: every cell maps onto |k| consecutive cells, each
// receiving 1/|k| of the source weight.
TransferOperator times_map_operator(int base, int depth, long long k);

// Integer-matrix map in dimension 1 or 2. In dimension 2 the image of a cell
// is a parallelogram with lattice vertices; its overlap with each target cell
// is computed once by exact rational clipping and reused as a translation
// pattern. Throws IncompatibleGrid for dim > 2 or a singular matrix.
TransferOperator matrix_map_operator(int base, int depth, const ToralMap& map);

// outer applied after inner, with exact rational products.
TransferOperator compose(const TransferOperator& outer, const TransferOperator& inner);

GridMeasure apply(const TransferOperator& op, const GridMeasure& measure);

GridMeasure pushforward(const GridMeasure& measure, long long k);
GridMeasure pushforward(const GridMeasure& measure, const ToralMap& map);

// (1/N) sum of the first N pushforwards (n = 0 .. N-1). N >= 1.
GridMeasure cesaro_average(const GridMeasure& initial, long long k, std::uint64_t n_terms);
GridMeasure cesaro_average(const GridMeasure& initial, const ToralMap& map,
                           std::uint64_t n_terms);

// Aggregate to a coarser depth by summing sub-cells (per coordinate).
GridMeasure coarsen(const GridMeasure& measure, int new_depth);

struct UniformDistance {
  double total_variation = 0.0;    // half the l1 distance to the uniform vector
  double max_cell_deviation = 0.0;
};

UniformDistance distance_to_uniform(const GridMeasure& measure);

// Maximal-entropy (Parry) measure of the subshift restricted to cylinders of
// length `depth`: stationary start on the dominant component followed by the
// Markov transition weights. Cells whose word leaves the component get weight
// zero; the vector is normalized at the end. Requires depth >= window - 1.
GridMeasure parry_grid_measure(const symbolic::SftSpec& spec,
                               const symbolic::PerronData& perron_data, int depth);

}  // namespace torodyn::averaging
