#pragma once

#include <optional>
#include <vector>

namespace torodyn::cartan {

// One simple factor of type A: sl_n acting through its roots e_i - e_j
// (i != j). multiplicity is the real dimension of each root space; 1 for the
// split form, kept configurable so other real forms can reuse the arithmetic.
struct SimpleFactor {
  int n = 2;
  int multiplicity = 1;
};

struct RootSystemSpec {
  std::vector<SimpleFactor> factors;

  static RootSystemSpec sl(const std::vector<int>& ns, int multiplicity = 1);
  void validate() const;
  int rank() const;           // sum of per-factor ranks n - 1
  int lie_dimension() const;  // root spaces plus Cartan, summed over factors
  bool eligible() const;      // every factor has rank >= 2
};

// Element of the Cartan subalgebra, one trace-zero vector per factor.
struct CartanElement {
  std::vector<std::vector<double>> t;

  static CartanElement make(const RootSystemSpec& spec,
                            std::vector<std::vector<double>> entries);
};

struct FactorEntropy {
  double entropy = 0.0;
  int dim_expanded = 0;    // root-space dimension with positive root value
  int dim_contracted = 0;
  int dim_neutral = 0;     // vanishing roots plus the Cartan itself
  bool neutral = false;    // no root expands: the element is trivial here
};

struct CartanEntropyReport {
  double entropy = 0.0;
  int dim_expanded = 0;
  int dim_contracted = 0;
  int dim_neutral = 0;
  std::vector<FactorEntropy> factors;
};

// h = sum over roots with positive value of value * dim(root space).
CartanEntropyReport cartan_entropy(const RootSystemSpec& spec, const CartanElement& t);

struct FactorProjection {
  std::vector<double> a1_coords;  // values of the simple roots on a1
  std::vector<double> a2_coords;
  bool independent = false;
};

struct HypothesisReport {
  std::vector<FactorProjection> factors;
  bool all_pass = false;
};

// Two elements qualify when their projections to every simple factor are
// linearly independent (exact rational 2x2 minors on the simple-root
// coordinates). Throws RankTooLow when a factor has rank < 2.
HypothesisReport check_theorem14_hypotheses(const RootSystemSpec& spec,
                                            const CartanElement& a1,
                                            const CartanElement& a2);

struct CartanDimBound {
  double bound = 0.0;
  int dim_expanded = 0;
  int dim_contracted = 0;
  int dim_neutral = 0;
  double delta_u = 0.0;
  double delta_s = 0.0;
  bool degenerate = false;  // some factor sees no expansion under a1
};

// Dimension bound delta_u + delta_s + dim(neutral directions). At the default
// assumed entropy (the maximum, cartan_entropy(a1)) the allocation fills every
// coefficient and the bound is exactly the full Lie-algebra dimension;
// intermediate assumed entropies chain through the Lyapunov allocation with
// the root values as exponents. Throws RankTooLow on ineligible specs.
CartanDimBound cartan_dim_bound(const RootSystemSpec& spec, const CartanElement& a1,
                                std::optional<double> assumed_entropy = std::nullopt);

}  // namespace torodyn::cartan
