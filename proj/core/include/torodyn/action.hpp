#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "torodyn/matrix.hpp"
#include "torodyn/poly.hpp"

namespace torodyn::action {

struct CommutingPair {
  ToralMap t_map;
  ToralMap s_map;
  bool verified_commuting = false;

  // Verifies commutation exactly; throws DimensionMismatch on shape mismatch.
  static CommutingPair make(ToralMap t, ToralMap s);
};

bool commutes(const ToralMap& a, const ToralMap& b);

struct DependenceCertificate {
  std::optional<std::pair<long long, long long>> relation;  // T^t = S^s
  long long search_bound = 0;
  std::string log_ratio_witness;  // entropy-ratio necessary-condition note
};

// Exhaustive search for T^t = S^s with 0 < max(|t|,|s|) <= bound. Negative
// exponents are only admitted for automorphisms. Shells are scanned by
// increasing max(|t|,|s|); within a shell the sign-canonical (prefer t > 0,
// or t = 0 and s > 0, when the negated pair is also admissible)
// lexicographically smallest pair wins. The returned relation is re-verified
// by exact matrix exponentiation.
DependenceCertificate multiplicative_dependence(const CommutingPair& pair, long long bound);

// All p(seed) with deg p < d, coefficients in [-coeff_bound, coeff_bound],
// |det| = 1, excluding +-seed^k for |k| <= 2. Requires the seed's
// characteristic polynomial to be irreducible over Z.
std::vector<ToralMap> find_commuting_partners(const ToralMap& seed, long long coeff_bound);

struct BlockVerdict {
  std::vector<std::vector<BigInt>> integer_basis;  // primitive basis vectors
  IPoly t_char;  // char poly of T restricted to the block (monic, integer)
  IPoly s_char;
  // (t, s, twist order k): T^t = U S^s on the block with U^k = identity.
  std::optional<std::tuple<long long, long long, int>> relation;
  bool dependent = false;
};

struct FactorScanReport {
  std::vector<BlockVerdict> blocks;
  bool rank_one_found = false;  // evidence only, never a nonexistence claim
  long long bound = 0;
  int twist_cap = 0;
};

// Split Q^d into jointly invariant rational subspaces (iterated primary
// decomposition under both maps), then run the bounded relation search with a
// root-of-unity twist on each block.
FactorScanReport rank_one_factor_scan(const CommutingPair& pair, long long bound,
                                      int twist_cap = 12);

}  // namespace torodyn::action
