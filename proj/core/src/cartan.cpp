#include "torodyn/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "torodyn/bounds.hpp"
#include "torodyn/errors.hpp"
#include "torodyn/exact.hpp"

namespace torodyn::cartan {

namespace {

void check_element(const RootSystemSpec& spec, const CartanElement& t, const char* name) {
  if (t.t.size() != spec.factors.size())
    throw PreconditionError(std::string(name) + ": factor count mismatch");
  for (size_t f = 0; f < spec.factors.size(); ++f) {
    if (static_cast<int>(t.t[f].size()) != spec.factors[f].n)
      throw PreconditionError(std::string(name) + ": wrong vector length in a factor");
    double sum = 0.0;
    for (double x : t.t[f]) sum += x;
    if (std::fabs(sum) > 1e-12)
      throw PreconditionError(std::string(name) + ": factor entries must sum to zero");
  }
}

}  // namespace

RootSystemSpec RootSystemSpec::sl(const std::vector<int>& ns, int multiplicity) {
  RootSystemSpec spec;
  for (int n : ns) spec.factors.push_back({n, multiplicity});
  spec.validate();
  return spec;
}

void RootSystemSpec::validate() const {
  if (factors.empty()) throw PreconditionError("root system needs at least one factor");
  for (const SimpleFactor& f : factors) {
    if (f.n < 2) throw PreconditionError("sl_n factors need n >= 2");
    if (f.multiplicity < 1) throw PreconditionError("root multiplicity must be positive");
  }
}

int RootSystemSpec::rank() const {
  int r = 0;
  for (const SimpleFactor& f : factors) r += f.n - 1;
  return r;
}

int RootSystemSpec::lie_dimension() const {
  int d = 0;
  for (const SimpleFactor& f : factors) d += f.multiplicity * f.n * (f.n - 1) + (f.n - 1);
  return d;
}

bool RootSystemSpec::eligible() const {
  for (const SimpleFactor& f : factors)
    if (f.n - 1 < 2) return false;
  return true;
}

CartanElement CartanElement::make(const RootSystemSpec& spec,
                                  std::vector<std::vector<double>> entries) {
  spec.validate();
  CartanElement e{std::move(entries)};
  check_element(spec, e, "Cartan element");
  return e;
}

CartanEntropyReport cartan_entropy(const RootSystemSpec& spec, const CartanElement& t) {
  spec.validate();
  check_element(spec, t, "Cartan element");
  CartanEntropyReport rep;
  for (size_t f = 0; f < spec.factors.size(); ++f) {
    const SimpleFactor& fac = spec.factors[f];
    const std::vector<double>& v = t.t[f];
    FactorEntropy fe;
    fe.dim_neutral = fac.n - 1;  // the Cartan directions themselves
    for (int i = 0; i < fac.n; ++i) {
      for (int j = 0; j < fac.n; ++j) {
        if (i == j) continue;
        const double val = v[static_cast<size_t>(i)] - v[static_cast<size_t>(j)];
        if (val > 0) {
          fe.entropy += val * fac.multiplicity;
          fe.dim_expanded += fac.multiplicity;
        } else if (val < 0) {
          fe.dim_contracted += fac.multiplicity;
        } else {
          fe.dim_neutral += fac.multiplicity;
        }
      }
    }
    fe.neutral = fe.dim_expanded == 0;
    rep.entropy += fe.entropy;
    rep.dim_expanded += fe.dim_expanded;
    rep.dim_contracted += fe.dim_contracted;
    rep.dim_neutral += fe.dim_neutral;
    rep.factors.push_back(fe);
  }
  return rep;
}

HypothesisReport check_theorem14_hypotheses(const RootSystemSpec& spec, const CartanElement& a1,
                                            const CartanElement& a2) {
  spec.validate();
  if (!spec.eligible())
    throw RankTooLow("every simple factor must have rank >= 2");
  check_element(spec, a1, "a1");
  check_element(spec, a2, "a2");

  HypothesisReport rep;
  rep.all_pass = true;
  for (size_t f = 0; f < spec.factors.size(); ++f) {
    const int n = spec.factors[f].n;
    FactorProjection proj;
    for (int i = 0; i + 1 < n; ++i) {
      proj.a1_coords.push_back(a1.t[f][static_cast<size_t>(i)] -
                               a1.t[f][static_cast<size_t>(i) + 1]);
      proj.a2_coords.push_back(a2.t[f][static_cast<size_t>(i)] -
                               a2.t[f][static_cast<size_t>(i) + 1]);
    }
    // Exact rank test: doubles embed exactly into rationals, so a zero minor
    // means genuinely dependent projections, not a rounding accident.
    proj.independent = false;
    const size_t r = proj.a1_coords.size();
    for (size_t i = 0; i < r && !proj.independent; ++i) {
      for (size_t j = i + 1; j < r && !proj.independent; ++j) {
        Rational minor = Rational(proj.a1_coords[i]) * Rational(proj.a2_coords[j]) -
                         Rational(proj.a1_coords[j]) * Rational(proj.a2_coords[i]);
        if (minor != 0) proj.independent = true;
      }
    }
    rep.all_pass = rep.all_pass && proj.independent;
    rep.factors.push_back(std::move(proj));
  }
  return rep;
}

CartanDimBound cartan_dim_bound(const RootSystemSpec& spec, const CartanElement& a1,
                                std::optional<double> assumed_entropy) {
  spec.validate();
  if (!spec.eligible())
    throw RankTooLow("every simple factor must have rank >= 2");
  const CartanEntropyReport ent = cartan_entropy(spec, a1);

  CartanDimBound out;
  out.dim_expanded = ent.dim_expanded;
  out.dim_contracted = ent.dim_contracted;
  out.dim_neutral = ent.dim_neutral;
  for (const FactorEntropy& fe : ent.factors) out.degenerate = out.degenerate || fe.neutral;

  const double h = assumed_entropy.value_or(ent.entropy);
  if (h < 0 || h > ent.entropy + 1e-9)
    throw EntropyOutOfRange("assumed entropy exceeds the maximum for this element");

  if (ent.dim_expanded == 0) {
    // Nothing expands or contracts: the bound degenerates to the neutral part.
    out.bound = ent.dim_neutral;
    return out;
  }

  // Roots come in +/- pairs, so the contraction exponents equal the expansion
  // exponents and one spectrum serves both sides.
  std::map<double, int> merged;
  for (size_t f = 0; f < spec.factors.size(); ++f) {
    const SimpleFactor& fac = spec.factors[f];
    const std::vector<double>& v = a1.t[f];
    for (int i = 0; i < fac.n; ++i)
      for (int j = 0; j < fac.n; ++j) {
        const double val = i == j ? 0.0 : v[static_cast<size_t>(i)] - v[static_cast<size_t>(j)];
        if (val > 0) merged[val] += fac.multiplicity;
      }
  }
  std::vector<std::pair<double, int>> vals(merged.rbegin(), merged.rend());
  const auto spectrum = bounds::LyapunovSpectrum::from_values(vals);

  if (!assumed_entropy.has_value()) {
    // Limit case: full allocation on both sides, exact integer bound.
    out.delta_u = ent.dim_expanded;
    out.delta_s = ent.dim_contracted;
    out.bound = static_cast<double>(ent.dim_expanded + ent.dim_contracted + ent.dim_neutral);
    return out;
  }

  out.delta_u = bounds::ly_min_unstable_dim(spectrum, h).delta_u;
  out.delta_s = bounds::ly_min_unstable_dim(spectrum, h).delta_u;
  out.bound = out.delta_u + out.delta_s + ent.dim_neutral;
  return out;
}

}  // namespace torodyn::cartan
