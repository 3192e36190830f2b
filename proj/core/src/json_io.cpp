#include "torodyn/json_io.hpp"

#include <limits>

namespace torodyn::jsonio {

Json big_int(const BigInt& x) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  if (x >= lo && x <= hi) return x.convert_to<std::int64_t>();
  return x.str();
}

Json rational(const Rational& q) { return rational_str(q); }

Json val_err(const ValErr& v) { return Json{{"value", v.value}, {"error_radius", v.radius}}; }

Json imat(const IMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(big_int(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json toral_map(const ToralMap& m) {
  const char* kind = m.kind == MapKind::automorphism  ? "automorphism"
                     : m.kind == MapKind::epimorphism ? "epimorphism"
                                                      : "singular";
  return Json{{"dim", m.dim},
              {"matrix", imat(m.entries)},
              {"kind", kind},
              {"determinant", big_int(m.determinant)}};
}

namespace {

Json ipoly(const IPoly& p) {
  Json coeffs = Json::array();
  for (const BigInt& c : p) coeffs.push_back(big_int(c));
  return coeffs;
}

}  // namespace

Json spectral_report(const spectral::SpectralData& data) {
  Json eigs = Json::array();
  for (const auto& e : data.eigenvalues) {
    const char* side = e.side == spectral::CircleSide::outside  ? "outside"
                       : e.side == spectral::CircleSide::inside ? "inside"
                                                                : "on_circle";
    eigs.push_back(Json{{"re", rational(e.center_re)},
                        {"im", rational(e.center_im)},
                        {"radius", rational(e.radius)},
                        {"re_value", e.re()},
                        {"im_value", e.im()},
                        {"multiplicity", e.multiplicity},
                        {"unit_circle_side", side}});
  }
  return Json{{"dim", data.dim},
              {"characteristic", ipoly(data.characteristic)},
              {"eigenvalues", std::move(eigs)}};
}

Json entropy_report(const spectral::EntropyReport& rep) {
  return Json{{"h_top", val_err(rep.h_top)},
              {"kappa", val_err(rep.kappa)},
              {"kappa_degenerate", rep.kappa_degenerate},
              {"expanding_dim", rep.expanding_dim},
              {"contracting_dim", rep.contracting_dim},
              {"neutral_dim", rep.neutral_dim},
              {"hyperbolic", rep.hyperbolic},
              {"ergodic", rep.ergodic}};
}

Json dependence_report(const action::DependenceCertificate& cert) {
  Json j{{"search_bound", cert.search_bound}, {"log_ratio_witness", cert.log_ratio_witness}};
  if (cert.relation)
    j["relation"] = Json{{"t", cert.relation->first}, {"s", cert.relation->second}};
  else
    j["relation"] = nullptr;
  return j;
}

Json factor_scan_report(const action::FactorScanReport& rep) {
  Json blocks = Json::array();
  for (const auto& b : rep.blocks) {
    Json basis = Json::array();
    for (const auto& v : b.integer_basis) {
      Json vec = Json::array();
      for (const BigInt& x : v) vec.push_back(big_int(x));
      basis.push_back(std::move(vec));
    }
    Json jb{{"basis", std::move(basis)},
            {"t_characteristic", ipoly(b.t_char)},
            {"s_characteristic", ipoly(b.s_char)},
            {"dependent", b.dependent}};
    if (b.relation) {
      const auto& [t, s, twist] = *b.relation;
      jb["relation"] = Json{{"t", t}, {"s", s}, {"twist_order", twist}};
    } else {
      jb["relation"] = nullptr;
    }
    blocks.push_back(std::move(jb));
  }
  return Json{{"blocks", std::move(blocks)},
              {"rank_one_found", rep.rank_one_found},
              {"bound", rep.bound},
              {"twist_cap", rep.twist_cap}};
}

Json sft_spec(const symbolic::SftSpec& spec) {
  Json words = Json::array();
  for (std::uint32_t w : spec.forbidden) words.push_back(spec.word_string(w));
  return Json{{"base", spec.base},
              {"window", spec.window},
              {"polarity", spec.polarity == symbolic::Polarity::inner ? "inner" : "outer"},
              {"forbidden_words", std::move(words)}};
}

Json perron_report(const symbolic::PerronData& data) {
  return Json{{"states", data.states.size()},
              {"dominant_states", data.dominant.size()},
              {"spectral_radius", val_err(data.spectral_radius)},
              {"entropy", val_err(data.entropy)},
              {"dimension", val_err(data.dimension)},
              {"residual_bound", data.residual_bound},
              {"min_row_sum", big_int(data.min_row_sum)},
              {"max_row_sum", big_int(data.max_row_sum)}};
}

Json density_report(const orbits::DensityVerdict& verdict) {
  Json j{{"epsilon", verdict.epsilon},
         {"grid_depth", verdict.grid_depth},
         {"achieved", verdict.achieved},
         {"empty_cells", verdict.empty_cells},
         {"discrepancy", verdict.discrepancy}};
  if (verdict.first_cover_step)
    j["first_cover_step"] = *verdict.first_cover_step;
  else
    j["first_cover_step"] = nullptr;
  return j;
}

Json allocation_report(const bounds::LYAllocation& alloc) {
  return Json{{"gammas", alloc.gammas},
              {"delta_u", alloc.delta_u},
              {"achieved_entropy", alloc.achieved_entropy}};
}

Json bound_report(const bounds::BoundReport& rep) {
  Json j{{"ambient_dim", rep.geometry.ambient_dim},
         {"dim_avoid", rep.geometry.dim_avoid},
         {"entropy_bound_unstable", rep.entropy_bound_unstable},
         {"delta_u_bound", rep.delta_u_bound},
         {"neutral_dim", rep.neutral_dim},
         {"combined", rep.combined},
         {"provenance", rep.provenance}};
  j["entropy_bound_stable"] =
      rep.entropy_bound_stable ? Json(*rep.entropy_bound_stable) : Json(nullptr);
  j["delta_s_bound"] = rep.delta_s_bound ? Json(*rep.delta_s_bound) : Json(nullptr);
  return j;
}

Json uniform_distance_report(const averaging::UniformDistance& d) {
  return Json{{"total_variation", d.total_variation},
              {"max_cell_deviation", d.max_cell_deviation}};
}

Json cartan_entropy_report(const cartan::CartanEntropyReport& rep) {
  Json factors = Json::array();
  for (const auto& f : rep.factors)
    factors.push_back(Json{{"entropy", f.entropy},
                           {"dim_expanded", f.dim_expanded},
                           {"dim_contracted", f.dim_contracted},
                           {"dim_neutral", f.dim_neutral},
                           {"neutral", f.neutral}});
  return Json{{"entropy", rep.entropy},
              {"dim_expanded", rep.dim_expanded},
              {"dim_contracted", rep.dim_contracted},
              {"dim_neutral", rep.dim_neutral},
              {"factors", std::move(factors)}};
}

Json hypothesis_report(const cartan::HypothesisReport& rep) {
  Json factors = Json::array();
  for (const auto& f : rep.factors)
    factors.push_back(Json{{"a1_simple_root_values", f.a1_coords},
                           {"a2_simple_root_values", f.a2_coords},
                           {"independent", f.independent}});
  return Json{{"factors", std::move(factors)}, {"all_pass", rep.all_pass}};
}

Json cartan_bound_report(const cartan::CartanDimBound& rep) {
  return Json{{"bound", rep.bound},
              {"dim_expanded", rep.dim_expanded},
              {"dim_contracted", rep.dim_contracted},
              {"dim_neutral", rep.dim_neutral},
              {"delta_u", rep.delta_u},
              {"delta_s", rep.delta_s},
              {"degenerate", rep.degenerate}};
}

}  // namespace torodyn::jsonio
