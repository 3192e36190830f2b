#pragma once

#include "json.hpp"
#include "torodyn/action.hpp"
#include "torodyn/averaging.hpp"
#include "torodyn/bounds.hpp"
#include "torodyn/cartan.hpp"
#include "torodyn/matrix.hpp"
#include "torodyn/orbits.hpp"
#include "torodyn/spectral.hpp"
#include "torodyn/symbolic.hpp"

// Report serialization. Numeric policy: integers that fit in 64 bits are
// emitted as JSON numbers, anything wider as decimal strings; rationals as
// "p/q" strings; certified values as {value, error_radius}.
namespace torodyn::jsonio {

using Json = nlohmann::json;

Json big_int(const BigInt& x);
Json rational(const Rational& q);
Json val_err(const ValErr& v);
Json imat(const IMat& m);
Json toral_map(const ToralMap& m);

Json spectral_report(const spectral::SpectralData& data);
Json entropy_report(const spectral::EntropyReport& rep);
Json dependence_report(const action::DependenceCertificate& cert);
Json factor_scan_report(const action::FactorScanReport& rep);
Json sft_spec(const symbolic::SftSpec& spec);
Json perron_report(const symbolic::PerronData& data);
Json density_report(const orbits::DensityVerdict& verdict);
Json allocation_report(const bounds::LYAllocation& alloc);
Json bound_report(const bounds::BoundReport& rep);
Json uniform_distance_report(const averaging::UniformDistance& d);
Json cartan_entropy_report(const cartan::CartanEntropyReport& rep);
Json hypothesis_report(const cartan::HypothesisReport& rep);
Json cartan_bound_report(const cartan::CartanDimBound& rep);

}  // namespace torodyn::jsonio
