#pragma once

#include <json.hpp>

#include <string>

#include "keysec/coupling.hpp"
#include "keysec/extremal.hpp"
#include "keysec/guarantees.hpp"
#include "keysec/lfsr.hpp"
#include "keysec/prob.hpp"
#include "keysec/quantum.hpp"

namespace keysec {

using json = nlohmann::json;

// ===== hex helpers =====

std::string to_hex(std::uint64_t v);
std::uint64_t from_hex(const std::string& s);
std::string bits_to_hex(const std::vector<std::uint8_t>& bits); // little-endian nibbles
std::vector<std::uint8_t> hex_to_bits(const std::string& s, int len);

// ===== distributions =====

json probvec_to_json(const ProbVec& p);
ProbVec probvec_from_json(const json& j); // 1e-9 load tolerance

json cpd_to_json(const Cpd& c);
Cpd cpd_from_json(const json& j);

json mask_to_json(const SubsetMask& m);
SubsetMask mask_from_json(const json& j);

// ===== stream cipher =====

json lfsr_spec_to_json(const LfsrSpec& s); // taps as hex string
LfsrSpec lfsr_spec_from_json(const json& j);

json keystream_to_json(const Keystream& k); // bits as hex
json kpa_to_json(const KpaInstance& k);
KpaInstance kpa_from_json(const json& j);
json kpa_result_to_json(const KpaResult& r);
json keystream_dist_to_json(const KeystreamDist& d);
json shannon_report_to_json(const ShannonLimitReport& r);

// ===== quantum =====

json density_to_json(const DensityMatrix& d); // { dim, re, im }
DensityMatrix density_from_json(const json& j);
json ensemble_to_json(const CqEnsemble& e);
CqEnsemble ensemble_from_json(const json& j);
json povm_to_json(const Povm& p);
Povm povm_from_json(const json& j);

json block_identity_to_json(const BlockIdentityReport& r);
json witness_to_json(const WitnessReport& r);
json cpd_bounds_to_json(const CpdBoundReport& r);
json mixture_to_json(const MixtureFeasibility& r);

// ===== interpret =====

json coupling_to_json(const Coupling& c);
json decomposition_to_json(const DecompositionReport& r,
                           double pr_neq_maximal, double pr_neq_independent);

// ===== extremal / guarantees =====

json certificate_to_json(const SearchCertificate& c);
json markov_to_json(const MarkovBound& b);
json subset_bound_to_json(const SubsetBound& b);
json criterion_to_json(const CriterionSpec& s);
json table1_to_json(const GuaranteeReport& r);
json benchmark_to_json(const BenchmarkReport& r);

// ===== records =====

// { "metric": name, "value": v, "params": {...} }
json metric_record(const std::string& name, double value, json params);

// Full-precision decimal rendering for CSV cells (17 significant digits).
std::string fmt_double(double v);

} // namespace keysec
