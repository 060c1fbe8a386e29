#include "keysec/io.hpp"

#include <cctype>
#include <cstdio>

#include "keysec/errors.hpp"

namespace keysec {

namespace {

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int require_int(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) throw ValidationError(std::string(key) + ": expected integer");
    return v.get<int>();
}

std::vector<double> require_doubles(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_array()) throw ValidationError(std::string(key) + ": expected array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number()) throw ValidationError(std::string(key) + ": expected numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

// ===== hex helpers =====

std::string to_hex(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t from_hex(const std::string& s) {
    std::string t = s;
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
    if (t.empty() || t.size() > 16) throw ValidationError("bad hex value: " + s);
    std::uint64_t v = 0;
    for (char c : t) {
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            throw ValidationError("bad hex value: " + s);
        v = (v << 4) | static_cast<std::uint64_t>(
                           std::isdigit(static_cast<unsigned char>(c))
                               ? c - '0'
                               : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
    }
    return v;
}

std::string bits_to_hex(const std::vector<std::uint8_t>& bits) {
    // Nibble h holds bits [4h, 4h+4), bit t at nibble bit t%4.
    std::string out;
    const std::size_t nibbles = (bits.size() + 3) / 4;
    out.reserve(nibbles);
    for (std::size_t h = 0; h < nibbles; ++h) {
        int v = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t t = 4 * h + b;
            if (t < bits.size() && bits[t]) v |= 1 << b;
        }
        out.push_back("0123456789abcdef"[v]);
    }
    return out;
}

std::vector<std::uint8_t> hex_to_bits(const std::string& s, int len) {
    if (len < 0 || static_cast<std::size_t>((len + 3) / 4) != s.size())
        throw ValidationError("hex string length does not match bit count");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(len), 0);
    for (std::size_t h = 0; h < s.size(); ++h) {
        const char c = s[h];
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            throw ValidationError("bad hex keystream: " + s);
        const int v = std::isdigit(static_cast<unsigned char>(c))
                          ? c - '0'
                          : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t t = 4 * h + b;
            if (t < bits.size()) bits[t] = static_cast<std::uint8_t>((v >> b) & 1);
        }
    }
    return bits;
}

// ===== distributions =====

json probvec_to_json(const ProbVec& p) {
    return json{{"n", p.n()}, {"p", p.data()}};
}

ProbVec probvec_from_json(const json& j) {
    return ProbVec(require_int(j, "n"), require_doubles(j, "p"), 1e-9);
}

json cpd_to_json(const Cpd& c) {
    json outcomes = json::array();
    for (const auto& o : c.outcomes())
        outcomes.push_back(json{{"w", o.weight}, {"p", o.dist.data()}});
    return json{{"n", c.n()}, {"outcomes", std::move(outcomes)}};
}

Cpd cpd_from_json(const json& j) {
    const int n = require_int(j, "n");
    const json& arr = require(j, "outcomes");
    if (!arr.is_array()) throw ValidationError("outcomes: expected array");
    std::vector<CpdOutcome> outcomes;
    for (const auto& o : arr) {
        const json& w = require(o, "w");
        if (!w.is_number()) throw ValidationError("w: expected number");
        outcomes.push_back({w.get<double>(), ProbVec(n, require_doubles(o, "p"), 1e-9)});
    }
    return Cpd(n, std::move(outcomes), 1e-9);
}

json mask_to_json(const SubsetMask& m) {
    return json{{"n", m.n}, {"positions", m.positions}};
}

SubsetMask mask_from_json(const json& j) {
    const json& pos = require(j, "positions");
    if (!pos.is_array()) throw ValidationError("positions: expected array");
    std::vector<int> positions;
    for (const auto& v : pos) positions.push_back(v.get<int>());
    return SubsetMask(require_int(j, "n"), std::move(positions));
}

// ===== stream cipher =====

json lfsr_spec_to_json(const LfsrSpec& s) {
    return json{{"width", s.width}, {"taps", to_hex(s.taps)}};
}

LfsrSpec lfsr_spec_from_json(const json& j) {
    const json& taps = require(j, "taps");
    if (!taps.is_string()) throw ValidationError("taps: expected hex string");
    return LfsrSpec(require_int(j, "width"), from_hex(taps.get<std::string>()));
}

json keystream_to_json(const Keystream& k) {
    return json{{"spec", lfsr_spec_to_json(k.spec)},
                {"seed", to_hex(k.seed)},
                {"len", k.bits.size()},
                {"bits_hex", bits_to_hex(k.bits)}};
}

json kpa_to_json(const KpaInstance& k) {
    return json{{"positions", k.positions}, {"bits", k.bits}};
}

KpaInstance kpa_from_json(const json& j) {
    const json& pos = require(j, "positions");
    const json& bits = require(j, "bits");
    if (!pos.is_array() || !bits.is_array())
        throw ValidationError("kpa: positions/bits must be arrays");
    std::vector<int> p, b;
    for (const auto& v : pos) p.push_back(v.get<int>());
    for (const auto& v : bits) b.push_back(v.get<int>());
    return KpaInstance(std::move(p), std::move(b));
}

json kpa_result_to_json(const KpaResult& r) {
    json out{{"consistent", r.solution.consistent}};
    if (r.solution.consistent) {
        out["solution_dimension"] = r.solution.dimension();
        json seeds = json::array();
        for (auto s : r.seeds) seeds.push_back(to_hex(s));
        out["seed_count"] = r.seeds.size();
        out["seeds"] = std::move(seeds);
    } else {
        out["seed_count"] = 0;
    }
    return out;
}

json keystream_dist_to_json(const KeystreamDist& d) {
    return json{{"len", d.len()},
                {"prior", d.prior() == SeedPrior::ExcludeZero ? "exclude-zero" : "include-zero"},
                {"support_size", d.support_size()},
                {"p1", d.p1()},
                {"entropy", d.entropy()},
                {"stat_distance_to_uniform", d.stat_distance_to_uniform()}};
}

json shannon_report_to_json(const ShannonLimitReport& r) {
    return json{{"width", r.width},
                {"len", r.len},
                {"entropy", r.entropy},
                {"within_limit", r.within_limit},
                {"ie_per_bit", r.ie_per_bit},
                {"ie_lower_bound", r.ie_lower_bound}};
}

// ===== quantum =====

namespace {

json cmat_to_json(const CMat& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < m.dim(); ++j) {
            rrow.push_back(m.at(i, j).real());
            irow.push_back(m.at(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMat cmat_from_json(const json& j) {
    const int dim = require_int(j, "dim");
    if (dim < 1 || dim > 256) throw ValidationError("matrix dim out of range");
    const json& re = require(j, "re");
    const json& im = require(j, "im");
    if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(dim) ||
        im.size() != static_cast<std::size_t>(dim))
        throw ValidationError("matrix re/im must be dim x dim arrays");
    CMat m(dim);
    for (int i = 0; i < dim; ++i) {
        const json& rrow = re.at(static_cast<std::size_t>(i));
        const json& irow = im.at(static_cast<std::size_t>(i));
        if (rrow.size() != static_cast<std::size_t>(dim) ||
            irow.size() != static_cast<std::size_t>(dim))
            throw ValidationError("matrix re/im must be dim x dim arrays");
        for (int k = 0; k < dim; ++k)
            m.at(i, k) = cplx(rrow.at(static_cast<std::size_t>(k)).get<double>(),
                              irow.at(static_cast<std::size_t>(k)).get<double>());
    }
    return m;
}

} // namespace

json density_to_json(const DensityMatrix& d) { return cmat_to_json(d.mat()); }

DensityMatrix density_from_json(const json& j) { return DensityMatrix(cmat_from_json(j)); }

json ensemble_to_json(const CqEnsemble& e) {
    json states = json::array();
    for (const auto& s : e.states()) states.push_back(density_to_json(s));
    return json{{"n", e.n()}, {"states", std::move(states)}};
}

CqEnsemble ensemble_from_json(const json& j) {
    const int n = require_int(j, "n");
    const json& arr = require(j, "states");
    if (!arr.is_array()) throw ValidationError("states: expected array");
    std::vector<DensityMatrix> states;
    for (const auto& s : arr) states.push_back(density_from_json(s));
    return CqEnsemble(n, std::move(states));
}

json povm_to_json(const Povm& p) {
    json els = json::array();
    for (const auto& el : p.elements()) els.push_back(cmat_to_json(el));
    return json{{"elements", std::move(els)}};
}

Povm povm_from_json(const json& j) {
    const json& arr = require(j, "elements");
    if (!arr.is_array()) throw ValidationError("elements: expected array");
    std::vector<CMat> els;
    for (const auto& el : arr) els.push_back(cmat_from_json(el));
    return Povm(std::move(els));
}

json block_identity_to_json(const BlockIdentityReport& r) {
    return json{{"lhs", r.lhs},
                {"rhs_halved", r.rhs_halved},
                {"rhs_unhalved", r.rhs_unhalved},
                {"match_halved", r.match_halved},
                {"match_unhalved", r.match_unhalved}};
}

json witness_to_json(const WitnessReport& r) {
    return json{{"d", r.d_value},
                {"k1", r.k1},
                {"k2", r.k2},
                {"pair_distance", r.pair_distance},
                {"outcome", r.outcome},
                {"deviation", r.deviation},
                {"cpd", cpd_to_json(r.cpd)}};
}

json cpd_bounds_to_json(const CpdBoundReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json o{{"outcome", row.outcome}, {"p_y", row.p_y}, {"skipped", row.skipped}};
        if (!row.skipped) {
            o["bound"] = row.bound;
            o["actual_max_dev"] = row.actual_max_dev;
            o["vacuous"] = row.vacuous;
        }
        rows.push_back(std::move(o));
    }
    return json{{"epsilon", r.epsilon}, {"outcomes", std::move(rows)}};
}

json mixture_to_json(const MixtureFeasibility& r) {
    return json{{"epsilon", r.epsilon},
                {"d", r.d_value},
                {"min_eigenvalue", r.min_eigenvalue},
                {"feasible", r.feasible}};
}

// ===== interpret =====

json coupling_to_json(const Coupling& c) {
    const std::size_t N = c.side();
    json rows = json::array();
    for (std::size_t i = 0; i < N; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < N; ++j) row.push_back(c.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"n", c.n()}, {"joint", std::move(rows)}, {"pr_not_equal", c.pr_not_equal()}};
}

json decomposition_to_json(const DecompositionReport& r, double pr_neq_maximal,
                           double pr_neq_independent) {
    return json{{"delta", r.delta},
                {"pr_neq_maximal", pr_neq_maximal},
                {"pr_neq_independent", pr_neq_independent},
                {"eq12_valid_Pprime", r.valid_Pprime},
                {"delta_Pprime_q", r.delta_Pprime_q}};
}

// ===== extremal / guarantees =====

json certificate_to_json(const SearchCertificate& c) {
    return json{{"dist", probvec_to_json(c.dist)},
                {"constraint_value", c.constraint_value},
                {"objective_value", c.objective_value},
                {"pattern", c.pattern},
                {"weight", c.weight}};
}

json markov_to_json(const MarkovBound& b) {
    return json{{"avg_bound", b.avg_bound},
                {"per_instance", b.per_instance},
                {"confidence", b.confidence}};
}

json subset_bound_to_json(const SubsetBound& b) {
    return json{
        {"epsilon", b.epsilon}, {"m", b.m}, {"bound", b.bound}, {"vacuous", b.vacuous}};
}

json criterion_to_json(const CriterionSpec& s) {
    return json{{"kind", to_string(s.kind)},
                {"epsilon", s.epsilon},
                {"n", s.n},
                {"quantum_memory", s.quantum_memory}};
}

json table1_to_json(const GuaranteeReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json o{{"scenario", row.scenario},
               {"formula", row.formula},
               {"instantiated", row.instantiated},
               {"provenance", row.provenance},
               {"caveat", row.caveat}};
        if (row.has_value) o["value"] = row.value;
        rows.push_back(std::move(o));
    }
    return json{{"spec", criterion_to_json(r.spec)}, {"rows", std::move(rows)}};
}

json benchmark_to_json(const BenchmarkReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json o{{"quantity", row.quantity},
               {"conventional", row.conventional},
               {"qkd", row.qkd},
               {"provenance", row.provenance}};
        if (row.conventional_has_value) o["conventional_value"] = row.conventional_value;
        if (row.qkd_has_value) o["qkd_value"] = row.qkd_value;
        rows.push_back(std::move(o));
    }
    return json{{"spec", criterion_to_json(r.qkd)},
                {"width", r.width},
                {"rows", std::move(rows)},
                {"rate_factor", r.rate_factor}};
}

// ===== records =====

json metric_record(const std::string& name, double value, json params) {
    return json{{"metric", name}, {"value", value}, {"params", std::move(params)}};
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace keysec
