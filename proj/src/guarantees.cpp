#include "keysec/guarantees.hpp"

#include <cmath>
#include <cstdio>

#include "keysec/errors.hpp"

namespace keysec {

std::string to_string(CriterionKind kind) {
    switch (kind) {
        case CriterionKind::P1: return "p1";
        case CriterionKind::IePerBit: return "ie_per_bit";
        case CriterionKind::DeltaE: return "delta_e";
    }
    return "?";
}

CriterionKind criterion_from_string(const std::string& s) {
    if (s == "p1") return CriterionKind::P1;
    if (s == "ie" || s == "ie_per_bit") return CriterionKind::IePerBit;
    if (s == "delta" || s == "delta_e") return CriterionKind::DeltaE;
    throw ValidationError("unknown criterion kind: " + s);
}

CriterionSpec make_criterion(CriterionKind kind, double epsilon, int n, bool quantum_memory) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ValidationError("CriterionSpec: epsilon must be in [0, 1]");
    if (n < 1) throw ValidationError("CriterionSpec: n must be >= 1");
    return CriterionSpec{kind, epsilon, n, quantum_memory};
}

MarkovBound markov_individualize(double eps_total) {
    if (!(eps_total > 0.0 && eps_total < 1.0))
        throw ValidationError("markov_individualize: eps_total must be in (0, 1)");
    const double s = std::sqrt(eps_total);
    return MarkovBound{eps_total, s, 1.0 - s};
}

SubsetBound delta_subset_bound(double eps, int m) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw ValidationError("delta_subset_bound: eps must be in [0, 1]");
    if (m < 1) throw ValidationError("delta_subset_bound: m must be >= 1");
    const double raw = eps + std::ldexp(1.0, -m);
    return SubsetBound{eps, m, std::min(1.0, raw), raw >= 1.0};
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

GuaranteeReport table1_report(const CriterionSpec& spec) {
    make_criterion(spec.kind, spec.epsilon, spec.n, spec.quantum_memory); // re-validate
    GuaranteeReport rep{spec, {}};
    const double eps = spec.epsilon;
    const double n = static_cast<double>(spec.n);

    switch (spec.kind) {
        case CriterionKind::P1:
            rep.rows.push_back({"raw:whole-key", "leak of K with probability eps",
                                "leak of K with probability " + num(eps), true, eps,
                                "computed",
                                "restates the criterion itself; no averaging involved"});
            break;
        case CriterionKind::IePerBit:
            rep.rows.push_back(
                {"raw:whole-key", "p1(K) ~ eps", "p1(K) ~ " + num(eps), true, eps, "computed",
                 "attained by the spike construction up to 1/(n 2^n)"});
            rep.rows.push_back(
                {"raw:subset", "p1(K~) ~ (|K|/|K~|) eps",
                 "p1(K~) ~ (" + num(n) + "/|K~|) " + num(eps), false, 0.0, "paper-reported",
                 "subset-leak construction lives outside this paper; the search harness "
                 "reports achieved values without asserting the scaling"});
            break;
        case CriterionKind::DeltaE:
            rep.rows.push_back(
                {"raw:whole-key", "p1(K) = eps + 1/N",
                 "p1(K) = " + num(eps) + " + 2^-" + std::to_string(spec.n), true,
                 eps + std::ldexp(1.0, -spec.n), "computed",
                 "attained exactly by the spike construction"});
            rep.rows.push_back(
                {"raw:subset", "p1(K~) = eps + 2^-|K~|",
                 "p1(K~) = " + num(eps) + " + 2^-|K~|", false, 0.0, "computed",
                 "sound for every subset and attained by subcube spikes; instantiate with "
                 "the subset bound calculator"});
            break;
    }

    if (!spec.quantum_memory) {
        switch (spec.kind) {
            case CriterionKind::P1:
                rep.rows.push_back({"composition:no-quantum-memory", "f ~ 1 - eps",
                                    "f ~ " + num(1.0 - eps), true, 1.0 - eps,
                                    "paper-reported",
                                    "worst-case key-fraction exposure consistent with the "
                                    "guessing-probability bound alone"});
                break;
            case CriterionKind::IePerBit:
                rep.rows.push_back(
                    {"composition:no-quantum-memory", "f ~ eps", "f ~ " + num(eps), true, eps,
                     "computed",
                     "attained by the deterministic-extension construction at eps = 1/(n+1)"});
                break;
            case CriterionKind::DeltaE:
                rep.rows.push_back(
                    {"composition:no-quantum-memory", "f ~ 0", "f ~ 0", true, 0.0, "computed",
                     "no bit of K is a deterministic function of the rest once delta_E < 1/2; "
                     "single-bit advantage stays below 1/2 + eps"});
                break;
        }
        return rep;
    }

    switch (spec.kind) {
        case CriterionKind::P1:
            rep.rows.push_back({"composition:quantum-memory", "f >= 1 - eps",
                                "f >= " + num(1.0 - eps), true, 1.0 - eps, "paper-reported",
                                "quantum-memory partial-key-leakage figure from the cited "
                                "lockable-information analysis"});
            break;
        case CriterionKind::IePerBit: {
            const double l = std::log2(1.0 / eps);
            rep.rows.push_back(
                {"composition:quantum-memory", "f >= log2(1/eps)",
                 "f >= " + num(l) + " bits exposed per known segment", true, l,
                 "paper-reported",
                 "one bit leaks per log2(1/eps) known bits; at l = 10 the worked leak "
                 "fraction moves from 0.1% to 10% (one bit per 10 known)"});
            break;
        }
        case CriterionKind::DeltaE:
            rep.rows.push_back({"composition:quantum-memory", "f ~ ?", "f ~ ?", false, 0.0,
                                "paper-reported",
                                "left open in the source analysis; preserved as unknown"});
            break;
    }
    return rep;
}

double pa_adjusted_rate(double rate, double l, double n) {
    if (!(rate >= 0.0)) throw ValidationError("pa_adjusted_rate: rate must be >= 0");
    if (!(l > 0.0) || !(n > 0.0) || l > n)
        throw ValidationError("pa_adjusted_rate: need 0 < l <= n");
    return rate * l / n;
}

BenchmarkReport benchmark_vs_conventional(const CriterionSpec& qkd, int width) {
    make_criterion(qkd.kind, qkd.epsilon, qkd.n, qkd.quantum_memory);
    if (width < 2 || width > 1024)
        throw ValidationError("benchmark_vs_conventional: width must be in [2, 1024]");

    BenchmarkReport rep{qkd, width, {}, 0.0};
    const double eps = qkd.epsilon;
    const bool tiny = width <= 60; // 2^-width representable comfortably
    const double conv_p1 = tiny ? std::ldexp(1.0, -width) : 0.0;

    BenchmarkRow whole{};
    whole.quantity = "p1(K) raw";
    whole.conventional = "2^-" + std::to_string(width) + " (idealized seed count)";
    whole.conventional_has_value = tiny;
    whole.conventional_value = conv_p1;
    switch (qkd.kind) {
        case CriterionKind::P1:
            whole.qkd = "eps = " + num(eps);
            whole.qkd_value = eps;
            break;
        case CriterionKind::IePerBit:
            whole.qkd = "~ eps = " + num(eps);
            whole.qkd_value = eps;
            break;
        case CriterionKind::DeltaE:
            whole.qkd = "eps + 2^-n = " + num(eps + std::ldexp(1.0, -qkd.n));
            whole.qkd_value = eps + std::ldexp(1.0, -qkd.n);
            break;
    }
    whole.qkd_has_value = true;
    whole.provenance = "computed";
    rep.rows.push_back(whole);

    BenchmarkRow subset{};
    subset.quantity = "p1(K~) raw, m-bit subset";
    subset.conventional = "2^-m for m <= width (exact by enumeration)";
    subset.conventional_has_value = false;
    switch (qkd.kind) {
        case CriterionKind::P1:
            subset.qkd = "not constrained beyond the whole-key bound";
            subset.provenance = "computed";
            break;
        case CriterionKind::IePerBit:
            subset.qkd = "~ (n/m) eps";
            subset.provenance = "paper-reported";
            break;
        case CriterionKind::DeltaE:
            subset.qkd = "eps + 2^-m";
            subset.provenance = "computed";
            break;
    }
    subset.qkd_has_value = false;
    rep.rows.push_back(subset);

    BenchmarkRow kpa{};
    kpa.quantity = "composition under KPA/PKL";
    kpa.conventional =
        "collapse: width consecutive known bits recover the seed, every further bit known";
    kpa.conventional_has_value = false;
    const GuaranteeReport t1 = table1_report(qkd);
    const ReportRow& comp = t1.rows.back();
    kpa.qkd = comp.formula + " (" + comp.instantiated + ")";
    kpa.qkd_has_value = comp.has_value;
    kpa.qkd_value = comp.value;
    kpa.provenance = comp.provenance;
    rep.rows.push_back(kpa);

    if (eps > 0.0 && eps < 1.0) {
        const double l = std::log2(1.0 / eps);
        if (l <= static_cast<double>(qkd.n)) rep.rate_factor = l / static_cast<double>(qkd.n);
    }
    return rep;
}

} // namespace keysec
