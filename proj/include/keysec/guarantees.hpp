#pragma once

#include <string>
#include <vector>

namespace keysec {

enum class CriterionKind { P1, IePerBit, DeltaE };

std::string to_string(CriterionKind kind);
CriterionKind criterion_from_string(const std::string& s);

// A security criterion as stated: kind, bound, key length, and whether the
// adversary holds quantum memory into the usage phase.
struct CriterionSpec {
    CriterionKind kind = CriterionKind::IePerBit;
    double epsilon = 0.0; // in [0, 1]; 0 expresses the perfect-key boundary
    int n = 1;
    bool quantum_memory = false;
};

CriterionSpec make_criterion(CriterionKind kind, double epsilon, int n, bool quantum_memory);

// ===== average-to-individual translation =====

// From an averaged bound E[X] <= eps_total (X >= 0), Markov gives
// Pr[X >= sqrt(eps_total)] <= sqrt(eps_total): the per-instance bound holds
// with confidence 1 - sqrt(eps_total), halving the exponent.
struct MarkovBound {
    double avg_bound;
    double per_instance; // sqrt(avg_bound)
    double confidence;   // 1 - sqrt(avg_bound)
};

MarkovBound markov_individualize(double eps_total);

// ===== subset guessing bound =====

// p1 of any m-bit subset is at most eps + 2^-m when delta_E <= eps.
struct SubsetBound {
    double epsilon;
    int m;
    double bound;   // min(1, eps + 2^-m)
    bool vacuous;   // eps + 2^-m >= 1
};

SubsetBound delta_subset_bound(double eps, int m);

// ===== report generation =====

struct ReportRow {
    std::string scenario;     // raw-security / composition cell name
    std::string formula;      // column entry as printed
    std::string instantiated; // entry with the criterion's numbers substituted
    bool has_value;
    double value;
    std::string provenance;   // "computed" | "paper-reported"
    std::string caveat;
};

struct GuaranteeReport {
    CriterionSpec spec;
    std::vector<ReportRow> rows;
};

// Operational-guarantee rows for the criterion: what the bound buys on the
// whole key and on bit subsets before use (raw), and the fraction of the key
// a partial-leak attack can expose during use (composition), split by the
// quantum-memory flag. Entries this toolkit can attain or verify carry
// provenance "computed"; figures imported from the literature stay
// "paper-reported", including the open composition cell under delta_E with
// quantum memory, which is preserved as unknown.
GuaranteeReport table1_report(const CriterionSpec& spec);

// ===== conventional-cipher benchmark =====

// Rate left after compressing n raw bits to l = log2(1/eps) bits.
double pa_adjusted_rate(double rate, double l, double n);

struct BenchmarkRow {
    std::string quantity;
    std::string conventional;
    bool conventional_has_value;
    double conventional_value;
    std::string qkd;
    bool qkd_has_value;
    double qkd_value;
    std::string provenance;
};

struct BenchmarkReport {
    CriterionSpec qkd;
    int width;
    std::vector<BenchmarkRow> rows;
    double rate_factor; // l/n with l = log2(1/eps)
};

// Side-by-side guarantees: a width-bit-seed stream cipher versus the
// criterion-implied figures, including the known-plaintext collapse column.
BenchmarkReport benchmark_vs_conventional(const CriterionSpec& qkd, int width);

} // namespace keysec
