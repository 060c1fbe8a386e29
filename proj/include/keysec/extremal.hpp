#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "keysec/bits.hpp"
#include "keysec/prob.hpp"
#include "keysec/rational.hpp"

namespace keysec {

// Spike distribution: mass p1 on one key, the remainder spread equally over
// the other N-1 keys. Extremal for the guessing-vs-entropy trade-offs.
struct SpikeDist {
    int n;
    Rat p1;
    std::uint64_t spike_key = 0;

    RatVec exact() const;
    ProbVec dist() const;
};

SpikeDist make_spike(int n, const Rat& p1, std::uint64_t spike_key = 0);

// Worst case under I_E/n <= 2^-l: spike with p1 = 2^-l. Requires 0 <= l <= n.
SpikeDist theorem1_dist(int n, int l);

// Worst case under delta_E <= 2^-l: spike with p1 = 2^-l + 2^-n.
// Requires l >= 1 and 2^-l + 2^-n <= 1.
SpikeDist theorem2_dist(int n, int l);

// Deterministic one-bit extension of a uniform n-bit key: the (n+1)-bit key
// (k, f(k)). The extension bit is fully predictable from the rest while the
// per-bit mutual information stays at 1/(n+1).
struct ParityExtension {
    int base_n;
    std::vector<std::uint8_t> table; // f(k) for each of the 2^base_n keys

    static ParityExtension xor_all(int n);
    static ParityExtension constant(int n, int bit);
    static ParityExtension from_table(int n, std::vector<std::uint8_t> table);
};

RatVec theorem3_exact(const ParityExtension& ext);
ProbVec theorem3_dist(const ParityExtension& ext);

// ===== structured worst-case search =====

enum class ConstraintKind { MutualInfoPerBit, StatDistanceToUniform };

struct SearchConfig {
    ConstraintKind constraint = ConstraintKind::StatDistanceToUniform;
    double epsilon = 0.1;      // constraint bound, in (0, 1]
    int n = 4;                 // key bits
    SubsetMask mask;           // objective: p1 of this subset (all bits = whole key)
    int iterations = 16;       // random restarts over subcube patterns
    std::uint64_t seed = 1;
};

struct SearchCertificate {
    ProbVec dist;
    double constraint_value;   // metric of `dist` under the configured criterion
    double objective_value;    // achieved p1 of the masked subset
    // family parameters behind `dist`, for reproducibility
    std::uint64_t pattern;
    double weight;
};

// Maximizes subset guessing probability over a structured family
// (mass `weight` spread over the subcube matching an m-bit pattern, the rest
// uniform) subject to the criterion constraint. Deterministic given seed;
// certificates re-verify under independent metric evaluation.
SearchCertificate subset_leak_search(const SearchConfig& cfg);

} // namespace keysec
