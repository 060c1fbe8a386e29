#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "keysec/gf2.hpp"
#include "keysec/prob.hpp"
#include "keysec/rational.hpp"

namespace keysec {

// Fibonacci LFSR over GF(2). State holds the next `width` output bits,
// the output is the low state bit, and the new top bit is the parity of
// (state & taps). Bit i of `taps` is the coefficient c_i of the feedback
// polynomial x^width + c_{width-1} x^{width-1} + ... + c_1 x + c_0;
// c_0 = 1 (bit 0 of taps set) keeps the register invertible.
struct LfsrSpec {
    int width = 0;
    std::uint64_t taps = 0;

    LfsrSpec() = default;
    LfsrSpec(int width_, std::uint64_t taps_);
};

// Least period of the all-states walk from state 1; primitive feedback
// polynomials reach the full 2^width - 1.
std::uint64_t lfsr_period(const LfsrSpec& spec);
bool is_primitive(const LfsrSpec& spec);

// All primitive tap masks of the given width, ascending.
std::vector<std::uint64_t> primitive_taps(int width);

struct Keystream {
    LfsrSpec spec;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> bits;
};

// First `len` output bits from a nonzero seed; the seed equals the first
// `width` output bits by the state convention above.
Keystream generate_keystream(const LfsrSpec& spec, std::uint64_t seed, int len);

enum class SeedPrior {
    ExcludeZero, // uniform over the 2^width - 1 nonzero seeds (max-length convention)
    IncludeZero  // uniform over all 2^width seeds (idealized count)
};

// Exact distribution of a window of keystream bits under a uniform seed,
// kept sparse as value -> seed count (windows longer than the width hit at
// most 2^width - 1 distinct values).
class KeystreamDist {
public:
    KeystreamDist(int len, SeedPrior prior, std::uint64_t total,
                  std::map<std::uint64_t, std::uint64_t> counts);

    int len() const { return len_; }
    SeedPrior prior() const { return prior_; }
    std::uint64_t total() const { return total_; }
    const std::map<std::uint64_t, std::uint64_t>& counts() const { return counts_; }

    Rat p1_exact() const;
    double p1() const { return p1_exact().get_d(); }
    double entropy() const;
    double stat_distance_to_uniform() const;
    std::size_t support_size() const { return counts_.size(); }

    // Dense view; only for windows within ProbVec range.
    ProbVec to_probvec() const;

private:
    int len_;
    SeedPrior prior_;
    std::uint64_t total_;
    std::map<std::uint64_t, std::uint64_t> counts_;
};

// Distribution of keystream bits [offset, offset + len) by exhaustive seed
// enumeration; width <= 16 guard.
KeystreamDist keystream_distribution(const LfsrSpec& spec, int len,
                                     SeedPrior prior = SeedPrior::ExcludeZero,
                                     int offset = 0);

// ===== known-plaintext attack =====

struct KpaInstance {
    std::vector<int> positions; // distinct indices into the keystream
    std::vector<int> bits;      // values at those positions

    KpaInstance() = default;
    KpaInstance(std::vector<int> positions_, std::vector<int> bits_);
};

// Row r of the linear map seed -> keystream: bit t of the keystream is
// parity(seed & row_t).
std::vector<std::uint64_t> keystream_rows(const LfsrSpec& spec, const std::vector<int>& positions);

struct KpaResult {
    Gf2Solution solution;           // over the seed space, zero seed included
    std::vector<std::uint64_t> seeds; // enumerated, zero dropped under ExcludeZero
};

KpaResult kpa_recover_seed(const LfsrSpec& spec, const KpaInstance& kpa,
                           SeedPrior prior = SeedPrior::ExcludeZero);

// ===== entropy ceiling =====

struct ShannonLimitReport {
    int width;
    int len;
    double entropy;            // H of the window distribution
    bool within_limit;         // entropy <= width
    double ie_per_bit;         // 1 - H/len for the single-outcome channel
    double ie_lower_bound;     // 1 - width/len
};

ShannonLimitReport shannon_limit_check(const LfsrSpec& spec, int len,
                                       SeedPrior prior = SeedPrior::ExcludeZero);

} // namespace keysec
