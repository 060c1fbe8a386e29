#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "keysec/bits.hpp"
#include "keysec/prob.hpp"

namespace keysec {

using Rat = mpq_class;

// Exact distribution over n-bit keys. Invariants are exact: entries >= 0
// and sum to 1 with no tolerance. Used to certify constructions whose
// claimed values are exact dyadic rationals.
class RatVec {
public:
    RatVec(int n, std::vector<Rat> p);

    static RatVec uniform(int n);

    int n() const { return n_; }
    std::size_t size() const { return p_.size(); }
    const Rat& operator[](std::size_t k) const { return p_[k]; }
    const std::vector<Rat>& data() const { return p_; }

    ProbVec to_double() const;

private:
    int n_;
    std::vector<Rat> p_;
};

Rat rat_guess_prob(const RatVec& p);
Rat rat_stat_distance(const RatVec& p, const RatVec& q);
Rat rat_stat_distance_to_uniform(const RatVec& p);
RatVec rat_subset_marginal(const RatVec& p, const SubsetMask& mask);
Rat rat_guess_prob_subset(const RatVec& p, const SubsetMask& mask);
Rat rat_conditional_bit_prediction(const RatVec& p, int position);

// Exact entropy as a rational, available exactly when every nonzero entry
// is a power of two (entropy is then sum a_i 2^-a_i); nullopt otherwise.
std::optional<Rat> dyadic_entropy(const RatVec& p);

enum class Order { Less, Equal, Greater };

// Exact three-way comparison of H(p) against a rational threshold u/v.
// With p_i = c_i / D over a common denominator D, the comparison
//     H(p) <=> u/v
// is equivalent to the integer comparison
//     D^(v D)  <=>  2^(u D) * prod_i c_i^(v c_i),
// which is decided with bignum arithmetic and no rounding. Throws
// SizeGuardError if the integers would exceed ~10^8 bits.
Order entropy_compare(const RatVec& p, const Rat& threshold);

// Exact test of I_E/n <= bound for the single-outcome channel with key
// distribution p, using H(p) >= n (1 - bound).
bool mutual_info_per_bit_le(const RatVec& p, const Rat& bound);

// 2^-e as an exact rational, e >= 0.
Rat pow2_rat(int e);

} // namespace keysec
