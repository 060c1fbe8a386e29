#pragma once

#include <cstdint>
#include <vector>

#include "keysec/bits.hpp"
#include "keysec/errors.hpp"

namespace keysec {

// Dense distribution over n-bit keys, indexed by key value.
// Invariants: size == 2^n, entries >= 0, sum within `tol` of 1.
class ProbVec {
public:
    static constexpr int kMaxBits = 20;
    static constexpr double kSumTol = 1e-12;

    ProbVec(int n, std::vector<double> p, double tol = kSumTol);

    static ProbVec uniform(int n);
    static ProbVec point_mass(int n, std::uint64_t key);

    int n() const { return n_; }
    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t k) const { return p_[k]; }
    const std::vector<double>& data() const { return p_; }

private:
    int n_;
    std::vector<double> p_;
};

// Conditional distribution of the key given the adversary's observation:
// a finite mixture of key distributions weighted by outcome probability.
struct CpdOutcome {
    double weight;
    ProbVec dist;
};

class Cpd {
public:
    Cpd(int n, std::vector<CpdOutcome> outcomes, double tol = ProbVec::kSumTol);

    // The no-information channel: one outcome carrying the prior.
    static Cpd trivial(ProbVec prior);

    int n() const { return n_; }
    const std::vector<CpdOutcome>& outcomes() const { return outcomes_; }
    std::size_t outcome_count() const { return outcomes_.size(); }

private:
    int n_;
    std::vector<CpdOutcome> outcomes_;
};

// ===== scalar metrics =====

// Shannon entropy in bits; 0 log 0 := 0.
double shannon_entropy(const ProbVec& p);

// Statistical (total variation) distance, (1/2) sum |p - q|.
double stat_distance(const ProbVec& p, const ProbVec& q);
double stat_distance_to_uniform(const ProbVec& p);

// Adversary's best single-guess success probability, max_k p_k.
double guess_prob(const ProbVec& p);
// Argmax key, lowest key on ties.
std::uint64_t mode_key(const ProbVec& p);

// Averages over adversary outcomes: p1 = sum_y w_y max_k p(k|y).
double guess_prob(const Cpd& cpd);

// H_E(K) = sum_y w_y H(p(.|y)), and I_E/n = 1 - H_E(K)/n.
double conditional_entropy(const Cpd& cpd);
double mutual_info_per_bit(const Cpd& cpd);

// ===== marginals and subsets =====

ProbVec subset_marginal(const ProbVec& p, const SubsetMask& mask);
Cpd subset_marginal(const Cpd& cpd, const SubsetMask& mask);

// p1 of the selected subset, i.e. guess_prob of its marginal.
double guess_prob_subset(const ProbVec& p, const SubsetMask& mask);
double guess_prob_subset(const Cpd& cpd, const SubsetMask& mask);

// ===== bit prediction =====

struct BitPrediction {
    int position;       // best bit index
    double success;     // predictor success probability
    double advantage;   // success - 1/2
};

// Best constant-guess predictor of a single bit from its marginal.
BitPrediction bit_marginal_prediction(const ProbVec& p);
// Best predictor of bit `position` given all remaining bits.
double conditional_bit_prediction(const ProbVec& p, int position);
// Pr[parity(key & mask_word) = 0].
double parity_bias(const ProbVec& p, std::uint64_t mask_word);

// ===== privacy amplification maps =====

// Surjective compression of n-bit keys to m-bit keys, m <= n.
// Linear maps act by output bit r = parity(key & rows[r]); table maps list
// the image of every input key. Surjectivity is checked at construction.
class PaMap {
public:
    enum class Kind { Linear, Table };

    static PaMap linear(int in_bits, int out_bits, std::vector<std::uint64_t> rows);
    static PaMap table(int in_bits, int out_bits, std::vector<std::uint64_t> image);

    Kind kind() const { return kind_; }
    int in_bits() const { return in_bits_; }
    int out_bits() const { return out_bits_; }
    std::uint64_t apply(std::uint64_t key) const;

private:
    PaMap(Kind kind, int in_bits, int out_bits, std::vector<std::uint64_t> data);

    Kind kind_;
    int in_bits_;
    int out_bits_;
    std::vector<std::uint64_t> data_; // rows (linear) or image table
};

ProbVec apply_pa(const ProbVec& p, const PaMap& map);
Cpd apply_pa(const Cpd& cpd, const PaMap& map);

} // namespace keysec
