#include "keysec/rational.hpp"

#include <cmath>

#include "keysec/errors.hpp"

namespace keysec {

RatVec::RatVec(int n, std::vector<Rat> p) : n_(n), p_(std::move(p)) {
    if (n_ < 1 || n_ > ProbVec::kMaxBits)
        throw ValidationError("RatVec: n out of range");
    if (p_.size() != (std::size_t{1} << n_))
        throw ValidationError("RatVec: expected 2^n entries");
    Rat sum = 0;
    for (auto& v : p_) {
        v.canonicalize();
        if (sgn(v) < 0) throw ValidationError("RatVec: entries must be >= 0");
        sum += v;
    }
    if (sum != 1) throw ValidationError("RatVec: entries must sum to exactly 1");
}

RatVec RatVec::uniform(int n) {
    if (n < 1 || n > ProbVec::kMaxBits) throw ValidationError("RatVec::uniform: bad n");
    const std::size_t size = std::size_t{1} << n;
    Rat u(1, static_cast<unsigned long>(size));
    u.canonicalize();
    return RatVec(n, std::vector<Rat>(size, u));
}

ProbVec RatVec::to_double() const {
    std::vector<double> out(p_.size());
    for (std::size_t k = 0; k < p_.size(); ++k) out[k] = p_[k].get_d();
    return ProbVec(n_, std::move(out), 1e-9);
}

Rat rat_guess_prob(const RatVec& p) {
    Rat best = p[0];
    for (std::size_t k = 1; k < p.size(); ++k)
        if (p[k] > best) best = p[k];
    return best;
}

Rat rat_stat_distance(const RatVec& p, const RatVec& q) {
    if (p.n() != q.n()) throw ValidationError("rat_stat_distance: dimension mismatch");
    Rat s = 0;
    for (std::size_t k = 0; k < p.size(); ++k) s += abs(p[k] - q[k]);
    return s / 2;
}

Rat rat_stat_distance_to_uniform(const RatVec& p) {
    return rat_stat_distance(p, RatVec::uniform(p.n()));
}

RatVec rat_subset_marginal(const RatVec& p, const SubsetMask& mask) {
    if (mask.n != p.n()) throw ValidationError("rat_subset_marginal: mask mismatch");
    std::vector<Rat> out(std::size_t{1} << mask.size(), Rat(0));
    for (std::size_t k = 0; k < p.size(); ++k) out[mask.extract(k)] += p[k];
    return RatVec(mask.size(), std::move(out));
}

Rat rat_guess_prob_subset(const RatVec& p, const SubsetMask& mask) {
    return rat_guess_prob(rat_subset_marginal(p, mask));
}

Rat rat_conditional_bit_prediction(const RatVec& p, int position) {
    if (position < 0 || position >= p.n())
        throw ValidationError("rat_conditional_bit_prediction: position out of range");
    const std::uint64_t bit = std::uint64_t{1} << position;
    Rat success = 0;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!(k & bit)) success += std::max(p[k], p[k | bit]);
    return success;
}

std::optional<Rat> dyadic_entropy(const RatVec& p) {
    Rat h = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const Rat& v = p[k];
        if (sgn(v) == 0) continue;
        // Need v = 2^-a: numerator 1, denominator a power of two.
        if (v.get_num() != 1) return std::nullopt;
        const mpz_class& den = v.get_den();
        if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
        const auto a = mpz_sizeinbase(den.get_mpz_t(), 2) - 1; // den = 2^a
        h += Rat(static_cast<unsigned long>(a)) * v;
    }
    return h;
}

namespace {

// Shifts the bit-size budget check out of the hot loop.
void check_bits(double bits) {
    if (bits > 1e8)
        throw SizeGuardError("entropy_compare: exact comparison would exceed 10^8 bits");
}

} // namespace

Order entropy_compare(const RatVec& p, const Rat& threshold) {
    // Common denominator D and integer numerators c_k = p_k * D.
    mpz_class D = 1;
    for (std::size_t k = 0; k < p.size(); ++k)
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), p[k].get_den().get_mpz_t());

    std::vector<mpz_class> c(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        Rat scaled = p[k] * Rat(D);
        scaled.canonicalize();
        c[k] = scaled.get_num(); // denominator is 1 by construction
    }

    Rat th = threshold;
    th.canonicalize();
    const mpz_class u = th.get_num();
    const mpz_class v = th.get_den();

    // Exponents must fit in unsigned long for mpz_pow_ui.
    mpz_class vD = v * D;
    mpz_class uD = abs(u) * D;
    if (!vD.fits_ulong_p() || !uD.fits_ulong_p())
        throw SizeGuardError("entropy_compare: exponent too large for exact comparison");

    const double log2D = std::log2(std::max(2.0, D.get_d()));
    check_bits(vD.get_d() * log2D);

    // lhs = D^(v D); rhs = 2^(u D) * prod c_k^(v c_k), with a negative u
    // moved onto the lhs so every exponent stays nonnegative.
    mpz_class lhs, rhs = 1;
    mpz_pow_ui(lhs.get_mpz_t(), D.get_mpz_t(), vD.get_ui());
    if (sgn(u) >= 0)
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), uD.get_ui());
    else
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), uD.get_ui());

    double rhs_bits = uD.get_d();
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (c[k] <= 1) continue; // 0 log 0 = 0 and 1^e = 1
        mpz_class e = v * c[k];
        if (!e.fits_ulong_p())
            throw SizeGuardError("entropy_compare: exponent too large for exact comparison");
        rhs_bits += e.get_d() * std::log2(c[k].get_d());
        check_bits(rhs_bits);
        mpz_class term;
        mpz_pow_ui(term.get_mpz_t(), c[k].get_mpz_t(), e.get_ui());
        rhs *= term;
    }

    const int c3 = cmp(lhs, rhs); // both positive
    if (c3 < 0) return Order::Less;
    if (c3 > 0) return Order::Greater;
    return Order::Equal;
}

bool mutual_info_per_bit_le(const RatVec& p, const Rat& bound) {
    // I/n <= b  <=>  H(p) >= n (1 - b) for the single-outcome channel.
    Rat th = Rat(p.n()) * (Rat(1) - bound);
    th.canonicalize();
    return entropy_compare(p, th) != Order::Less;
}

Rat pow2_rat(int e) {
    if (e < 0) throw ValidationError("pow2_rat: exponent must be >= 0");
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e));
    Rat r(mpz_class(1), den);
    r.canonicalize();
    return r;
}

} // namespace keysec
