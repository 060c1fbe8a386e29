#include "keysec/prob.hpp"

#include <algorithm>
#include <cmath>

#include "keysec/gf2.hpp"

namespace keysec {

ProbVec::ProbVec(int n, std::vector<double> p, double tol) : n_(n), p_(std::move(p)) {
    if (n_ < 1 || n_ > kMaxBits)
        throw ValidationError("ProbVec: n must be in [1, " + std::to_string(kMaxBits) + "]");
    if (p_.size() != (std::size_t{1} << n_))
        throw ValidationError("ProbVec: expected 2^n entries");
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0)) // catches negatives and NaN
            throw ValidationError("ProbVec: entries must be >= 0");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > tol)
        throw ValidationError("ProbVec: entries must sum to 1 (off by " +
                              std::to_string(sum - 1.0) + ")");
}

ProbVec ProbVec::uniform(int n) {
    if (n < 1 || n > kMaxBits) throw ValidationError("ProbVec::uniform: bad n");
    const std::size_t size = std::size_t{1} << n;
    return ProbVec(n, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

ProbVec ProbVec::point_mass(int n, std::uint64_t key) {
    if (n < 1 || n > kMaxBits) throw ValidationError("ProbVec::point_mass: bad n");
    const std::size_t size = std::size_t{1} << n;
    if (key >= size) throw ValidationError("ProbVec::point_mass: key out of range");
    std::vector<double> p(size, 0.0);
    p[key] = 1.0;
    return ProbVec(n, std::move(p));
}

Cpd::Cpd(int n, std::vector<CpdOutcome> outcomes, double tol)
    : n_(n), outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) throw ValidationError("Cpd: need at least one outcome");
    double wsum = 0.0;
    for (const auto& o : outcomes_) {
        if (!(o.weight >= 0.0)) throw ValidationError("Cpd: weights must be >= 0");
        if (o.dist.n() != n_) throw ValidationError("Cpd: outcome dimension mismatch");
        wsum += o.weight;
    }
    if (std::fabs(wsum - 1.0) > tol)
        throw ValidationError("Cpd: weights must sum to 1");
}

Cpd Cpd::trivial(ProbVec prior) {
    const int n = prior.n();
    std::vector<CpdOutcome> outcomes;
    outcomes.push_back({1.0, std::move(prior)});
    return Cpd(n, std::move(outcomes));
}

// ===== scalar metrics =====

double shannon_entropy(const ProbVec& p) {
    double h = 0.0;
    for (double v : p.data())
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

double stat_distance(const ProbVec& p, const ProbVec& q) {
    if (p.n() != q.n()) throw ValidationError("stat_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += std::fabs(p[k] - q[k]);
    return 0.5 * s;
}

double stat_distance_to_uniform(const ProbVec& p) {
    const double u = 1.0 / static_cast<double>(p.size());
    double s = 0.0;
    for (double v : p.data()) s += std::fabs(v - u);
    return 0.5 * s;
}

double guess_prob(const ProbVec& p) {
    return *std::max_element(p.data().begin(), p.data().end());
}

std::uint64_t mode_key(const ProbVec& p) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < p.size(); ++k)
        if (p[k] > p[best]) best = k;
    return best;
}

double guess_prob(const Cpd& cpd) {
    double s = 0.0;
    for (const auto& o : cpd.outcomes()) s += o.weight * guess_prob(o.dist);
    return s;
}

double conditional_entropy(const Cpd& cpd) {
    double h = 0.0;
    for (const auto& o : cpd.outcomes()) h += o.weight * shannon_entropy(o.dist);
    return h;
}

double mutual_info_per_bit(const Cpd& cpd) {
    const double n = static_cast<double>(cpd.n());
    return (n - conditional_entropy(cpd)) / n;
}

// ===== marginals and subsets =====

ProbVec subset_marginal(const ProbVec& p, const SubsetMask& mask) {
    if (mask.n != p.n()) throw ValidationError("subset_marginal: mask dimension mismatch");
    std::vector<double> out(std::size_t{1} << mask.size(), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) out[mask.extract(k)] += p[k];
    return ProbVec(mask.size(), std::move(out), 1e-9);
}

Cpd subset_marginal(const Cpd& cpd, const SubsetMask& mask) {
    std::vector<CpdOutcome> outcomes;
    outcomes.reserve(cpd.outcome_count());
    for (const auto& o : cpd.outcomes())
        outcomes.push_back({o.weight, subset_marginal(o.dist, mask)});
    return Cpd(mask.size(), std::move(outcomes), 1e-9);
}

double guess_prob_subset(const ProbVec& p, const SubsetMask& mask) {
    return guess_prob(subset_marginal(p, mask));
}

double guess_prob_subset(const Cpd& cpd, const SubsetMask& mask) {
    return guess_prob(subset_marginal(cpd, mask));
}

// ===== bit prediction =====

BitPrediction bit_marginal_prediction(const ProbVec& p) {
    BitPrediction best{0, 0.0, 0.0};
    for (int i = 0; i < p.n(); ++i) {
        double q1 = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (bit_of(k, i)) q1 += p[k];
        const double success = std::max(q1, 1.0 - q1);
        if (success > best.success) best = {i, success, success - 0.5};
    }
    return best;
}

double conditional_bit_prediction(const ProbVec& p, int position) {
    if (position < 0 || position >= p.n())
        throw ValidationError("conditional_bit_prediction: position out of range");
    const std::uint64_t bit = std::uint64_t{1} << position;
    double success = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!(k & bit)) success += std::max(p[k], p[k | bit]);
    return success;
}

double parity_bias(const ProbVec& p, std::uint64_t mask_word) {
    double even = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (parity64(k & mask_word) == 0) even += p[k];
    return even;
}

// ===== privacy amplification maps =====

PaMap::PaMap(Kind kind, int in_bits, int out_bits, std::vector<std::uint64_t> data)
    : kind_(kind), in_bits_(in_bits), out_bits_(out_bits), data_(std::move(data)) {}

PaMap PaMap::linear(int in_bits, int out_bits, std::vector<std::uint64_t> rows) {
    if (in_bits < 1 || in_bits > ProbVec::kMaxBits || out_bits < 1 || out_bits > in_bits)
        throw ValidationError("PaMap::linear: need 1 <= out_bits <= in_bits");
    if (rows.size() != static_cast<std::size_t>(out_bits))
        throw ValidationError("PaMap::linear: expected one row per output bit");
    for (std::uint64_t r : rows)
        if ((r >> in_bits) != 0)
            throw ValidationError("PaMap::linear: row has bits above in_bits");
    if (gf2_rank(rows, in_bits) != out_bits)
        throw ValidationError("PaMap::linear: map is not surjective (rows dependent)");
    return PaMap(Kind::Linear, in_bits, out_bits, std::move(rows));
}

PaMap PaMap::table(int in_bits, int out_bits, std::vector<std::uint64_t> image) {
    if (in_bits < 1 || in_bits > ProbVec::kMaxBits || out_bits < 1 || out_bits > in_bits)
        throw ValidationError("PaMap::table: need 1 <= out_bits <= in_bits");
    if (image.size() != (std::size_t{1} << in_bits))
        throw ValidationError("PaMap::table: expected 2^in_bits entries");
    std::vector<bool> hit(std::size_t{1} << out_bits, false);
    for (std::uint64_t v : image) {
        if (v >= hit.size()) throw ValidationError("PaMap::table: image value out of range");
        hit[v] = true;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
        throw ValidationError("PaMap::table: map is not surjective");
    return PaMap(Kind::Table, in_bits, out_bits, std::move(image));
}

std::uint64_t PaMap::apply(std::uint64_t key) const {
    if (kind_ == Kind::Table) return data_[key];
    std::uint64_t out = 0;
    for (int r = 0; r < out_bits_; ++r)
        out |= static_cast<std::uint64_t>(parity64(key & data_[static_cast<std::size_t>(r)])) << r;
    return out;
}

ProbVec apply_pa(const ProbVec& p, const PaMap& map) {
    if (map.in_bits() != p.n()) throw ValidationError("apply_pa: dimension mismatch");
    std::vector<double> out(std::size_t{1} << map.out_bits(), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) out[map.apply(k)] += p[k];
    return ProbVec(map.out_bits(), std::move(out), 1e-9);
}

Cpd apply_pa(const Cpd& cpd, const PaMap& map) {
    std::vector<CpdOutcome> outcomes;
    outcomes.reserve(cpd.outcome_count());
    for (const auto& o : cpd.outcomes())
        outcomes.push_back({o.weight, apply_pa(o.dist, map)});
    return Cpd(map.out_bits(), std::move(outcomes), 1e-9);
}

} // namespace keysec
