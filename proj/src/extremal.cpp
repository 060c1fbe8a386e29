#include "keysec/extremal.hpp"

#include <algorithm>
#include <cmath>

#include "keysec/errors.hpp"
#include "keysec/random.hpp"

namespace keysec {

RatVec SpikeDist::exact() const {
    const std::size_t size = std::size_t{1} << n;
    Rat tail = (Rat(1) - p1) / Rat(static_cast<unsigned long>(size - 1));
    tail.canonicalize();
    std::vector<Rat> p(size, tail);
    p[spike_key] = p1;
    return RatVec(n, std::move(p));
}

ProbVec SpikeDist::dist() const {
    const std::size_t size = std::size_t{1} << n;
    const double spike = p1.get_d();
    const double tail = (1.0 - spike) / static_cast<double>(size - 1);
    std::vector<double> p(size, tail);
    p[spike_key] = spike;
    return ProbVec(n, std::move(p), 1e-9);
}

SpikeDist make_spike(int n, const Rat& p1, std::uint64_t spike_key) {
    if (n < 1 || n > ProbVec::kMaxBits) throw ValidationError("make_spike: n out of range");
    const std::size_t size = std::size_t{1} << n;
    if (spike_key >= size) throw ValidationError("make_spike: spike key out of range");
    Rat lo(1, static_cast<unsigned long>(size));
    lo.canonicalize();
    if (p1 < lo || p1 > 1)
        throw ValidationError("make_spike: p1 must lie in [1/N, 1]");
    return SpikeDist{n, p1, spike_key};
}

SpikeDist theorem1_dist(int n, int l) {
    if (n < 1 || n > ProbVec::kMaxBits) throw ValidationError("theorem1_dist: n out of range");
    if (l < 0 || l > n)
        throw ValidationError("theorem1_dist: need 2^-l >= 1/N, i.e. 0 <= l <= n");
    return make_spike(n, pow2_rat(l));
}

SpikeDist theorem2_dist(int n, int l) {
    if (n < 1 || n > ProbVec::kMaxBits) throw ValidationError("theorem2_dist: n out of range");
    if (l < 1) throw ValidationError("theorem2_dist: l must be >= 1");
    Rat p1 = pow2_rat(l) + pow2_rat(n);
    if (p1 > 1) throw ValidationError("theorem2_dist: 2^-l + 2^-n exceeds 1");
    return make_spike(n, p1);
}

ParityExtension ParityExtension::xor_all(int n) {
    if (n < 1 || n >= ProbVec::kMaxBits)
        throw ValidationError("ParityExtension: base n out of range");
    std::vector<std::uint8_t> t(std::size_t{1} << n);
    for (std::size_t k = 0; k < t.size(); ++k)
        t[k] = static_cast<std::uint8_t>(parity64(k));
    return ParityExtension{n, std::move(t)};
}

ParityExtension ParityExtension::constant(int n, int bit) {
    if (n < 1 || n >= ProbVec::kMaxBits)
        throw ValidationError("ParityExtension: base n out of range");
    if (bit != 0 && bit != 1) throw ValidationError("ParityExtension: bit must be 0 or 1");
    return ParityExtension{n, std::vector<std::uint8_t>(std::size_t{1} << n,
                                                        static_cast<std::uint8_t>(bit))};
}

ParityExtension ParityExtension::from_table(int n, std::vector<std::uint8_t> table) {
    if (n < 1 || n >= ProbVec::kMaxBits)
        throw ValidationError("ParityExtension: base n out of range");
    if (table.size() != (std::size_t{1} << n))
        throw ValidationError("ParityExtension: table must have 2^n entries");
    for (auto v : table)
        if (v > 1) throw ValidationError("ParityExtension: table entries must be bits");
    return ParityExtension{n, std::move(table)};
}

RatVec theorem3_exact(const ParityExtension& ext) {
    const int n = ext.base_n;
    const std::size_t base = std::size_t{1} << n;
    std::vector<Rat> p(base << 1, Rat(0));
    const Rat mass = pow2_rat(n);
    // Extension bit goes at position n: key' = k | f(k) << n.
    for (std::size_t k = 0; k < base; ++k)
        p[k | (std::size_t{ext.table[k]} << n)] = mass;
    return RatVec(n + 1, std::move(p));
}

ProbVec theorem3_dist(const ParityExtension& ext) {
    return theorem3_exact(ext).to_double();
}

// ===== structured worst-case search =====

namespace {

// Family member: mass `weight` spread uniformly over the subcube whose mask
// bits equal `pattern`, plus (1 - weight) uniform over the whole space.
ProbVec subcube_spike(int n, const SubsetMask& mask, std::uint64_t pattern, double weight) {
    const std::size_t size = std::size_t{1} << n;
    const std::size_t cube = std::size_t{1} << (n - mask.size());
    const double base = (1.0 - weight) / static_cast<double>(size);
    const double bump = weight / static_cast<double>(cube);
    std::vector<double> p(size, base);
    // Walk the subcube by distributing the free (unmasked) bits.
    std::vector<int> free_pos;
    std::uint64_t anchor = 0;
    for (int i = 0, j = 0; i < n; ++i) {
        if (j < mask.size() && mask.positions[static_cast<std::size_t>(j)] == i) {
            anchor |= bit_of(pattern, j) << i;
            ++j;
        } else {
            free_pos.push_back(i);
        }
    }
    for (std::size_t c = 0; c < cube; ++c) {
        std::uint64_t k = anchor;
        for (std::size_t j = 0; j < free_pos.size(); ++j)
            k |= bit_of(c, static_cast<int>(j)) << free_pos[j];
        p[k] += bump;
    }
    return ProbVec(n, std::move(p), 1e-9);
}

double constraint_metric(const ProbVec& d, ConstraintKind kind) {
    if (kind == ConstraintKind::StatDistanceToUniform) return stat_distance_to_uniform(d);
    return mutual_info_per_bit(Cpd::trivial(d));
}

} // namespace

SearchCertificate subset_leak_search(const SearchConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 12)
        throw ValidationError("subset_leak_search: n must be in [1, 12]");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0))
        throw ValidationError("subset_leak_search: epsilon must be in (0, 1]");
    if (cfg.iterations < 1)
        throw ValidationError("subset_leak_search: need at least one restart");
    if (cfg.mask.n != cfg.n)
        throw ValidationError("subset_leak_search: mask does not match n");

    const int m = cfg.mask.size();
    Rng rng(cfg.seed);

    std::optional<SearchCertificate> best;
    for (int it = 0; it < cfg.iterations; ++it) {
        const std::uint64_t pattern =
            (it == 0) ? 0 : rng.next_below(std::uint64_t{1} << m);

        // Both criteria increase monotonically in the subcube weight (the
        // family moves along a ray leaving uniform), so the constraint
        // boundary is found by bisection on [0, 1].
        double lo = 0.0, hi = 1.0;
        if (constraint_metric(subcube_spike(cfg.n, cfg.mask, pattern, 1.0), cfg.constraint)
                <= cfg.epsilon) {
            lo = 1.0;
        } else {
            for (int step = 0; step < 80 && hi - lo > 1e-15; ++step) {
                const double mid = 0.5 * (lo + hi);
                const double v =
                    constraint_metric(subcube_spike(cfg.n, cfg.mask, pattern, mid),
                                      cfg.constraint);
                (v <= cfg.epsilon ? lo : hi) = mid;
            }
        }

        ProbVec dist = subcube_spike(cfg.n, cfg.mask, pattern, lo);
        double cval = constraint_metric(dist, cfg.constraint);
        double weight = lo;
        // Floating error can leave the midpoint marginally over; back off.
        while (cval > cfg.epsilon && weight > 0.0) {
            weight = std::nextafter(weight, 0.0);
            dist = subcube_spike(cfg.n, cfg.mask, pattern, weight);
            cval = constraint_metric(dist, cfg.constraint);
        }

        const double objective = guess_prob_subset(dist, cfg.mask);
        if (!best || objective > best->objective_value)
            best = SearchCertificate{std::move(dist), cval, objective, pattern, weight};
    }
    return *best;
}

} // namespace keysec
