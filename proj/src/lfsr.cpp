#include "keysec/lfsr.hpp"

#include <algorithm>
#include <cmath>

#include "keysec/errors.hpp"

namespace keysec {

namespace {

constexpr int kMaxWidth = 16;

std::uint64_t step(const LfsrSpec& spec, std::uint64_t state) {
    const std::uint64_t fb = static_cast<std::uint64_t>(parity64(state & spec.taps));
    return (state >> 1) | (fb << (spec.width - 1));
}

} // namespace

LfsrSpec::LfsrSpec(int width_, std::uint64_t taps_) : width(width_), taps(taps_) {
    if (width < 2 || width > kMaxWidth)
        throw ValidationError("LfsrSpec: width must be in [2, 16]");
    if ((taps >> width) != 0)
        throw ValidationError("LfsrSpec: taps has bits above the width");
    if (!(taps & 1))
        throw ValidationError("LfsrSpec: constant term c_0 must be 1 (invertible register)");
}

std::uint64_t lfsr_period(const LfsrSpec& spec) {
    std::uint64_t state = 1, period = 0;
    do {
        state = step(spec, state);
        ++period;
    } while (state != 1);
    return period;
}

bool is_primitive(const LfsrSpec& spec) {
    return lfsr_period(spec) == (std::uint64_t{1} << spec.width) - 1;
}

std::vector<std::uint64_t> primitive_taps(int width) {
    if (width < 2 || width > kMaxWidth)
        throw ValidationError("primitive_taps: width must be in [2, 16]");
    std::vector<std::uint64_t> out;
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << width); t += 2)
        if (is_primitive(LfsrSpec(width, t))) out.push_back(t);
    return out;
}

Keystream generate_keystream(const LfsrSpec& spec, std::uint64_t seed, int len) {
    if (seed == 0) throw ValidationError("generate_keystream: zero seed (degenerate stream)");
    if ((seed >> spec.width) != 0)
        throw ValidationError("generate_keystream: seed wider than the register");
    if (len < 1) throw ValidationError("generate_keystream: len must be >= 1");
    Keystream ks{spec, seed, {}};
    ks.bits.reserve(static_cast<std::size_t>(len));
    std::uint64_t state = seed;
    for (int t = 0; t < len; ++t) {
        ks.bits.push_back(static_cast<std::uint8_t>(state & 1));
        state = step(spec, state);
    }
    return ks;
}

KeystreamDist::KeystreamDist(int len, SeedPrior prior, std::uint64_t total,
                             std::map<std::uint64_t, std::uint64_t> counts)
    : len_(len), prior_(prior), total_(total), counts_(std::move(counts)) {
    if (len_ < 1 || len_ > 60) throw ValidationError("KeystreamDist: len out of range");
    std::uint64_t sum = 0;
    for (const auto& [value, count] : counts_) {
        if (len_ < 64 && (value >> len_) != 0)
            throw ValidationError("KeystreamDist: value wider than len");
        sum += count;
    }
    if (sum != total_) throw ValidationError("KeystreamDist: counts do not sum to total");
}

Rat KeystreamDist::p1_exact() const {
    std::uint64_t best = 0;
    for (const auto& [value, count] : counts_) best = std::max(best, count);
    Rat r(static_cast<unsigned long>(best), static_cast<unsigned long>(total_));
    r.canonicalize();
    return r;
}

double KeystreamDist::entropy() const {
    // H = log2(T) - (1/T) sum c log2 c over the seed counts.
    const double T = static_cast<double>(total_);
    double s = 0.0;
    for (const auto& [value, count] : counts_)
        if (count > 1) s += static_cast<double>(count) * std::log2(static_cast<double>(count));
    return std::log2(T) - s / T;
}

double KeystreamDist::stat_distance_to_uniform() const {
    const double u = std::ldexp(1.0, -len_); // 1 / 2^len
    double s = 0.0;
    for (const auto& [value, count] : counts_)
        s += std::fabs(static_cast<double>(count) / static_cast<double>(total_) - u);
    const double absent = std::ldexp(1.0, len_) - static_cast<double>(counts_.size());
    return 0.5 * (s + absent * u);
}

ProbVec KeystreamDist::to_probvec() const {
    if (len_ > ProbVec::kMaxBits)
        throw SizeGuardError("KeystreamDist: window too wide for a dense view");
    std::vector<double> p(std::size_t{1} << len_, 0.0);
    for (const auto& [value, count] : counts_)
        p[value] = static_cast<double>(count) / static_cast<double>(total_);
    return ProbVec(len_, std::move(p), 1e-9);
}

KeystreamDist keystream_distribution(const LfsrSpec& spec, int len, SeedPrior prior,
                                     int offset) {
    if (len < 1 || len > 60) throw ValidationError("keystream_distribution: bad len");
    if (offset < 0) throw ValidationError("keystream_distribution: bad offset");

    std::map<std::uint64_t, std::uint64_t> counts;
    const std::uint64_t seeds = std::uint64_t{1} << spec.width;
    const std::uint64_t first = (prior == SeedPrior::ExcludeZero) ? 1 : 0;
    for (std::uint64_t seed = first; seed < seeds; ++seed) {
        std::uint64_t state = seed;
        for (int t = 0; t < offset; ++t) state = step(spec, state);
        std::uint64_t value = 0;
        for (int t = 0; t < len; ++t) {
            value |= (state & 1) << t;
            state = step(spec, state);
        }
        ++counts[value];
    }
    return KeystreamDist(len, prior, seeds - first, std::move(counts));
}

// ===== known-plaintext attack =====

KpaInstance::KpaInstance(std::vector<int> positions_, std::vector<int> bits_)
    : positions(std::move(positions_)), bits(std::move(bits_)) {
    if (positions.size() != bits.size())
        throw ValidationError("KpaInstance: positions/bits size mismatch");
    std::vector<int> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("KpaInstance: duplicate positions");
    for (int p : positions)
        if (p < 0 || p > 4096) throw ValidationError("KpaInstance: position out of range");
    for (int b : bits)
        if (b != 0 && b != 1) throw ValidationError("KpaInstance: bits must be 0/1");
}

std::vector<std::uint64_t> keystream_rows(const LfsrSpec& spec,
                                          const std::vector<int>& positions) {
    int horizon = 0;
    for (int p : positions) horizon = std::max(horizon, p + 1);

    // Symbolic simulation: state[i] is the GF(2) functional of the seed that
    // currently sits in register cell i; output row at time t is cell 0.
    std::vector<std::uint64_t> cell(static_cast<std::size_t>(spec.width));
    for (int i = 0; i < spec.width; ++i) cell[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;

    std::vector<std::uint64_t> out_row(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t) {
        out_row[static_cast<std::size_t>(t)] = cell[0];
        std::uint64_t fb = 0;
        for (int i = 0; i < spec.width; ++i)
            if (bit_of(spec.taps, i)) fb ^= cell[static_cast<std::size_t>(i)];
        for (int i = 0; i + 1 < spec.width; ++i)
            cell[static_cast<std::size_t>(i)] = cell[static_cast<std::size_t>(i + 1)];
        cell[static_cast<std::size_t>(spec.width - 1)] = fb;
    }

    std::vector<std::uint64_t> rows;
    rows.reserve(positions.size());
    for (int p : positions) rows.push_back(out_row[static_cast<std::size_t>(p)]);
    return rows;
}

KpaResult kpa_recover_seed(const LfsrSpec& spec, const KpaInstance& kpa, SeedPrior prior) {
    const auto rows = keystream_rows(spec, kpa.positions);
    KpaResult res;
    res.solution = gf2_solve(rows, kpa.bits, spec.width);
    if (res.solution.consistent) {
        res.seeds = gf2_enumerate(res.solution);
        if (prior == SeedPrior::ExcludeZero)
            std::erase(res.seeds, std::uint64_t{0});
        std::sort(res.seeds.begin(), res.seeds.end());
    }
    return res;
}

// ===== entropy ceiling =====

ShannonLimitReport shannon_limit_check(const LfsrSpec& spec, int len, SeedPrior prior) {
    if (len < 1 || len > 1 << 20) throw ValidationError("shannon_limit_check: bad len");
    // Windows at least `width` long already separate every seed, so the
    // entropy of longer windows is unchanged; enumerate a window that fits
    // the sparse representation (width <= 16 < 60 keeps this exact).
    const auto dist = keystream_distribution(spec, std::min(len, 60), prior);
    ShannonLimitReport rep;
    rep.width = spec.width;
    rep.len = len;
    rep.entropy = dist.entropy();
    rep.within_limit = rep.entropy <= static_cast<double>(spec.width) + 1e-9;
    rep.ie_per_bit = 1.0 - rep.entropy / static_cast<double>(len);
    rep.ie_lower_bound = 1.0 - static_cast<double>(spec.width) / static_cast<double>(len);
    return rep;
}

} // namespace keysec
