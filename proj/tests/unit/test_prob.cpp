#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "keysec/prob.hpp"
#include "keysec/random.hpp"
#include "oracles.hpp"

using namespace keysec;

namespace {

bool near(double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

ProbVec random_dist(Rng& rng, int n) {
    return ProbVec(n, oracles::sample_simplex(rng, std::size_t{1} << n), 1e-9);
}

// Spike: one key at p1, the rest sharing 1 - p1 evenly.
ProbVec spike(int n, std::uint64_t key, double p1) {
    std::size_t size = std::size_t{1} << n;
    std::vector<double> p(size, (1.0 - p1) / static_cast<double>(size - 1));
    p[key] = p1;
    return ProbVec(n, std::move(p));
}

} // namespace

TEST_SUITE("probcore") {

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(ProbVec(0, {1.0}), ValidationError);
    CHECK_THROWS_AS(ProbVec(2, {1.0, 0.0}), ValidationError);         // wrong size
    CHECK_THROWS_AS(ProbVec(1, {1.5, -0.5}), ValidationError);        // negative entry
    CHECK_THROWS_AS(ProbVec(1, {0.6, 0.6}), ValidationError);         // sum != 1
    CHECK_THROWS_AS(ProbVec::point_mass(2, 4), ValidationError);      // key out of range
    CHECK_NOTHROW(ProbVec(1, {0.25, 0.75}));

    ProbVec u = ProbVec::uniform(3);
    CHECK(u.size() == 8);
    for (std::size_t k = 0; k < 8; ++k) CHECK(u[k] == 0.125);

    ProbVec pm = ProbVec::point_mass(3, 5);
    CHECK(pm[5] == 1.0);
    CHECK(guess_prob(pm) == 1.0);
    CHECK(mode_key(pm) == 5);
}

TEST_CASE("entropy closed forms") {
    CHECK(shannon_entropy(ProbVec::uniform(1)) == 1.0);
    CHECK(shannon_entropy(ProbVec::uniform(8)) == 8.0);
    CHECK(shannon_entropy(ProbVec::point_mass(4, 9)) == 0.0);
    // 0 log 0 contributes nothing.
    CHECK(shannon_entropy(ProbVec(2, {0.5, 0.25, 0.25, 0.0})) == 1.5);
}

TEST_CASE("entropy matches direct summation on random distributions") {
    Rng rng(11);
    for (int n : {1, 4, 8}) {
        for (int rep = 0; rep < 20; ++rep) {
            ProbVec p = random_dist(rng, n);
            CHECK(near(shannon_entropy(p), oracles::direct_entropy(p.data()), 1e-11));
        }
    }
}

TEST_CASE("statistical distance basics") {
    ProbVec a = ProbVec::point_mass(2, 0);
    ProbVec b = ProbVec::point_mass(2, 3);
    CHECK(stat_distance(a, a) == 0.0);
    CHECK(stat_distance(a, b) == 1.0);
    CHECK(stat_distance(a, b) == stat_distance(b, a));
    CHECK_THROWS_AS(stat_distance(a, ProbVec::uniform(3)), ValidationError);

    // Spike at p1 sits exactly p1 - 1/N from uniform.
    for (double p1 : {0.2, 0.5, 0.99}) {
        ProbVec s = spike(3, 2, p1);
        CHECK(near(stat_distance_to_uniform(s), p1 - 0.125));
        CHECK(near(stat_distance(s, ProbVec::uniform(3)), p1 - 0.125));
    }
}

TEST_CASE("statistical distance matches oracle and obeys triangle inequality") {
    Rng rng(12);
    for (int rep = 0; rep < 25; ++rep) {
        ProbVec p = random_dist(rng, 5);
        ProbVec q = random_dist(rng, 5);
        ProbVec r = random_dist(rng, 5);
        double dpq = stat_distance(p, q);
        CHECK(near(dpq, oracles::direct_stat_distance(p.data(), q.data()), 1e-12));
        CHECK(near(stat_distance_to_uniform(p),
                   oracles::direct_distance_to_uniform(p.data()), 1e-12));
        CHECK(dpq <= stat_distance(p, r) + stat_distance(r, q) + 1e-12);
        CHECK(dpq >= 0.0);
        CHECK(dpq <= 1.0);
    }
}

TEST_CASE("guessing probability and mode") {
    ProbVec p(2, {0.1, 0.4, 0.4, 0.1});
    CHECK(guess_prob(p) == 0.4);
    CHECK(mode_key(p) == 1); // lowest index wins ties

    Rng rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        ProbVec q = random_dist(rng, 6);
        CHECK(guess_prob(q) == oracles::direct_max(q.data()));
        CHECK(q[mode_key(q)] == guess_prob(q));
    }
}

TEST_CASE("conditional distributions average their outcomes") {
    ProbVec prior(2, {0.3, 0.3, 0.2, 0.2});
    Cpd triv = Cpd::trivial(prior);
    CHECK(triv.outcome_count() == 1);
    CHECK(near(guess_prob(triv), guess_prob(prior)));
    CHECK(near(conditional_entropy(triv), shannon_entropy(prior)));

    // Two outcomes that pin the key down completely.
    Cpd leak(1, {{0.5, ProbVec::point_mass(1, 0)}, {0.5, ProbVec::point_mass(1, 1)}});
    CHECK(guess_prob(leak) == 1.0);
    CHECK(conditional_entropy(leak) == 0.0);
    CHECK(mutual_info_per_bit(leak) == 1.0);
    CHECK(mutual_info_per_bit(Cpd::trivial(ProbVec::uniform(4))) == 0.0);

    CHECK_THROWS_AS(Cpd(1, {{0.7, ProbVec::uniform(1)}}), ValidationError);  // weights != 1
    CHECK_THROWS_AS(Cpd(2, {{1.0, ProbVec::uniform(1)}}), ValidationError);  // n mismatch
    CHECK_THROWS_AS(Cpd(1, {{-0.2, ProbVec::uniform(1)}, {1.2, ProbVec::uniform(1)}}),
                    ValidationError);
}

TEST_CASE("conditioning cannot raise entropy above the averaged distribution") {
    Rng rng(14);
    int n = 4;
    std::size_t size = std::size_t{1} << n;
    for (int rep = 0; rep < 15; ++rep) {
        std::vector<double> w = oracles::sample_simplex(rng, 3);
        std::vector<CpdOutcome> outs;
        std::vector<double> avg(size, 0.0);
        for (double wy : w) {
            ProbVec d = random_dist(rng, n);
            for (std::size_t k = 0; k < size; ++k) avg[k] += wy * d[k];
            outs.push_back({wy, d});
        }
        Cpd cpd(n, std::move(outs), 1e-9);
        CHECK(conditional_entropy(cpd) <=
              shannon_entropy(ProbVec(n, avg, 1e-9)) + 1e-12);
        double ie = mutual_info_per_bit(cpd);
        CHECK(ie >= -1e-12);
        CHECK(ie <= 1.0 + 1e-12);
    }
}

TEST_CASE("subset marginals agree with per-key digit extraction") {
    Rng rng(15);
    int n = 6;
    std::vector<SubsetMask> masks = {
        SubsetMask(n, {0}),
        SubsetMask(n, {0, 2, 5}),
        SubsetMask(n, {1, 3}),
        SubsetMask::all_bits(n),
    };
    for (int rep = 0; rep < 10; ++rep) {
        ProbVec p = random_dist(rng, n);
        for (const auto& mask : masks) {
            ProbVec got = subset_marginal(p, mask);
            std::vector<double> want = oracles::brute_marginal(p.data(), n, mask.positions);
            REQUIRE(got.size() == want.size());
            for (std::size_t k = 0; k < want.size(); ++k) CHECK(near(got[k], want[k], 1e-12));
            CHECK(near(guess_prob_subset(p, mask), oracles::direct_max(want), 1e-12));
        }
    }
    CHECK_THROWS_AS(subset_marginal(ProbVec::uniform(3), SubsetMask(4, {0})), ValidationError);
}

TEST_CASE("subset marginal of a conditional distribution acts outcome by outcome") {
    Rng rng(16);
    int n = 5;
    std::vector<double> w = oracles::sample_simplex(rng, 4);
    std::vector<CpdOutcome> outs;
    for (double wy : w) outs.push_back({wy, random_dist(rng, n)});
    Cpd cpd(n, outs, 1e-9);

    SubsetMask mask(n, {1, 4});
    Cpd got = subset_marginal(cpd, mask);
    REQUIRE(got.outcome_count() == cpd.outcome_count());
    CHECK(got.n() == 2);
    double p1 = 0.0;
    for (std::size_t y = 0; y < outs.size(); ++y) {
        CHECK(got.outcomes()[y].weight == outs[y].weight);
        std::vector<double> want =
            oracles::brute_marginal(outs[y].dist.data(), n, mask.positions);
        for (std::size_t k = 0; k < want.size(); ++k)
            CHECK(near(got.outcomes()[y].dist[k], want[k], 1e-12));
        p1 += outs[y].weight * oracles::direct_max(want);
    }
    CHECK(near(guess_prob_subset(cpd, mask), p1, 1e-12));
}

TEST_CASE("bit predictions match oracles and respect the distance bound") {
    Rng rng(17);
    int n = 5;
    for (int rep = 0; rep < 15; ++rep) {
        ProbVec p = random_dist(rng, n);
        double delta = stat_distance_to_uniform(p);

        BitPrediction best = bit_marginal_prediction(p);
        double want_best = 0.0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> m = oracles::brute_marginal(p.data(), n, {i});
            want_best = std::max(want_best, std::max(m[0], m[1]));
        }
        CHECK(near(best.success, want_best, 1e-12));
        CHECK(near(best.advantage, best.success - 0.5, 1e-15));
        CHECK(best.position >= 0);
        CHECK(best.position < n);
        // Any single-bit event deviates from a fair coin by at most delta_E.
        CHECK(best.success <= 0.5 + delta + 1e-12);

        for (int i = 0; i < n; ++i) {
            double cond = conditional_bit_prediction(p, i);
            CHECK(near(cond, oracles::brute_conditional_bit(p.data(), n, i), 1e-12));
            // Knowing the other bits can only help versus the bare marginal at i.
            std::vector<double> m = oracles::brute_marginal(p.data(), n, {i});
            CHECK(cond >= std::max(m[0], m[1]) - 1e-12);
            CHECK(cond <= 0.5 + delta + 1e-12);
        }
    }
}

TEST_CASE("a deterministic bit forces distance at least one half") {
    // All mass on keys whose bit 0 is set.
    std::vector<double> p(16, 0.0);
    for (std::size_t k = 1; k < 16; k += 2) p[k] = 1.0 / 8.0;
    ProbVec dist(4, std::move(p));
    CHECK(conditional_bit_prediction(dist, 0) == 1.0);
    CHECK(stat_distance_to_uniform(dist) >= 0.5 - 1e-15);
}

TEST_CASE("parity bias") {
    CHECK(parity_bias(ProbVec::uniform(4), 0b1011) == 0.5);
    CHECK(parity_bias(ProbVec::point_mass(3, 0b110), 0b110) == 1.0);
    CHECK(parity_bias(ProbVec::point_mass(3, 0b100), 0b110) == 0.0);

    Rng rng(18);
    ProbVec p = random_dist(rng, 4);
    // Mask selecting one bit: bias is that bit's marginal of zero... via parity.
    std::vector<double> m = oracles::brute_marginal(p.data(), 4, {2});
    CHECK(near(parity_bias(p, 1u << 2), m[0], 1e-12));
}

TEST_CASE("privacy amplification map validation") {
    // Duplicate rows are not surjective.
    CHECK_THROWS_AS(PaMap::linear(3, 2, {0b101, 0b101}), ValidationError);
    CHECK_THROWS_AS(PaMap::linear(3, 2, {0b101, 0b000}), ValidationError);
    CHECK_NOTHROW(PaMap::linear(3, 2, {0b101, 0b010}));
    CHECK_THROWS_AS(PaMap::linear(2, 3, {1, 2, 3}), ValidationError); // m > n

    // Table map must hit every output value.
    CHECK_THROWS_AS(PaMap::table(2, 1, {0, 0, 0, 0}), ValidationError);
    CHECK_NOTHROW(PaMap::table(2, 1, {0, 1, 1, 0}));

    PaMap xor_all = PaMap::linear(3, 1, {0b111});
    CHECK(xor_all.apply(0b101) == 0);
    CHECK(xor_all.apply(0b100) == 1);
}

TEST_CASE("identity and permutation maps relabel without loss") {
    Rng rng(19);
    ProbVec p = random_dist(rng, 3);

    PaMap ident = PaMap::linear(3, 3, {1, 2, 4});
    ProbVec same = apply_pa(p, ident);
    for (std::size_t k = 0; k < p.size(); ++k) CHECK(same[k] == p[k]);

    PaMap perm = PaMap::table(2, 2, {3, 1, 0, 2});
    ProbVec q = random_dist(rng, 2);
    ProbVec qp = apply_pa(q, perm);
    CHECK(qp[3] == q[0]);
    CHECK(qp[1] == q[1]);
    CHECK(qp[0] == q[2]);
    CHECK(qp[2] == q[3]);
    CHECK(near(shannon_entropy(qp), shannon_entropy(q), 1e-12));
}

TEST_CASE("xor of all bits reproduces the parity bias") {
    Rng rng(20);
    for (int rep = 0; rep < 10; ++rep) {
        ProbVec p = random_dist(rng, 4);
        ProbVec out = apply_pa(p, PaMap::linear(4, 1, {0b1111}));
        CHECK(near(out[0], parity_bias(p, 0b1111), 1e-12));
    }
}

TEST_CASE("every surjective linear compression obeys the monotonicity laws") {
    Rng rng(21);
    // All 42 rank-2 pairs of nonzero row masks on 3 input bits.
    int checked = 0;
    for (std::uint64_t r0 = 1; r0 < 8; ++r0) {
        for (std::uint64_t r1 = 1; r1 < 8; ++r1) {
            if (r1 == r0) continue;
            PaMap map = PaMap::linear(3, 2, {r0, r1});
            ++checked;
            for (int rep = 0; rep < 4; ++rep) {
                ProbVec p = random_dist(rng, 3);
                ProbVec out = apply_pa(p, map);
                // Grouping keys can only raise the best guess.
                CHECK(guess_prob(out) >= guess_prob(p) - 1e-12);
                // Balanced maps contract distance to uniform.
                CHECK(stat_distance_to_uniform(out) <=
                      stat_distance_to_uniform(p) + 1e-12);
            }
        }
    }
    CHECK(checked == 42);
}

TEST_CASE("compression acts outcome-wise on conditional distributions") {
    Rng rng(22);
    int n = 4;
    std::vector<double> w = oracles::sample_simplex(rng, 3);
    std::vector<CpdOutcome> outs;
    for (double wy : w) outs.push_back({wy, random_dist(rng, n)});
    Cpd cpd(n, outs, 1e-9);

    PaMap map = PaMap::linear(n, 2, {0b0011, 0b1100});
    Cpd out = apply_pa(cpd, map);
    REQUIRE(out.outcome_count() == cpd.outcome_count());
    CHECK(out.n() == 2);
    CHECK(guess_prob(out) >= guess_prob(cpd) - 1e-12);
    for (std::size_t y = 0; y < outs.size(); ++y) {
        ProbVec want = apply_pa(outs[y].dist, map);
        for (std::size_t k = 0; k < want.size(); ++k)
            CHECK(out.outcomes()[y].dist[k] == want[k]);
    }
}

} // TEST_SUITE
