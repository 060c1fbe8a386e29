#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "keysec/quantum.hpp"
#include "oracles.hpp"

using namespace keysec;

namespace {

bool near(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol;
}

DensityMatrix diag_state(std::vector<double> p) {
    CMat m(static_cast<int>(p.size()));
    for (int i = 0; i < m.dim(); ++i) m.at(i, i) = p[static_cast<std::size_t>(i)];
    return DensityMatrix(std::move(m));
}

// |0> and |1> as adversary states: the key is readable by measurement.
CqEnsemble orthogonal_pair() {
    return CqEnsemble(1, {DensityMatrix::pure({1, 0}), DensityMatrix::pure({0, 1})});
}

double random_bloch_coord(Rng& rng) { return (2.0 * rng.next_unit() - 1.0) / 2.0; }

// Average over outcomes of the conditional distance to uniform: the
// classical distance of the measured joint from the measured ideal.
double measured_distance(const Cpd& cpd) {
    double acc = 0.0;
    for (const auto& out : cpd.outcomes())
        acc += out.weight * stat_distance_to_uniform(out.dist);
    return acc;
}

} // namespace

TEST_SUITE("quantum") {

TEST_CASE("state validation") {
    CMat bad_tr(2);
    bad_tr.at(0, 0) = 0.7;
    bad_tr.at(1, 1) = 0.7;
    CHECK_THROWS_AS(DensityMatrix{bad_tr}, ValidationError);

    CMat not_herm(2);
    not_herm.at(0, 0) = 0.5;
    not_herm.at(1, 1) = 0.5;
    not_herm.at(0, 1) = 0.3;
    CHECK_THROWS_AS(DensityMatrix{not_herm}, ValidationError);

    CMat neg(2);
    neg.at(0, 0) = 1.5;
    neg.at(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);

    // Bloch vectors inside the ball are states; outside they are not.
    CHECK_NOTHROW(DensityMatrix(oracles::qubit_state(0.3, -0.4, 0.5)));
    CHECK_THROWS_AS(DensityMatrix(oracles::qubit_state(0.9, 0.6, 0.4)), ValidationError);

    DensityMatrix plus = DensityMatrix::pure({1, 1}); // normalization implied
    CHECK(near(plus.mat().at(0, 1).real(), 0.5, 1e-15));
    CHECK(near(plus.mat().trace().real(), 1.0, 1e-15));

    CHECK_THROWS_AS(CqEnsemble(2, {DensityMatrix::maximally_mixed(2)}), ValidationError);
    CHECK_THROWS_AS(CqEnsemble(1, {DensityMatrix::maximally_mixed(2),
                                   DensityMatrix::maximally_mixed(3)}),
                    ValidationError);
}

TEST_CASE("measurement validation") {
    CMat half = CMat::identity(2) * cplx{0.5};
    CHECK_NOTHROW(Povm({half, half}));
    CHECK_THROWS_AS(Povm({half}), ValidationError); // does not resolve identity

    CMat neg = CMat::identity(2) * cplx{-0.5};
    CMat comp = CMat::identity(2) * cplx{1.5};
    CHECK_THROWS_AS(Povm({neg, comp}), ValidationError);
}

TEST_CASE("trace distance matches the Bloch-sphere closed form") {
    DensityMatrix a(oracles::qubit_state(0, 0, 1));
    DensityMatrix b(oracles::qubit_state(0, 0, -1));
    CHECK(near(trace_distance(a, b), 1.0, 1e-12));
    CHECK(near(trace_distance(a, a), 0.0, 1e-12));

    Rng rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        double ax = random_bloch_coord(rng), ay = random_bloch_coord(rng),
               az = random_bloch_coord(rng);
        double bx = random_bloch_coord(rng), by = random_bloch_coord(rng),
               bz = random_bloch_coord(rng);
        DensityMatrix ra{oracles::qubit_state(ax, ay, az)};
        DensityMatrix rb{oracles::qubit_state(bx, by, bz)};
        CHECK(near(trace_distance(ra, rb),
                   oracles::bloch_trace_distance(ax, ay, az, bx, by, bz), 1e-10));
    }
}

TEST_CASE("joint-state distance for the readable and unreadable extremes") {
    // Identical adversary states carry nothing.
    CqEnsemble blind(2, std::vector<DensityMatrix>(4, DensityMatrix::maximally_mixed(2)));
    CHECK(near(d_criterion(blind), 0.0, 1e-12));

    // Orthogonal pure states on one bit sit at exactly 1/2.
    CHECK(near(d_criterion(orthogonal_pair()), 0.5, 1e-12));
}

TEST_CASE("block identity holds with the halved right-hand side") {
    Rng rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 1 + static_cast<int>(rng.next_below(3));
        CqEnsemble e = random_ensemble(n, 2 + static_cast<int>(rng.next_below(3)), rng);
        BlockIdentityReport rep_out = d_block_identity(e);
        CHECK(rep_out.match_halved);
        CHECK(near(rep_out.lhs, d_criterion(e), 1e-12));
        CHECK(near(rep_out.rhs_unhalved, 2.0 * rep_out.rhs_halved, 1e-12));
        if (rep_out.lhs > 1e-6) CHECK_FALSE(rep_out.match_unhalved);
    }
}

TEST_CASE("diagonal ensembles reduce to classical distributions") {
    CqEnsemble e(1, {diag_state({0.8, 0.2}), diag_state({0.3, 0.7})});
    CHECK(near(d_criterion(e), 0.25, 1e-12));

    // Measuring in the computational basis recovers the classical posterior.
    CMat p0(2), p1(2);
    p0.at(0, 0) = 1;
    p1.at(1, 1) = 1;
    Cpd cpd = measurement_cpd(e, Povm({p0, p1}));
    CHECK(near(guess_prob(cpd), 0.75, 1e-12));
    CHECK(near(cpd.outcomes()[0].weight, 0.55, 1e-12));
    CHECK(near(cpd.outcomes()[0].dist[0], 0.4 / 0.55, 1e-12));
    CHECK(near(measured_distance(cpd), 0.25, 1e-12)); // basis reads it all
}

TEST_CASE("measurement never beats the joint-state distance") {
    Rng rng(43);
    for (int rep = 0; rep < 15; ++rep) {
        int n = 1 + static_cast<int>(rng.next_below(2));
        int dim = 2 + static_cast<int>(rng.next_below(3));
        CqEnsemble e = random_ensemble(n, dim, rng);
        double d = d_criterion(e);
        Povm m = random_povm(dim, 2 + static_cast<int>(rng.next_below(4)), rng);
        Cpd cpd = measurement_cpd(e, m);
        double tv = measured_distance(cpd);
        CHECK(tv <= d + 1e-9);
        // Best guess from any measurement stays within the distance budget.
        double N = static_cast<double>(e.key_count());
        CHECK(guess_prob(cpd) <= 1.0 / N + tv + 1e-9);
    }
}

TEST_CASE("optimal two-state discrimination") {
    DensityMatrix z0(oracles::qubit_state(0, 0, 1));
    DensityMatrix x0(oracles::qubit_state(1, 0, 0));
    Povm best = helstrom_povm(z0, x0);
    CqEnsemble pair(1, {z0, x0});
    double succ = guess_prob(measurement_cpd(pair, best));
    CHECK(near(succ, oracles::bloch_helstrom_success(0, 0, 1, 1, 0, 0), 1e-10));

    Rng rng(44);
    for (int rep = 0; rep < 10; ++rep) {
        double ax = random_bloch_coord(rng), ay = random_bloch_coord(rng),
               az = random_bloch_coord(rng);
        double bx = random_bloch_coord(rng), by = random_bloch_coord(rng),
               bz = random_bloch_coord(rng);
        DensityMatrix ra{oracles::qubit_state(ax, ay, az)};
        DensityMatrix rb{oracles::qubit_state(bx, by, bz)};
        CqEnsemble e(1, {ra, rb});
        double opt = guess_prob(measurement_cpd(e, helstrom_povm(ra, rb)));
        CHECK(near(opt, oracles::bloch_helstrom_success(ax, ay, az, bx, by, bz), 1e-10));
        CHECK(near(opt, 0.5 + 0.5 * trace_distance(ra, rb), 1e-10));

        // No sampled measurement does better.
        for (int trial = 0; trial < 60; ++trial) {
            Povm m = random_povm(2, 2 + static_cast<int>(rng.next_below(3)), rng);
            CHECK(guess_prob(measurement_cpd(e, m)) <= opt + 1e-9);
        }
    }
}

TEST_CASE("a tiny joint distance still leaves a loud outcome") {
    // Two of four states lean slightly apart; the rest are mixed.
    double tilt = 0.02;
    CqEnsemble e(2, {DensityMatrix(oracles::qubit_state(0, 0, tilt)),
                     DensityMatrix(oracles::qubit_state(0, 0, -tilt)),
                     DensityMatrix::maximally_mixed(2),
                     DensityMatrix::maximally_mixed(2)});
    WitnessReport w = statement_A_witness(e);
    CHECK(near(w.d_value, d_criterion(e), 1e-12));
    CHECK(w.d_value < 0.02);

    // Reported pair is the most distinguishable one.
    double best_pair = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            best_pair = std::max(best_pair,
                                 trace_distance(e.states()[i], e.states()[j]));
    CHECK(near(w.pair_distance, best_pair, 1e-12));
    CHECK(near(w.pair_distance, 2.0 * tilt / 2.0, 1e-12));

    // The reported deviation re-verifies against the conditional row.
    const ProbVec& row = w.cpd.outcomes()[static_cast<std::size_t>(w.outcome)].dist;
    double dev = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k)
        dev = std::max(dev, std::abs(row[k] - 0.25));
    CHECK(near(w.deviation, dev, 1e-12));
    CHECK(w.deviation > w.d_value / 4.0); // visibly non-uniform regardless of d

    CqEnsemble blind(1, {DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2)});
    CHECK_THROWS_AS(statement_A_witness(blind), ValidationError);
}

TEST_CASE("per-outcome deviation bounds are sound") {
    Rng rng(45);
    for (int rep = 0; rep < 12; ++rep) {
        int n = 1 + static_cast<int>(rng.next_below(2));
        int dim = 2 + static_cast<int>(rng.next_below(2));
        CqEnsemble e = random_ensemble(n, dim, rng);
        Povm m = random_povm(dim, 3, rng);
        CpdBoundReport report = cpd_deviation_bounds(e, m);

        CMat avg = rho_avg(e);
        double eps = 0.0;
        for (const auto& s : e.states())
            eps = std::max(eps, trace_norm(s.mat() - avg));
        CHECK(near(report.epsilon, eps, 1e-12));

        for (const auto& row : report.rows) {
            if (row.skipped) continue;
            CHECK(row.actual_max_dev <= row.bound + 1e-9);
            CHECK(row.vacuous == (row.bound > 1.0));
        }
    }

    // Readable states (eps = 1) with a rare outcome: that row goes vacuous,
    // the common one stays informative and the actual deviation respects it.
    CpdBoundReport skewed = cpd_deviation_bounds(
        orthogonal_pair(), Povm({CMat::identity(2) * cplx{0.4},
                                 CMat::identity(2) * cplx{0.6}}));
    CHECK(near(skewed.epsilon, 1.0, 1e-12));
    REQUIRE(skewed.rows.size() == 2);
    CHECK(skewed.rows[0].vacuous);       // 0.5 / 0.4 = 1.25
    CHECK_FALSE(skewed.rows[1].vacuous); // 0.5 / 0.6 < 1
    CHECK(skewed.rows[1].actual_max_dev <= skewed.rows[1].bound + 1e-12);
}

TEST_CASE("mixture completion feasibility") {
    CqEnsemble pair = orthogonal_pair();
    MixtureFeasibility half = mixture_feasibility(pair, 0.5);
    CHECK(near(half.min_eigenvalue, -0.125, 1e-12));
    CHECK_FALSE(half.feasible);
    CHECK(near(half.d_value, 0.5, 1e-12));

    MixtureFeasibility full = mixture_feasibility(pair, 1.0);
    CHECK(near(full.min_eigenvalue, 0.0, 1e-12));
    CHECK(full.feasible);

    // Epsilon below d can never complete the mixture.
    MixtureFeasibility tight = mixture_feasibility(pair, 0.49);
    CHECK_FALSE(tight.feasible);

    CqEnsemble blind(1, {DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2)});
    CHECK(mixture_feasibility(blind, 0.0).feasible);

    CHECK_THROWS_AS(mixture_feasibility(pair, -0.1), ValidationError);
    CHECK_THROWS_AS(mixture_feasibility(pair, 1.1), ValidationError);
}

TEST_CASE("seeded sampling is valid and reproducible") {
    Rng a(46), b(46);
    DensityMatrix da = random_density(3, a);
    DensityMatrix db = random_density(3, b);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(da.mat().at(i, j) == db.mat().at(i, j));

    CqEnsemble ea = random_ensemble(2, 2, a);
    CqEnsemble eb = random_ensemble(2, 2, b);
    CHECK(near(d_criterion(ea), d_criterion(eb), 0.0));

    CHECK_NOTHROW(random_povm(3, 5, a)); // Povm ctor re-validates
}

TEST_CASE("joint dimension guard") {
    CHECK(joint_dim_limit() >= 1);

    Rng rng(47);
    CqEnsemble e = random_ensemble(1, 4, rng); // 2 keys x dim 4 = joint 8
    setenv("KEYSEC_MAX_DIM", "4", 1);
    CHECK(joint_dim_limit() == 4);
    CHECK_THROWS_AS(d_criterion(e), SizeGuardError);
    setenv("KEYSEC_MAX_DIM", "banana", 1);
    CHECK_THROWS_AS(joint_dim_limit(), ValidationError);
    unsetenv("KEYSEC_MAX_DIM");
    CHECK(joint_dim_limit() == 256);
    CHECK_NOTHROW(d_criterion(e));
}

} // TEST_SUITE
