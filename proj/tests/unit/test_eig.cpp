#include <doctest.h>

#include <cmath>
#include <vector>

#include "keysec/eig.hpp"
#include "keysec/random.hpp"

using namespace keysec;

namespace {

bool near(double a, double b, double tol = 1e-10) {
    return std::abs(a - b) <= tol;
}

std::vector<double> random_symmetric(Rng& rng, int n) {
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = 2.0 * rng.next_unit() - 1.0;
            a[static_cast<std::size_t>(i) * n + j] = v;
            a[static_cast<std::size_t>(j) * n + i] = v;
        }
    return a;
}

CMat random_hermitian(Rng& rng, int d) {
    CMat a(d);
    for (int i = 0; i < d; ++i) {
        a.at(i, i) = 2.0 * rng.next_unit() - 1.0;
        for (int j = 0; j < i; ++j) {
            cplx v(2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0);
            a.at(i, j) = v;
            a.at(j, i) = std::conj(v);
        }
    }
    return a;
}

// max_i |(A v)_i - lambda v_i| for the embedded real problem
double sym_residual(const std::vector<double>& a, const SymEig& eig, int k) {
    int n = eig.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += a[static_cast<std::size_t>(i) * n + j] * eig.vec(j, k);
        worst = std::max(worst, std::abs(acc - eig.values[static_cast<std::size_t>(k)] *
                                                   eig.vec(i, k)));
    }
    return worst;
}

} // namespace

TEST_SUITE("eig") {

TEST_CASE("matrix building blocks") {
    CMat a(2);
    a.at(0, 0) = {1, 0};
    a.at(0, 1) = {0, 2};
    a.at(1, 0) = {3, 0};
    a.at(1, 1) = {0, -1};
    CMat b = a.adjoint();
    CHECK(b.at(0, 1) == cplx(3, 0));
    CHECK(b.at(1, 0) == cplx(0, -2));
    CHECK(a.trace() == cplx(1, -1));
    CHECK(a.max_abs() == 3.0);
    CHECK(a.herm_defect() > 1.0);
    CHECK(CMat::identity(3).herm_defect() == 0.0);

    CMat prod = a.mul(CMat::identity(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(prod.at(i, j) == a.at(i, j));

    CMat k = kron(CMat::identity(2), a);
    CHECK(k.dim() == 4);
    CHECK(k.at(0, 1) == a.at(0, 1));
    CHECK(k.at(2, 3) == a.at(0, 1));
    CHECK(k.at(0, 2) == cplx(0, 0));
}

TEST_CASE("known symmetric spectra") {
    // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
    SymEig e = symmetric_eigen({2, 1, 1, 2}, 2);
    CHECK(near(e.values[0], 1.0, 1e-12));
    CHECK(near(e.values[1], 3.0, 1e-12));
    // Eigenvector of 1 is (1, -1)/sqrt(2) up to sign.
    CHECK(near(std::abs(e.vec(0, 0)), std::sqrt(0.5), 1e-12));
    CHECK(near(e.vec(0, 0) + e.vec(1, 0), 0.0, 1e-12));

    // Diagonal input comes back sorted.
    SymEig d = symmetric_eigen({5, 0, 0, 0, -2, 0, 0, 0, 3}, 3);
    CHECK(near(d.values[0], -2.0, 1e-12));
    CHECK(near(d.values[1], 3.0, 1e-12));
    CHECK(near(d.values[2], 5.0, 1e-12));

    CHECK_THROWS_AS(symmetric_eigen({1, 2, 3, 4}, 2), ValidationError); // not symmetric
}

TEST_CASE("random symmetric matrices: residuals, orthonormality, trace") {
    Rng rng(31);
    for (int n : {1, 2, 5, 9, 16}) {
        std::vector<double> a = random_symmetric(rng, n);
        SymEig eig = symmetric_eigen(a, n);
        REQUIRE(static_cast<int>(eig.values.size()) == n);

        double tr = 0.0, sum = 0.0;
        for (int i = 0; i < n; ++i) tr += a[static_cast<std::size_t>(i) * n + i];
        for (int k = 0; k < n; ++k) {
            sum += eig.values[static_cast<std::size_t>(k)];
            if (k > 0) CHECK(eig.values[static_cast<std::size_t>(k)] >=
                             eig.values[static_cast<std::size_t>(k - 1)]);
            CHECK(sym_residual(a, eig, k) <= 1e-9);
            for (int k2 = 0; k2 <= k; ++k2) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += eig.vec(i, k) * eig.vec(i, k2);
                CHECK(near(dot, k == k2 ? 1.0 : 0.0, 1e-10));
            }
        }
        CHECK(near(sum, tr, 1e-9));
    }
}

TEST_CASE("degenerate spectra keep an orthonormal basis") {
    // 4x4 with eigenvalue 2 three times and 6 once (projector construction).
    int n = 4;
    std::vector<double> a(16, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = (i == j) ? 3.0 : 1.0;
    SymEig eig = symmetric_eigen(a, n);
    CHECK(near(eig.values[0], 2.0, 1e-12));
    CHECK(near(eig.values[1], 2.0, 1e-12));
    CHECK(near(eig.values[2], 2.0, 1e-12));
    CHECK(near(eig.values[3], 6.0, 1e-12));
    for (int k = 0; k < n; ++k) CHECK(sym_residual(a, eig, k) <= 1e-10);
}

TEST_CASE("hermitian eigensystem through the real embedding") {
    // Pauli-y: eigenvalues -1, +1.
    CMat sy(2);
    sy.at(0, 1) = {0, -1};
    sy.at(1, 0) = {0, 1};
    HermEig e = hermitian_eigen(sy);
    std::vector<double> vals = e.values();
    REQUIRE(vals.size() == 2);
    CHECK(near(vals[0], -1.0, 1e-12));
    CHECK(near(vals[1], 1.0, 1e-12));
    CHECK(near(e.min_value(), -1.0, 1e-12));
    CHECK(near(trace_norm(sy), 2.0, 1e-12));

    Rng rng(32);
    for (int d : {1, 2, 4, 7}) {
        CMat a = random_hermitian(rng, d);
        HermEig eig = hermitian_eigen(a);
        REQUIRE(static_cast<int>(eig.embedded_values.size()) == 2 * d);

        // Residual of every embedded eigenvector against A itself.
        for (int k = 0; k < 2 * d; ++k) {
            for (int i = 0; i < d; ++i) {
                cplx acc = 0.0;
                for (int j = 0; j < d; ++j)
                    acc += a.at(i, j) * eig.z[static_cast<std::size_t>(k) * d + j];
                acc -= eig.embedded_values[static_cast<std::size_t>(k)] *
                       eig.z[static_cast<std::size_t>(k) * d + i];
                CHECK(std::abs(acc) <= 1e-9);
            }
        }

        // Identity function reconstructs A; sign flip negates it.
        CMat rebuilt = eig.apply([](double x) { return x; });
        CMat diff = rebuilt - a;
        CHECK(diff.max_abs() <= 1e-9);

        // Pair-averaged spectrum sums to the trace.
        double sum = 0.0;
        for (double v : eig.values()) sum += v;
        CHECK(near(sum, a.trace().real(), 1e-9));
    }

    CMat skew(2);
    skew.at(0, 1) = {1, 0};
    skew.at(1, 0) = {2, 0};
    CHECK_THROWS_AS(hermitian_eigen(skew), ValidationError);
}

TEST_CASE("trace norm of differences") {
    // diag(3, -4): |3| + |-4| = 7.
    CMat d(2);
    d.at(0, 0) = 3.0;
    d.at(1, 1) = -4.0;
    CHECK(near(trace_norm(d), 7.0, 1e-12));

    // Rank-one |v><v| with |v|^2 = 2 has trace norm 2.
    CMat v(2);
    v.at(0, 0) = 1.0;
    v.at(0, 1) = cplx(0, 1);
    v.at(1, 0) = cplx(0, -1);
    v.at(1, 1) = 1.0;
    CHECK(near(trace_norm(v), 2.0, 1e-12));

    Rng rng(33);
    for (int rep = 0; rep < 10; ++rep) {
        CMat a = random_hermitian(rng, 5);
        CMat b = random_hermitian(rng, 5);
        double tab = trace_norm(a - b);
        CHECK(tab >= 0.0);
        // Triangle inequality against a third matrix.
        CMat c = random_hermitian(rng, 5);
        CHECK(tab <= trace_norm(a - c) + trace_norm(c - b) + 1e-9);
        // Sum of eigenvalue magnitudes matches the spectrum directly.
        double direct = 0.0;
        for (double l : hermitian_eigenvalues(a - b)) direct += std::abs(l);
        CHECK(near(tab, direct, 1e-9));
    }
}

TEST_CASE("positive projector splits the spectrum") {
    CMat d(3);
    d.at(0, 0) = 2.0;
    d.at(1, 1) = -1.0;
    d.at(2, 2) = 0.0;
    CMat p = positive_projector(d);
    CHECK(near(p.at(0, 0).real(), 1.0, 1e-12));
    CHECK(near(p.at(1, 1).real(), 0.0, 1e-12));
    CHECK(near(p.at(2, 2).real(), 0.0, 1e-12)); // zero modes excluded

    Rng rng(34);
    CMat a = random_hermitian(rng, 6);
    CMat proj = positive_projector(a);
    // Idempotent and Hermitian.
    CHECK((proj.mul(proj) - proj).max_abs() <= 1e-9);
    CHECK(proj.herm_defect() <= 1e-9);
    // tr(P A) is the sum of positive eigenvalues = (tr A + ||A||_1) / 2.
    double pos = proj.mul(a).trace().real();
    CHECK(near(pos, 0.5 * (a.trace().real() + trace_norm(a)), 1e-9));
}

} // TEST_SUITE
