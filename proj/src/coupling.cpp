#include "keysec/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "keysec/errors.hpp"

namespace keysec {

Coupling::Coupling(int n, std::vector<double> joint) : n_(n), joint_(std::move(joint)) {
    if (n_ < 1 || n_ > 10) throw ValidationError("Coupling: n must be in [1, 10]");
    const std::size_t N = side();
    if (joint_.size() != N * N) throw ValidationError("Coupling: expected 2^n x 2^n entries");
    double sum = 0.0;
    for (double v : joint_) {
        if (!(v >= 0.0)) throw ValidationError("Coupling: entries must be >= 0");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ValidationError("Coupling: entries must sum to 1");
}

double Coupling::pr_not_equal() const {
    double diag = 0.0;
    for (std::size_t i = 0; i < side(); ++i) diag += at(i, i);
    return 1.0 - diag;
}

ProbVec Coupling::marginal_x() const {
    const std::size_t N = side();
    std::vector<double> p(N, 0.0);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) p[i] += at(i, j);
    return ProbVec(n_, std::move(p), 1e-9);
}

ProbVec Coupling::marginal_xprime() const {
    const std::size_t N = side();
    std::vector<double> q(N, 0.0);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) q[j] += at(i, j);
    return ProbVec(n_, std::move(q), 1e-9);
}

Coupling maximal_coupling(const ProbVec& p, const ProbVec& q) {
    if (p.n() != q.n()) throw ValidationError("maximal_coupling: dimension mismatch");
    const std::size_t N = p.size();
    std::vector<double> joint(N * N, 0.0);

    // Diagonal carries the overlap; the surpluses of p transport onto the
    // deficits of q in ascending index order.
    std::vector<double> surplus(N), deficit(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double overlap = std::min(p[i], q[i]);
        joint[i * N + i] = overlap;
        surplus[i] = p[i] - overlap;
        deficit[i] = q[i] - overlap;
    }
    std::size_t j = 0;
    for (std::size_t i = 0; i < N; ++i) {
        double rem = surplus[i];
        while (rem > 0.0 && j < N) {
            if (deficit[j] <= 0.0) {
                ++j;
                continue;
            }
            const double move = std::min(rem, deficit[j]);
            joint[i * N + j] += move;
            rem -= move;
            deficit[j] -= move;
            if (deficit[j] <= 0.0) ++j;
        }
    }
    return Coupling(p.n(), std::move(joint));
}

Coupling independent_coupling(const ProbVec& p, const ProbVec& q) {
    if (p.n() != q.n()) throw ValidationError("independent_coupling: dimension mismatch");
    const std::size_t N = p.size();
    std::vector<double> joint(N * N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) joint[i * N + j] = p[i] * q[j];
    return Coupling(p.n(), std::move(joint));
}

DecompositionReport decomposition_test(const ProbVec& p, const ProbVec& q) {
    if (p.n() != q.n()) throw ValidationError("decomposition_test: dimension mismatch");
    const double eps = stat_distance(p, q);
    if (eps <= 1e-15)
        throw ValidationError("decomposition_test: delta(p, q) = 0, decomposition trivial");

    const std::size_t N = p.size();
    std::vector<double> raw(N);
    double min_entry = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        raw[i] = (p[i] - (1.0 - eps) * q[i]) / eps;
        min_entry = std::min(min_entry, raw[i]);
    }

    std::vector<double> proj(N);
    double mass = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        proj[i] = std::max(0.0, raw[i]);
        mass += proj[i];
    }
    // mass >= 1 always: the raw solution sums to 1 and clipping only adds.
    for (auto& v : proj) v /= mass;

    ProbVec pprime(p.n(), std::move(proj), 1e-9);
    const double dpq = stat_distance(pprime, q);
    return DecompositionReport{eps,
                               min_entry >= -1e-12,
                               min_entry,
                               std::move(pprime),
                               dpq,
                               std::fabs(dpq - 1.0) <= 1e-12};
}

} // namespace keysec
