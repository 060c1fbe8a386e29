#pragma once

#include <vector>

#include "keysec/prob.hpp"

namespace keysec {

// Joint distribution of (X, X') with prescribed marginals over the same
// 2^n alphabet; row i, column j holds Pr[X = i, X' = j].
class Coupling {
public:
    Coupling(int n, std::vector<double> joint);

    int n() const { return n_; }
    std::size_t side() const { return std::size_t{1} << n_; }
    double at(std::size_t i, std::size_t j) const { return joint_[i * side() + j]; }

    double pr_not_equal() const;
    ProbVec marginal_x() const;
    ProbVec marginal_xprime() const;

private:
    int n_;
    std::vector<double> joint_;
};

// Diagonal mass min(p_i, q_i); residuals transported off-diagonal greedily
// in ascending index order. Pr[X != X'] equals the statistical distance.
Coupling maximal_coupling(const ProbVec& p, const ProbVec& q);

// Product joint; Pr[X != X'] = 1 - sum p_i q_i.
Coupling independent_coupling(const ProbVec& p, const ProbVec& q);

// Tests the mixture reading of statistical distance: with eps = delta(p, q),
// solve p = (1 - eps) q + eps P' for P' and examine it. The raw solution
// P' = (p - (1-eps) q) / eps satisfies (1/2) sum |P'_i - q_i| = 1 identically
// (P' - q = (p - q)/eps), so the reported distance delta_Pprime_q is taken on
// the simplex projection of P' (negatives clipped, renormalized); for a valid
// P' the projection is the identity. delta_Pprime_q = 1 then still holds
// exactly when the (projected) P' and q share no support.
struct DecompositionReport {
    double delta;              // eps = delta(p, q)
    bool valid_Pprime;         // raw P' >= 0 within 1e-12
    double min_Pprime_entry;   // most negative raw entry
    ProbVec Pprime;            // projected P'
    double delta_Pprime_q;     // delta(projected P', q)
    bool delta_is_one;         // delta_Pprime_q = 1 within 1e-12
};

DecompositionReport decomposition_test(const ProbVec& p, const ProbVec& q);

} // namespace keysec
