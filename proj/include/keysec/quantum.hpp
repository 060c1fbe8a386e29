#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "keysec/eig.hpp"
#include "keysec/prob.hpp"
#include "keysec/random.hpp"

namespace keysec {

// Hermitian, PSD, unit-trace operator. Validation tolerances: Hermiticity
// and trace 1e-10, eigenvalues >= -1e-10.
class DensityMatrix {
public:
    explicit DensityMatrix(CMat m);

    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix pure(const std::vector<cplx>& amplitudes);

    int dim() const { return m_.dim(); }
    const CMat& mat() const { return m_; }

private:
    CMat m_;
};

// Uniform classical-quantum ensemble: one adversary state per key value,
// prior fixed to uniform.
class CqEnsemble {
public:
    CqEnsemble(int n, std::vector<DensityMatrix> states);

    int n() const { return n_; }
    std::size_t key_count() const { return states_.size(); }
    int dim() const { return states_[0].dim(); }
    const std::vector<DensityMatrix>& states() const { return states_; }

private:
    int n_;
    std::vector<DensityMatrix> states_;
};

class Povm {
public:
    explicit Povm(std::vector<CMat> elements);

    int dim() const { return elements_[0].dim(); }
    std::size_t size() const { return elements_.size(); }
    const std::vector<CMat>& elements() const { return elements_; }

private:
    std::vector<CMat> elements_;
};

// Joint-dimension cap for dense joint-operator work; the KEYSEC_MAX_DIM
// environment variable overrides the default of 256.
int joint_dim_limit();

// ===== states and distances =====

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

CMat rho_joint(const CqEnsemble& e);   // block-diagonal joint state
CMat rho_avg(const CqEnsemble& e);     // adversary's average state
CMat rho_ideal(const CqEnsemble& e);   // uniform key tensor the average

// d = (1/2) ||rho_joint - rho_ideal||_1 via the full joint spectrum.
double d_criterion(const CqEnsemble& e);

// The same quantity through the block structure, E_k (1/2)||rho_k - rho_avg||_1,
// reported against both factor conventions for the right-hand side.
struct BlockIdentityReport {
    double lhs;            // full-joint d
    double rhs_halved;     // E_k (1/2)||rho_k - rho_avg||_1
    double rhs_unhalved;   // E_k ||rho_k - rho_avg||_1
    bool match_halved;     // |lhs - rhs_halved| <= 1e-9
    bool match_unhalved;
};

BlockIdentityReport d_block_identity(const CqEnsemble& e);

// ===== measurements =====

// Outcome weights P_y = tr(rho_avg M_y) and per-outcome key distributions
// P(k|y) by Bayes under the uniform prior. Zero-probability outcomes carry
// weight 0 and a uniform placeholder distribution.
Cpd measurement_cpd(const CqEnsemble& e, const Povm& m);

// Binary POVM projecting onto the positive eigenspace of rho0 - rho1;
// optimal two-state discrimination, success 1/2 + (1/4)||rho0 - rho1||_1
// under the uniform prior.
Povm helstrom_povm(const DensityMatrix& rho0, const DensityMatrix& rho1);

// Exhibits an outcome whose conditional key distribution is visibly
// non-uniform although d may be tiny: the optimal pairwise measurement on
// the two most distinguishable states.
struct WitnessReport {
    double d_value;
    std::uint64_t k1, k2;       // most distinguishable key pair
    double pair_distance;
    int outcome;                // outcome index with the largest deviation
    double deviation;           // max_k |P(k|y) - 1/N| at that outcome
    Cpd cpd;
};

WitnessReport statement_A_witness(const CqEnsemble& e);

// ===== guarantee shape of the conditional distributions =====

// Per-outcome comparison of |P(k|y) - U_k| against eps * U_k / P_y with
// eps = max_k ||rho_k - rho_avg||_1.
struct OutcomeBound {
    int outcome;
    double p_y;
    double bound;          // eps / (N P_y), the common per-key bound
    double actual_max_dev;
    bool vacuous;          // bound > 1
    bool skipped;          // P_y = 0
};

struct CpdBoundReport {
    double epsilon;        // max_k ||rho_k - rho_avg||_1
    std::vector<OutcomeBound> rows;
};

CpdBoundReport cpd_deviation_bounds(const CqEnsemble& e, const Povm& m);

// Whether rho_joint - (1 - eps) rho_ideal is PSD: necessary and sufficient
// for a mixture completion rho_joint = (1-eps) rho_ideal + eps sigma.
struct MixtureFeasibility {
    double epsilon;
    double d_value;
    double min_eigenvalue;
    bool feasible;         // min eigenvalue >= -1e-10
};

MixtureFeasibility mixture_feasibility(const CqEnsemble& e, double eps);

// ===== seeded sampling =====

DensityMatrix random_density(int dim, Rng& rng);
CqEnsemble random_ensemble(int n, int dim, Rng& rng);
Povm random_povm(int dim, int outcomes, Rng& rng);

} // namespace keysec
