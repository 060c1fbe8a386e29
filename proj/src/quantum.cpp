#include "keysec/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "keysec/errors.hpp"

namespace keysec {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kPsdTol = -1e-10;

double real_trace_product(const CMat& a, const CMat& b) {
    // tr(A B) for Hermitian A, B is real.
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            s += (a.at(i, j) * b.at(j, i)).real();
    return s;
}

} // namespace

DensityMatrix::DensityMatrix(CMat m) : m_(std::move(m)) {
    if (m_.dim() < 1 || m_.dim() > 256)
        throw ValidationError("DensityMatrix: dim must be in [1, 256]");
    const double scale = std::max(1.0, m_.max_abs());
    if (m_.herm_defect() > kHermTol * scale)
        throw ValidationError("DensityMatrix: not Hermitian within 1e-10");
    const cplx tr = m_.trace();
    if (std::abs(tr - cplx{1.0}) > kHermTol * std::max(1.0, std::abs(tr)) + kHermTol)
        throw ValidationError("DensityMatrix: trace must be 1 within 1e-10");
    if (min_eigenvalue(m_) < kPsdTol)
        throw ValidationError("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    CMat m = CMat::identity(dim);
    m *= cplx{1.0 / static_cast<double>(dim)};
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const std::vector<cplx>& amplitudes) {
    const int dim = static_cast<int>(amplitudes.size());
    if (dim < 1) throw ValidationError("DensityMatrix::pure: empty state");
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (norm2 <= 0.0) throw ValidationError("DensityMatrix::pure: zero vector");
    CMat m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m.at(i, j) = amplitudes[static_cast<std::size_t>(i)] *
                         std::conj(amplitudes[static_cast<std::size_t>(j)]) / norm2;
    return DensityMatrix(std::move(m));
}

CqEnsemble::CqEnsemble(int n, std::vector<DensityMatrix> states)
    : n_(n), states_(std::move(states)) {
    if (n_ < 1 || n_ > 8) throw ValidationError("CqEnsemble: n must be in [1, 8]");
    if (states_.size() != (std::size_t{1} << n_))
        throw ValidationError("CqEnsemble: expected one state per key value (2^n)");
    for (const auto& s : states_)
        if (s.dim() != states_[0].dim())
            throw ValidationError("CqEnsemble: states must share one dimension");
}

Povm::Povm(std::vector<CMat> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw ValidationError("Povm: need at least one element");
    const int dim = elements_[0].dim();
    CMat sum(dim);
    for (const auto& el : elements_) {
        if (el.dim() != dim) throw ValidationError("Povm: element dimension mismatch");
        const double scale = std::max(1.0, el.max_abs());
        if (el.herm_defect() > kHermTol * scale)
            throw ValidationError("Povm: element not Hermitian");
        if (min_eigenvalue(el) < kPsdTol)
            throw ValidationError("Povm: element not PSD");
        sum += el;
    }
    sum -= CMat::identity(dim);
    if (sum.max_abs() > kHermTol)
        throw ValidationError("Povm: elements must sum to the identity within 1e-10");
}

int joint_dim_limit() {
    if (const char* env = std::getenv("KEYSEC_MAX_DIM")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 65536) return static_cast<int>(v);
        throw ValidationError("KEYSEC_MAX_DIM: expected an integer in [1, 65536]");
    }
    return 256;
}

// ===== states and distances =====

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("trace_distance: dimension mismatch");
    return 0.5 * trace_norm(a.mat() - b.mat());
}

namespace {

void check_joint_dim(const CqEnsemble& e) {
    const long joint = static_cast<long>(e.key_count()) * e.dim();
    if (joint > joint_dim_limit())
        throw SizeGuardError("joint dimension " + std::to_string(joint) +
                             " exceeds limit " + std::to_string(joint_dim_limit()));
}

} // namespace

CMat rho_joint(const CqEnsemble& e) {
    check_joint_dim(e);
    const int d = e.dim();
    const int N = static_cast<int>(e.key_count());
    CMat joint(N * d);
    const double w = 1.0 / static_cast<double>(N);
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                joint.at(k * d + i, k * d + j) =
                    w * e.states()[static_cast<std::size_t>(k)].mat().at(i, j);
    return joint;
}

CMat rho_avg(const CqEnsemble& e) {
    const int d = e.dim();
    CMat avg(d);
    for (const auto& s : e.states()) avg += s.mat();
    avg *= cplx{1.0 / static_cast<double>(e.key_count())};
    return avg;
}

CMat rho_ideal(const CqEnsemble& e) {
    check_joint_dim(e);
    const int N = static_cast<int>(e.key_count());
    CMat u = CMat::identity(N);
    u *= cplx{1.0 / static_cast<double>(N)};
    return kron(u, rho_avg(e));
}

double d_criterion(const CqEnsemble& e) {
    return 0.5 * trace_norm(rho_joint(e) - rho_ideal(e));
}

BlockIdentityReport d_block_identity(const CqEnsemble& e) {
    BlockIdentityReport rep{};
    rep.lhs = d_criterion(e);
    const CMat avg = rho_avg(e);
    double sum = 0.0;
    for (const auto& s : e.states()) sum += trace_norm(s.mat() - avg);
    rep.rhs_unhalved = sum / static_cast<double>(e.key_count());
    rep.rhs_halved = 0.5 * rep.rhs_unhalved;
    rep.match_halved = std::fabs(rep.lhs - rep.rhs_halved) <= 1e-9;
    rep.match_unhalved = std::fabs(rep.lhs - rep.rhs_unhalved) <= 1e-9;
    return rep;
}

// ===== measurements =====

Cpd measurement_cpd(const CqEnsemble& e, const Povm& m) {
    if (m.dim() != e.dim()) throw ValidationError("measurement_cpd: dimension mismatch");
    const std::size_t N = e.key_count();
    const double prior = 1.0 / static_cast<double>(N);

    std::vector<CpdOutcome> outcomes;
    outcomes.reserve(m.size());
    for (const auto& el : m.elements()) {
        std::vector<double> joint(N);
        double py = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            // tr(rho_k M_y) >= 0 up to roundoff; clamp the noise.
            const double cond =
                std::max(0.0, real_trace_product(e.states()[k].mat(), el));
            joint[k] = prior * cond;
            py += joint[k];
        }
        if (py <= 0.0) {
            outcomes.push_back({0.0, ProbVec::uniform(e.n())});
            continue;
        }
        for (auto& v : joint) v /= py;
        outcomes.push_back({py, ProbVec(e.n(), std::move(joint), 1e-9)});
    }
    return Cpd(e.n(), std::move(outcomes), 1e-9);
}

Povm helstrom_povm(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    if (rho0.dim() != rho1.dim()) throw ValidationError("helstrom_povm: dimension mismatch");
    CMat plus = positive_projector(rho0.mat() - rho1.mat());
    CMat rest = CMat::identity(rho0.dim()) - plus;
    std::vector<CMat> els;
    els.push_back(std::move(plus));
    els.push_back(std::move(rest));
    return Povm(std::move(els));
}

WitnessReport statement_A_witness(const CqEnsemble& e) {
    const std::size_t N = e.key_count();
    std::size_t best1 = 0, best2 = 0;
    double best_dist = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            const double t = trace_distance(e.states()[i], e.states()[j]);
            if (t > best_dist) {
                best_dist = t;
                best1 = i;
                best2 = j;
            }
        }
    if (best_dist <= 1e-12)
        throw ValidationError(
            "statement_A_witness: all states identical, no informative outcome exists");

    const Povm povm = helstrom_povm(e.states()[best1], e.states()[best2]);
    Cpd cpd = measurement_cpd(e, povm);

    const double u = 1.0 / static_cast<double>(N);
    int best_outcome = 0;
    double best_dev = -1.0;
    for (std::size_t y = 0; y < cpd.outcome_count(); ++y) {
        const auto& o = cpd.outcomes()[y];
        if (o.weight <= 0.0) continue;
        double dev = 0.0;
        for (std::size_t k = 0; k < N; ++k) dev = std::max(dev, std::fabs(o.dist[k] - u));
        if (dev > best_dev) {
            best_dev = dev;
            best_outcome = static_cast<int>(y);
        }
    }

    return WitnessReport{d_criterion(e), best1,     best2,    best_dist,
                         best_outcome,   best_dev, std::move(cpd)};
}

// ===== guarantee shape of the conditional distributions =====

CpdBoundReport cpd_deviation_bounds(const CqEnsemble& e, const Povm& m) {
    if (m.dim() != e.dim())
        throw ValidationError("cpd_deviation_bounds: dimension mismatch");
    const std::size_t N = e.key_count();
    const CMat avg = rho_avg(e);

    CpdBoundReport rep{};
    for (const auto& s : e.states())
        rep.epsilon = std::max(rep.epsilon, trace_norm(s.mat() - avg));

    const Cpd cpd = measurement_cpd(e, m);
    const double u = 1.0 / static_cast<double>(N);
    for (std::size_t y = 0; y < cpd.outcome_count(); ++y) {
        const auto& o = cpd.outcomes()[y];
        OutcomeBound row{};
        row.outcome = static_cast<int>(y);
        row.p_y = o.weight;
        if (o.weight <= 0.0) {
            row.skipped = true;
            rep.rows.push_back(row);
            continue;
        }
        row.bound = rep.epsilon * u / o.weight;
        for (std::size_t k = 0; k < N; ++k)
            row.actual_max_dev = std::max(row.actual_max_dev, std::fabs(o.dist[k] - u));
        row.vacuous = row.bound > 1.0;
        rep.rows.push_back(row);
    }
    return rep;
}

MixtureFeasibility mixture_feasibility(const CqEnsemble& e, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw ValidationError("mixture_feasibility: eps must be in [0, 1]");
    CMat residual = rho_joint(e) - cplx{1.0 - eps} * rho_ideal(e);
    MixtureFeasibility rep{};
    rep.epsilon = eps;
    rep.d_value = d_criterion(e);
    rep.min_eigenvalue = min_eigenvalue(residual);
    rep.feasible = rep.min_eigenvalue >= kPsdTol;
    return rep;
}

// ===== seeded sampling =====

namespace {

double gaussian(Rng& rng) {
    // Box-Muller; both unit draws kept away from 0 and 1.
    const double u1 = std::max(rng.next_unit(), 0x1.0p-60);
    const double u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

CMat ginibre(int dim, Rng& rng) {
    CMat g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g.at(i, j) = cplx(gaussian(rng), gaussian(rng));
    return g;
}

} // namespace

DensityMatrix random_density(int dim, Rng& rng) {
    if (dim < 1 || dim > 64) throw ValidationError("random_density: dim must be in [1, 64]");
    const CMat g = ginibre(dim, rng);
    CMat rho = g.mul(g.adjoint());
    const double tr = rho.trace().real();
    rho *= cplx{1.0 / tr};
    return DensityMatrix(std::move(rho));
}

CqEnsemble random_ensemble(int n, int dim, Rng& rng) {
    std::vector<DensityMatrix> states;
    const std::size_t N = std::size_t{1} << n;
    states.reserve(N);
    for (std::size_t k = 0; k < N; ++k) states.push_back(random_density(dim, rng));
    return CqEnsemble(n, std::move(states));
}

Povm random_povm(int dim, int outcomes, Rng& rng) {
    if (outcomes < 1) throw ValidationError("random_povm: need at least one outcome");
    // A_y = G_y G_y^H, M_y = S^{-1/2} A_y S^{-1/2} with S the sum.
    std::vector<CMat> a;
    CMat s(dim);
    for (int y = 0; y < outcomes; ++y) {
        const CMat g = ginibre(dim, rng);
        a.push_back(g.mul(g.adjoint()));
        s += a.back();
    }
    const HermEig se = hermitian_eigen(s);
    const CMat isqrt = se.apply([](double v) { return v > 1e-12 ? 1.0 / std::sqrt(v) : 0.0; });
    std::vector<CMat> els;
    els.reserve(a.size());
    for (auto& ay : a) els.push_back(isqrt.mul(ay).mul(isqrt));
    return Povm(std::move(els));
}

} // namespace keysec
