#include "keysec/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace keysec {

CMat::CMat(int dim, cplx fill) : dim_(dim) {
    if (dim < 1) throw ValidationError("CMat: dim must be >= 1");
    a_.assign(static_cast<std::size_t>(dim) * dim, fill);
}

CMat CMat::identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

CMat& CMat::operator+=(const CMat& o) {
    if (dim_ != o.dim_) throw ValidationError("CMat: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (dim_ != o.dim_) throw ValidationError("CMat: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMat& CMat::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMat CMat::mul(const CMat& o) const {
    if (dim_ != o.dim_) throw ValidationError("CMat: dimension mismatch");
    CMat r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const cplx aik = at(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

CMat CMat::adjoint() const {
    CMat r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

cplx CMat::trace() const {
    cplx t{};
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double CMat::herm_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const cplx aij = a.at(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < b.dim(); ++k)
                for (int l = 0; l < b.dim(); ++l)
                    r.at(i * b.dim() + k, j * b.dim() + l) = aij * b.at(k, l);
        }
    return r;
}

// ===== real symmetric eigenproblem =====

namespace {

// Householder reduction to tridiagonal form with accumulated transform
// (EISPACK tred2 lineage). v is row-major n x n, overwritten with the
// orthogonal matrix; d receives the diagonal, e the subdiagonal.
void tred2(std::vector<double>& v, int n, std::vector<double>& d, std::vector<double>& e) {
    auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

    for (int j = 0; j < n; ++j) d[j] = V(n - 1, j);

    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0, h = 0.0;
        for (int k = 0; k < i; ++k) scale += std::fabs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
                V(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j) e[j] = 0.0;

            for (int j = 0; j < i; ++j) {
                f = d[j];
                V(j, i) = f;
                g = e[j] + V(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += V(k, j) * d[k];
                    e[k] += V(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k) V(k, j) -= (f * e[k] + g * d[k]);
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (int i = 0; i < n - 1; ++i) {
        V(n - 1, i) = V(i, i);
        V(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
                for (int k = 0; k <= i; ++k) V(k, j) -= g * d[k];
            }
        }
        for (int k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
        V(n - 1, j) = 0.0;
    }
    V(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e), rotations accumulated into v.
void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<double>& v, int n) {
    auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0, tst1 = 0.0;
    const double eps = std::ldexp(1.0, -52);
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
        int m = l;
        while (m < n && std::fabs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 80)
                    throw std::runtime_error("tql2: QL iteration failed to converge");
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (int i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = c, c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (int k = 0; k < n; ++k) {
                        h = V(k, i + 1);
                        V(k, i + 1) = s * V(k, i) + c * h;
                        V(k, i) = c * V(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::fabs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

} // namespace

SymEig symmetric_eigen(std::vector<double> a, int n) {
    if (n < 1) throw ValidationError("symmetric_eigen: n must be >= 1");
    if (a.size() != static_cast<std::size_t>(n) * n)
        throw ValidationError("symmetric_eigen: matrix size mismatch");
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::fabs(x));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto ij = a[static_cast<std::size_t>(i) * n + j];
            const auto ji = a[static_cast<std::size_t>(j) * n + i];
            if (std::fabs(ij - ji) > 1e-9 * std::max(1.0, scale))
                throw ValidationError("symmetric_eigen: matrix is not symmetric");
        }

    SymEig res;
    res.n = n;
    res.values.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    res.vectors = std::move(a);
    tred2(res.vectors, n, res.values, e);
    tql2(res.values, e, res.vectors, n);

    // Sort ascending, permuting eigenvector columns to match.
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int x, int y) { return res.values[x] < res.values[y]; });
    std::vector<double> sv(static_cast<std::size_t>(n));
    std::vector<double> svec(res.vectors.size());
    for (int k = 0; k < n; ++k) {
        sv[static_cast<std::size_t>(k)] = res.values[static_cast<std::size_t>(idx[k])];
        for (int i = 0; i < n; ++i)
            svec[static_cast<std::size_t>(i) * n + k] =
                res.vectors[static_cast<std::size_t>(i) * n + idx[k]];
    }
    res.values = std::move(sv);
    res.vectors = std::move(svec);
    return res;
}

// ===== Hermitian front end =====

HermEig hermitian_eigen(const CMat& a, double herm_tol) {
    const int d = a.dim();
    if (a.herm_defect() > herm_tol * std::max(1.0, a.max_abs()))
        throw ValidationError("hermitian_eigen: matrix is not Hermitian");

    const int n = 2 * d;
    std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
    auto M = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            // Hermitize to kill roundoff asymmetry before embedding.
            const cplx h = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            M(i, j) = h.real();
            M(i + d, j + d) = h.real();
            M(i, j + d) = -h.imag();
            M(i + d, j) = h.imag();
        }

    const SymEig se = symmetric_eigen(std::move(m), n);

    HermEig he;
    he.dim = d;
    he.embedded_values = se.values;
    he.z.assign(static_cast<std::size_t>(n) * d, cplx{});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i)
            he.z[static_cast<std::size_t>(j) * d + i] = cplx(se.vec(i, j), se.vec(i + d, j));
    return he;
}

std::vector<double> HermEig::values() const {
    std::vector<double> out(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
        out[static_cast<std::size_t>(i)] =
            0.5 * (embedded_values[static_cast<std::size_t>(2 * i)] +
                   embedded_values[static_cast<std::size_t>(2 * i + 1)]);
    return out;
}

double HermEig::min_value() const {
    return 0.5 * (embedded_values[0] + embedded_values[1]);
}

CMat HermEig::apply(const std::function<double(double)>& f) const {
    CMat r(dim);
    const int n = 2 * dim;
    for (int j = 0; j < n; ++j) {
        const double w = 0.5 * f(embedded_values[static_cast<std::size_t>(j)]);
        if (w == 0.0) continue;
        const cplx* zj = &z[static_cast<std::size_t>(j) * dim];
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k)
                r.at(i, k) += w * zj[i] * std::conj(zj[k]);
    }
    return r;
}

std::vector<double> hermitian_eigenvalues(const CMat& a) {
    return hermitian_eigen(a).values();
}

double min_eigenvalue(const CMat& a) {
    return hermitian_eigen(a).min_value();
}

double trace_norm(const CMat& a) {
    const HermEig he = hermitian_eigen(a);
    double s = 0.0;
    for (double v : he.embedded_values) s += std::fabs(v);
    return 0.5 * s;
}

CMat positive_projector(const CMat& a, double tol) {
    const HermEig he = hermitian_eigen(a);
    double scale = 0.0;
    for (double v : he.embedded_values) scale = std::max(scale, std::fabs(v));
    const double cut = tol * std::max(1.0, scale);
    return he.apply([cut](double v) { return v > cut ? 1.0 : 0.0; });
}

} // namespace keysec
