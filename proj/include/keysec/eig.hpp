#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "keysec/errors.hpp"

namespace keysec {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.
class CMat {
public:
    CMat() = default;
    CMat(int dim, cplx fill = {});

    static CMat identity(int dim);

    int dim() const { return dim_; }
    cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const cplx& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(cplx s);
    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }

    CMat mul(const CMat& o) const;
    CMat adjoint() const;
    cplx trace() const;
    double max_abs() const;
    double herm_defect() const; // max |a_ij - conj(a_ji)|

private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

CMat kron(const CMat& a, const CMat& b);

// ===== real symmetric eigenproblem =====

// Eigenvalues ascending; eigenvector k is column k of `vectors` (row-major
// n x n), orthonormal. Householder tridiagonalization followed by
// implicit-shift QL.
struct SymEig {
    int n = 0;
    std::vector<double> values;
    std::vector<double> vectors;

    double vec(int i, int k) const { return vectors[static_cast<std::size_t>(i) * n + k]; }
};

SymEig symmetric_eigen(std::vector<double> a, int n);

// ===== Hermitian front end =====

// A Hermitian d x d matrix A = B + iC embeds as the symmetric 2d x 2d real
// matrix [[B, -C], [C, B]]; each eigenvalue of A appears twice and a real
// eigenvector (x, y) recovers a complex one z = x + iy. Spectral functions
// rebuild from any orthonormal real eigenbasis as
//     f(A) = (1/2) sum_j f(lambda_j) z_j z_j^H
// over all 2d embedded pairs, so no pairing of the doubled spectrum is
// needed.
struct HermEig {
    int dim = 0;
    std::vector<double> embedded_values; // 2*dim, ascending
    std::vector<cplx> z;                 // 2*dim vectors of length dim, z[j*dim + i]

    // Pair-averaged spectrum of A itself (dim values, ascending).
    std::vector<double> values() const;
    double min_value() const;

    CMat apply(const std::function<double(double)>& f) const;
};

HermEig hermitian_eigen(const CMat& a, double herm_tol = 1e-9);

std::vector<double> hermitian_eigenvalues(const CMat& a);
double min_eigenvalue(const CMat& a);

// Schatten-1 norm of a Hermitian matrix, sum |lambda_i|.
double trace_norm(const CMat& a);

// Orthogonal projector onto the strictly positive eigenspace.
CMat positive_projector(const CMat& a, double tol = 1e-12);

} // namespace keysec
