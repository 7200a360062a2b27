#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace entrocone {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static CMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    cplx& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    CMatrix operator*(const CMatrix& other) const;
    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator*=(cplx scalar);
    CMatrix adjoint() const;
    cplx trace() const;

    double hermiticity_defect() const;   // max |a_ij - conj(a_ji)|
    double max_abs_diff(const CMatrix& other) const;

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
// Converges when the off-diagonal Frobenius norm drops below tol.
std::vector<double> hermitian_eigenvalues(CMatrix a, double tol = 1e-12);

struct EigenSystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns are the matching eigenvectors
};

EigenSystem hermitian_eigensystem(CMatrix a, double tol = 1e-12);

}  // namespace entrocone
