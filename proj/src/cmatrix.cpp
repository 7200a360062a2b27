#include "entrocone/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace entrocone {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& other) const {
    if (n_ != other.n_) throw std::invalid_argument("matrix size mismatch");
    CMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            const cplx aik = at(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) out.at(i, j) += aik * other.at(k, j);
        }
    }
    return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (n_ != other.n_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx scalar) {
    for (auto& v : a_) v *= scalar;
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
}

cplx CMatrix::trace() const {
    cplx t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

double CMatrix::hermiticity_defect() const {
    double d = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j)
            d = std::max(d, std::abs(at(i, j) - std::conj(at(j, i))));
    return d;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
    if (n_ != other.n_) throw std::invalid_argument("matrix size mismatch");
    double d = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) d = std::max(d, std::abs(a_[i] - other.a_[i]));
    return d;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

// Cyclic Jacobi sweeps with deterministic (p, q) order. Rotates A in place;
// accumulates the eigenvector matrix into V when given.
void jacobi(CMatrix& a, CMatrix* v, double tol) {
    const std::size_t n = a.size();
    if (a.hermiticity_defect() > 1e-10)
        throw std::invalid_argument("matrix is not Hermitian within tolerance");
    if (v) *v = CMatrix::identity(n);
    if (n < 2) return;

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) < tol) return;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq == 0.0) continue;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();

                // unitary diag(1, e^{i phi}) makes the 2x2 block real symmetric
                const cplx phase = apq / abs_apq;
                const double tau = (aqq - app) / (2.0 * abs_apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;  // complex sine

                // columns: col_p' = c*col_p - conj(sp)*col_q ; col_q' = sp*col_p + c*col_q
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - std::conj(sp) * aiq;
                    a.at(i, q) = sp * aip + c * aiq;
                }
                // rows (conjugate transform)
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj - sp * aqj;
                    a.at(q, j) = std::conj(sp) * apj + c * aqj;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                if (v) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx vip = v->at(i, p), viq = v->at(i, q);
                        v->at(i, p) = c * vip - std::conj(sp) * viq;
                        v->at(i, q) = sp * vip + c * viq;
                    }
                }
            }
        }
    }
    if (off_diagonal_norm(a) >= tol)
        throw std::runtime_error("Jacobi eigensolver did not converge");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(CMatrix a, double tol) {
    jacobi(a, nullptr, tol);
    std::vector<double> ev(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ev[i] = a.at(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

EigenSystem hermitian_eigensystem(CMatrix a, double tol) {
    CMatrix v;
    jacobi(a, &v, tol);
    const std::size_t n = a.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a.at(i, i).real() < a.at(j, j).real(); });
    EigenSystem out{std::vector<double>(n), CMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a.at(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
    }
    return out;
}

}  // namespace entrocone
