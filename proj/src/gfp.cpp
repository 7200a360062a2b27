#include "entrocone/gfp.hpp"

#include <stdexcept>

namespace entrocone::gfp {

std::uint32_t inverse_mod(std::uint32_t x, unsigned p) {
    x %= p;
    if (x == 0) throw std::domain_error("no inverse of 0 mod p");
    // extended Euclid
    long long t = 0, new_t = 1, r = p, new_r = x;
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    long long out = t % p;
    if (out < 0) out += p;
    return static_cast<std::uint32_t>(out);
}

namespace {

// In-place reduction to row echelon form; returns pivot column per pivot row.
std::vector<std::size_t> echelon(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const unsigned long long p = m.p;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(pivot, j));
        const std::uint32_t inv = inverse_mod(m.at(row, col), m.p);
        for (std::size_t j = col; j < m.cols; ++j)
            m.at(row, j) = static_cast<std::uint32_t>(m.at(row, j) * (unsigned long long)inv % p);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            const unsigned long long f = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j) {
                unsigned long long v = m.at(i, j) + (p - f) * m.at(row, j);
                m.at(i, j) = static_cast<std::uint32_t>(v % p);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(Matrix m) { return echelon(m).size(); }

Matrix kernel_basis(const Matrix& m) {
    Matrix e = m;
    auto pivots = echelon(e);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    Matrix out(m.p, m.cols - pivots.size(), m.cols);
    std::size_t k = 0;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        out.at(k, free_col) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::uint32_t v = e.at(r, free_col);
            if (v) out.at(k, pivots[r]) = m.p - v;
        }
        ++k;
    }
    return out;
}

}  // namespace entrocone::gfp
