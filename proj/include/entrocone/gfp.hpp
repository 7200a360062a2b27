#pragma once

#include <cstdint>
#include <vector>

namespace entrocone::gfp {

// Dense row-major matrix over Z_p, entries reduced to [0, p).
struct Matrix {
    unsigned p = 2;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> a;

    Matrix() = default;
    Matrix(unsigned p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::uint32_t inverse_mod(std::uint32_t x, unsigned p);

// Row rank via Gaussian elimination (operates on a copy).
std::size_t rank(Matrix m);

// Basis of the right kernel {v : m v = 0}, one kernel vector per row.
Matrix kernel_basis(const Matrix& m);

}  // namespace entrocone::gfp
