#pragma once

// Independent brute-force extreme-ray oracle for small cones: enumerate all
// (d-1)-subsets of constraints, solve the homogeneous system, and keep the
// kernel direction when it exists, is unique, and satisfies every
// constraint. Deliberately shares no code with the double description path.

#include <map>
#include <vector>

#include "entrocone/cone.hpp"
#include "entrocone/rational.hpp"

namespace entrocone::detail {

// kernel of an r x d rational matrix; returns basis vectors as rows
inline std::vector<std::vector<Rational>> kernel(std::vector<std::vector<Rational>> m,
                                                 std::size_t d) {
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < d && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        Rational lead = m[row][col];
        for (auto& x : m[row]) x /= lead;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = 0; j < d; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(d, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < d; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(d, Rational(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<cone::Ray> brute_force_rays(
    const cone::RationalCone& cone) {
    const std::size_t d = cone.dim;
    std::vector<std::vector<Rational>> rows = cone.inequalities;

    auto satisfies_all = [&](const std::vector<Integer>& v) {
        for (const auto& r : rows) {
            Rational s = 0;
            for (std::size_t j = 0; j < d; ++j) s += r[j] * Rational(v[j]);
            if (s < 0) return false;
        }
        return true;
    };

    std::map<std::vector<Integer>, bool> found;

    // enumerate all (d-1)-subsets of the constraints
    std::vector<std::size_t> idx;
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        if (idx.size() == d - 1) {
            std::vector<std::vector<Rational>> sub;
            for (auto i : idx) sub.push_back(rows[i]);
            auto basis = kernel(std::move(sub), d);
            if (basis.size() != 1) return;
            auto v = to_integer_vector(basis[0]);
            std::vector<Integer> neg(v.size());
            for (std::size_t j = 0; j < d; ++j) neg[j] = -v[j];
            if (satisfies_all(v)) found.emplace(std::move(v), true);
            if (satisfies_all(neg)) found.emplace(std::move(neg), true);
            return;
        }
        for (std::size_t i = start; i < rows.size(); ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    if (d == 1) {
        // no constraints needed: candidate directions are +-e_1
        std::vector<Integer> e{1}, ne{-1};
        if (satisfies_all(e)) found.emplace(e, true);
        if (satisfies_all(ne)) found.emplace(ne, true);
    } else if (rows.size() + 1 >= d) {
        recurse(recurse, 0);
    }

    std::vector<cone::Ray> out;
    for (const auto& [v, _] : found) out.push_back(v);
    return out;
}

}  // namespace entrocone::detail
