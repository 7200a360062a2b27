#include "entrocone/cone.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entrocone::cone {

namespace {

int compare(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c) return c;
    }
    return 0;
}

Integer dot(const std::vector<Integer>& row, const std::vector<Integer>& ray) {
    Integer s = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0 && ray[i] != 0) s += row[i] * ray[i];
    return s;
}

// Growing row-space basis over Q, integer rows kept gcd-reduced.
struct RankBasis {
    std::vector<std::vector<Integer>> rows;  // echelon rows keyed by pivot()

    static std::size_t pivot(const std::vector<Integer>& r) {
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] != 0) return i;
        return r.size();
    }

    bool add(std::vector<Integer> r) {
        for (const auto& base : rows) {
            std::size_t p = pivot(base);
            if (r[p] == 0) continue;
            Integer a = base[p], b = r[p];
            for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] * a - base[i] * b;
            reduce_by_content(r);
        }
        if (pivot(r) == r.size()) return false;
        rows.push_back(std::move(r));
        std::sort(rows.begin(), rows.end(),
                  [](const auto& x, const auto& y) { return pivot(x) < pivot(y); });
        return true;
    }

    std::size_t rank() const { return rows.size(); }
};

// Tight-constraint sets as dynamic bitsets.
struct Bits {
    std::vector<std::uint64_t> w;

    void resize(std::size_t n) { w.assign((n + 63) / 64, 0); }
    void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
    void push(std::size_t n, bool v) {
        if (n / 64 >= w.size()) w.push_back(0);
        if (v) set(n);
    }
    static std::size_t and_count(const Bits& a, const Bits& b) {
        std::size_t c = 0;
        for (std::size_t i = 0; i < std::min(a.w.size(), b.w.size()); ++i)
            c += __builtin_popcountll(a.w[i] & b.w[i]);
        return c;
    }
    static std::vector<std::size_t> and_indices(const Bits& a, const Bits& b) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < std::min(a.w.size(), b.w.size()); ++i) {
            std::uint64_t x = a.w[i] & b.w[i];
            while (x) {
                out.push_back(i * 64 + static_cast<std::size_t>(__builtin_ctzll(x)));
                x &= x - 1;
            }
        }
        return out;
    }
};

struct DDRay {
    std::vector<Integer> v;
    Bits tight;
};

// Exact inverse via Gauss-Jordan; rows are the d x d basis matrix.
std::vector<std::vector<Rational>> invert(const std::vector<std::vector<Integer>>& basis) {
    const std::size_t d = basis.size();
    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(2 * d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) a[i][j] = Rational(basis[i][j]);
        a[i][d + i] = 1;
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && a[piv][col] == 0) ++piv;
        if (piv == d) throw std::logic_error("singular basis in double description init");
        std::swap(a[col], a[piv]);
        Rational lead = a[col][col];
        for (auto& x : a[col]) x /= lead;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (std::size_t j = 0; j < 2 * d; ++j) a[i][j] -= f * a[col][j];
        }
    }
    std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) inv[i][j] = a[i][d + j];
    return inv;
}

}  // namespace

void RationalCone::add(std::vector<Rational> row, std::string name) {
    if (dim == 0) dim = row.size();
    if (row.size() != dim) throw std::invalid_argument("inequality dimension mismatch");
    inequalities.push_back(std::move(row));
    names.push_back(name.empty() ? "ineq" + std::to_string(inequalities.size()) : std::move(name));
}

void RationalCone::add(const ineq::InequalityInstance& inst) {
    add(inst.functional.dense_row(), inst.name);
}

std::vector<Ray> extreme_rays(const RationalCone& cone, ExecPolicy exec) {
    const std::size_t d = cone.dim;
    if (d == 0 || d > 31) throw std::invalid_argument("cone dimension must be 1..31");

    // integer rows, zero rows dropped, duplicates removed
    std::vector<std::vector<Integer>> rows;
    {
        std::map<std::vector<Integer>, bool> seen;
        for (const auto& q : cone.inequalities) {
            auto r = to_integer_vector(q);
            if (RankBasis::pivot(r) == r.size()) continue;
            if (seen.emplace(r, true).second) rows.push_back(std::move(r));
        }
    }
    if (rows.empty()) throw std::invalid_argument("cone with no constraints is not pointed");

    // insertion order: support size, then lexicographic
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        std::size_t sa = 0, sb = 0;
        for (const auto& x : a) sa += x != 0;
        for (const auto& x : b) sb += x != 0;
        if (sa != sb) return sa < sb;
        return compare(a, b) < 0;
    });

    // pointedness: the rows must span R^d
    {
        RankBasis rb;
        for (const auto& r : rows) rb.add(r);
        if (rb.rank() != d)
            throw std::invalid_argument("cone is not pointed (lineality space is nonzero)");
    }

    // greedy initial basis in insertion order
    std::vector<std::size_t> basis_idx;
    {
        RankBasis rb;
        for (std::size_t i = 0; i < rows.size() && rb.rank() < d; ++i)
            if (rb.add(rows[i])) basis_idx.push_back(i);
    }
    std::vector<bool> in_basis(rows.size(), false);
    for (auto i : basis_idx) in_basis[i] = true;

    // processed rows: basis first, then the rest in insertion order
    std::vector<std::vector<Integer>> proc;
    std::vector<std::vector<Integer>> pending;
    std::vector<std::vector<Integer>> basis;
    for (auto i : basis_idx) basis.push_back(rows[i]);
    proc = basis;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!in_basis[i]) pending.push_back(rows[i]);

    // rays of the simplicial basis cone: columns of basis^{-1}
    std::vector<DDRay> rays;
    {
        auto inv = invert(basis);
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<Rational> col(d);
            for (std::size_t i = 0; i < d; ++i) col[i] = inv[i][j];
            DDRay r;
            r.v = to_integer_vector(col);
            r.tight.resize(d);
            for (std::size_t i = 0; i < d; ++i)
                if (i != j) r.tight.set(i);
            rays.push_back(std::move(r));
        }
    }

    auto recompute_tight = [&](DDRay& r) {
        r.tight.resize(proc.size());
        for (std::size_t i = 0; i < proc.size(); ++i)
            if (dot(proc[i], r.v) == 0) r.tight.set(i);
    };

    auto adjacent = [&](const DDRay& a, const DDRay& b) {
        if (d >= 2 && Bits::and_count(a.tight, b.tight) < d - 2) return false;
        RankBasis rb;
        for (auto idx : Bits::and_indices(a.tight, b.tight)) rb.add(proc[idx]);
        return rb.rank() == d - 2;
    };

    for (const auto& f : pending) {
        std::vector<Integer> value(rays.size());
        std::vector<int> side(rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            value[i] = dot(f, rays[i].v);
            side[i] = sign(value[i]);
            any_neg |= side[i] < 0;
        }
        const std::size_t cur = proc.size();
        if (!any_neg) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                rays[i].tight.push(cur, side[i] == 0);
            proc.push_back(f);
            continue;
        }

        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (side[i] > 0) pos.push_back(i);
            if (side[i] < 0) neg.push_back(i);
        }

        // Motzkin step: combine adjacent (+,-) pairs onto the hyperplane
        const std::size_t pair_count = pos.size() * neg.size();
        std::vector<std::optional<std::vector<Integer>>> combined(pair_count);
        auto combine_pair = [&](std::size_t pi) {
            const DDRay& rp = rays[pos[pi / neg.size()]];
            const DDRay& rn = rays[neg[pi % neg.size()]];
            if (!adjacent(rp, rn)) return;
            const Integer& sp = value[pos[pi / neg.size()]];
            const Integer& sn = value[neg[pi % neg.size()]];
            std::vector<Integer> v(d);
            for (std::size_t c = 0; c < d; ++c) v[c] = sp * rn.v[c] - sn * rp.v[c];
            reduce_by_content(v);
            combined[pi] = std::move(v);
        };
        if (exec == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
            for (long long pi = 0; pi < static_cast<long long>(pair_count); ++pi)
                combine_pair(static_cast<std::size_t>(pi));
        } else {
            for (std::size_t pi = 0; pi < pair_count; ++pi) combine_pair(pi);
        }

        std::vector<DDRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (side[i] < 0) continue;
            rays[i].tight.push(cur, side[i] == 0);
            next.push_back(std::move(rays[i]));
        }
        proc.push_back(f);
        std::map<std::vector<Integer>, bool> fresh;
        for (auto& c : combined) {
            if (!c || !fresh.emplace(*c, true).second) continue;
            DDRay r;
            r.v = std::move(*c);
            recompute_tight(r);
            next.push_back(std::move(r));
        }
        rays = std::move(next);
    }

    // certification: feasibility and extremality of every output ray
    std::vector<Ray> out;
    for (auto& r : rays) {
        RankBasis rb;
        std::size_t tight_count = 0;
        for (const auto& row : proc) {
            Integer s = dot(row, r.v);
            if (sign(s) < 0) throw std::logic_error("double description produced an infeasible ray");
            if (s == 0) {
                rb.add(row);
                ++tight_count;
            }
        }
        if (rb.rank() != d - 1)
            throw std::logic_error("double description produced a non-extreme ray");
        out.push_back(std::move(r.v));
    }
    std::sort(out.begin(), out.end(), [](const Ray& a, const Ray& b) { return compare(a, b) < 0; });
    return out;
}

RationalCone build_quantum_ingleton_cone() {
    const PartySystem sys = PartySystem::alphabetic(4);
    RationalCone cone;
    cone.dim = 15;
    std::map<std::vector<Rational>, bool> seen;
    auto push = [&](const ineq::InequalityInstance& inst) {
        auto key = inst.functional.normalized().dense_row();
        if (seen.emplace(std::move(key), true).second) cone.add(inst);
    };
    for (const auto& inst : ineq::quantum_family(sys)) push(inst);
    for (const auto& inst : ineq::ingleton_permutations(sys, {0, 1, 2, 3})) push(inst);
    return cone;
}

RationalCone build_pure_5party_cone() {
    const PartySystem sys5 = PartySystem::alphabetic(5);
    const auto& rows = table_row_masks();
    std::map<mask_t, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;

    // S(K) rewritten to the canonical coordinates via S(J) = S(J^c)
    auto add_term = [&](std::vector<Rational>& row, mask_t k, long coeff) {
        if (k == 0 || k == 31) return;  // S(empty) = S(full) = 0
        mask_t key = popcount(k) <= 2 ? k : sys5.complement(k);
        row[row_of.at(key)] += coeff;
    };

    RationalCone cone;
    cone.dim = 15;
    std::map<std::vector<Integer>, bool> seen;
    auto push = [&](std::vector<Rational> row, const std::string& name) {
        bool zero = true;
        for (const auto& x : row) zero &= x == 0;
        if (zero) return;
        auto key = to_integer_vector(row);
        if (seen.emplace(std::move(key), true).second) cone.add(std::move(row), name);
    };

    for (mask_t k = 1; k <= 31; ++k) {
        std::vector<Rational> row(15, Rational(0));
        add_term(row, k, 1);
        push(std::move(row), "nonneg(" + sys5.subset_label(k) + ")");
    }
    for (mask_t a = 1; a <= 31; ++a) {
        for (mask_t b = a; b <= 31; ++b) {
            std::vector<Rational> row(15, Rational(0));
            add_term(row, a, 1);
            add_term(row, b, 1);
            add_term(row, a & b, -1);
            add_term(row, a | b, -1);
            push(std::move(row),
                 "SSA(" + sys5.subset_label(a) + ";" + sys5.subset_label(b) + ")");
        }
    }
    return cone;
}

const std::vector<mask_t>& table_row_masks() {
    // a b c d e ab ac ad ae bc bd be cd ce de over bits a=1..e=16
    static const std::vector<mask_t> rows = {1,  2,  4,  8, 16, 3,  5, 9,
                                             17, 6,  10, 18, 12, 20, 24};
    return rows;
}

std::string table_row_label(std::size_t row) {
    const PartySystem sys5 = PartySystem::alphabetic(5);
    mask_t k = table_row_masks().at(row);
    std::string label = sys5.subset_label(k);
    if (k & 16) label += " (= " + sys5.subset_label(sys5.complement(k)) + ")";
    return label;
}

std::vector<Integer> lift_to_pure(const Ray& ray4) {
    if (ray4.size() != 15) throw std::invalid_argument("expected a 15-dim 4-party ray");
    std::vector<Integer> out;
    out.reserve(15);
    for (mask_t k : table_row_masks()) {
        if (!(k & 16)) {
            out.push_back(ray4[k - 1]);  // subset of abcd
        } else {
            mask_t j = 15 & ~(k & 15);  // complement within abcd of K \ {e}
            out.push_back(ray4[j - 1]);
        }
    }
    return out;
}

Ray from_pure_rows(const std::vector<Integer>& rows15) {
    if (rows15.size() != 15) throw std::invalid_argument("expected 15 table rows");
    std::map<mask_t, std::size_t> row_of;
    for (std::size_t i = 0; i < 15; ++i) row_of[table_row_masks()[i]] = i;
    Ray out(15);
    for (mask_t j = 1; j <= 15; ++j) {
        mask_t key = popcount(j) <= 2 ? j : (15 & ~j) | 16;
        if (j == 15) key = 16;
        out[j - 1] = rows15[row_of.at(key)];
    }
    return out;
}

const std::array<std::array<long, 15>, 7> kTable1Columns = {{
    // a b c d e ab ac ad ae bc bd be cd ce de
    {1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},  // ray 0
    {1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0},  // ray 1
    {1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},  // ray 2
    {1, 1, 1, 1, 0, 2, 2, 2, 1, 2, 2, 1, 2, 1, 1},  // ray 3
    {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},  // ray 4
    {2, 1, 1, 1, 1, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2},  // ray 5
    {1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 2, 2, 2},  // ray 6
}};

std::array<Ray, 7> table1_rays_4party() {
    std::array<Ray, 7> out;
    for (int c = 0; c < 7; ++c) {
        std::vector<Integer> rows(15);
        for (int i = 0; i < 15; ++i) rows[i] = kTable1Columns[c][i];
        out[c] = from_pure_rows(rows);
    }
    return out;
}

namespace {

// induced action of a party relabeling on subset masks
Ray apply_permutation(const Ray& ray, const std::array<int, 4>& perm) {
    Ray out(15);
    for (mask_t m = 1; m <= 15; ++m) {
        mask_t image = 0;
        for (int b = 0; b < 4; ++b)
            if (m & (mask_t{1} << b)) image |= mask_t{1} << perm[b];
        out[image - 1] = ray[m - 1];
    }
    return out;
}

}  // namespace

RayOrbit canonicalize_orbit(const Ray& ray4) {
    if (ray4.size() != 15) throw std::invalid_argument("expected a 15-dim 4-party ray");
    std::array<int, 4> perm = {0, 1, 2, 3};
    std::vector<Ray> images;
    do images.push_back(apply_permutation(ray4, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(images.begin(), images.end(),
              [](const Ray& a, const Ray& b) { return compare(a, b) < 0; });
    images.erase(std::unique(images.begin(), images.end()), images.end());
    return RayOrbit{images.front(), images.size()};
}

MatchReport match_table1(const std::vector<Ray>& rays) {
    MatchReport rep;
    rep.total_rays = rays.size();

    std::map<Ray, int> expected;  // canonical representative -> table column
    std::map<int, std::size_t> expected_size;
    auto table = table1_rays_4party();
    for (int c = 0; c < 7; ++c) {
        auto orbit = canonicalize_orbit(table[c]);
        expected[orbit.representative] = c;
        expected_size[c] = orbit.orbit_size;
    }

    std::map<Ray, std::size_t> found;
    for (const auto& r : rays) ++found[canonicalize_orbit(r).representative];

    rep.matched = true;
    for (const auto& [r, count] : found) {
        auto it = expected.find(r);
        if (it == expected.end()) {
            rep.matched = false;
            rep.detail += "unexpected orbit representative found\n";
            continue;
        }
        rep.orbit_sizes.emplace_back(it->second, count);
        if (count != expected_size[it->second]) {
            rep.matched = false;
            rep.detail += "orbit of table column " + std::to_string(it->second) +
                          " has wrong multiplicity\n";
        }
    }
    for (const auto& [r, c] : expected) {
        if (!found.count(r)) {
            rep.matched = false;
            rep.detail += "table column " + std::to_string(c) + " missing from ray set\n";
        }
    }
    std::sort(rep.orbit_sizes.begin(), rep.orbit_sizes.end());
    return rep;
}

MembershipReport membership(const RationalCone& cone, const std::vector<Rational>& point) {
    if (point.size() != cone.dim) throw std::invalid_argument("point dimension mismatch");
    MembershipReport rep;
    for (std::size_t i = 0; i < cone.inequalities.size(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cone.dim; ++j) s += cone.inequalities[i][j] * point[j];
        if (s == 0) rep.tight.push_back(cone.names[i]);
        if (s < 0) rep.violated.push_back(cone.names[i]);
    }
    rep.where = !rep.violated.empty() ? Where::outside
                : !rep.tight.empty()  ? Where::boundary
                                      : Where::inside;
    return rep;
}

std::vector<Rational> to_cone_point(const EntropyVector& v) {
    if (!v.is_exact()) throw std::invalid_argument("cone points require exact entropy vectors");
    const int n = v.system().size();
    if (n != 4 && !(n == 5 && v.pure()))
        throw std::invalid_argument("expected a 4-party vector or a pure 5-party vector");
    std::vector<Rational> out(15);
    for (mask_t j = 1; j <= 15; ++j) out[j - 1] = v.exact_value(j);
    return out;
}

Ray to_ray(const EntropyVector& v) {
    return to_integer_vector(to_cone_point(v));
}

}  // namespace entrocone::cone
