#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "entrocone/entropy_vector.hpp"
#include "entrocone/exec.hpp"
#include "entrocone/ineq.hpp"
#include "entrocone/party.hpp"
#include "entrocone/rational.hpp"

namespace entrocone::cone {

// Extreme ray as a gcd-reduced integer vector (direction preserved).
using Ray = std::vector<Integer>;

// Pointed polyhedral cone {x : f.x >= 0 for all rows f}, exact rationals.
struct RationalCone {
    std::size_t dim = 0;
    std::vector<std::vector<Rational>> inequalities;
    std::vector<std::string> names;  // parallel to inequalities
    std::vector<Ray> rays;           // optional V-description

    void add(std::vector<Rational> row, std::string name = "");
    void add(const ineq::InequalityInstance& inst);
};

// Incremental double description (Motzkin) with exact arithmetic. Insertion
// order: constraints sorted by support size, ties lexicographic. Throws on a
// non-pointed cone or dim > 31. Output rays are canonical and sorted; every
// ray is certified against all inequalities and for tight rank dim-1.
std::vector<Ray> extreme_rays(const RationalCone& cone,
                              ExecPolicy exec = ExecPolicy::parallel);

// 15-dimensional cone over nonempty subsets of {a,b,c,d}: deduped
// quantum family ((+), SSA, WMO) plus the 6 Ingleton permutations.
RationalCone build_quantum_ingleton_cone();

// Cross-check build: vectors over subsets of {a,b,c,d,e} satisfying (+) and
// SSA with S(J) = S(J^c) eliminated into the 15 canonical coordinates
// (singletons and pairs, Table-1 row order).
RationalCone build_pure_5party_cone();

// Canonical coordinate order of the purified representation:
// a b c d e ab ac ad ae bc bd be cd ce de.
const std::vector<mask_t>& table_row_masks();  // masks over abcde
std::string table_row_label(std::size_t row);  // "ae (= bcd)" style

// 4-party representation (index = subset mask - 1) <-> purified rows.
std::vector<Integer> lift_to_pure(const Ray& ray4);
Ray from_pure_rows(const std::vector<Integer>& rows15);

// Table 1 columns by ray number 0..6, in table row order.
extern const std::array<std::array<long, 15>, 7> kTable1Columns;
std::array<Ray, 7> table1_rays_4party();

struct RayOrbit {
    Ray representative;  // lexicographically minimal image under S4
    std::size_t orbit_size = 0;
};

// All 24 relabelings of {a,b,c,d} acting on the 15 subset coordinates; the
// purifying party is fixed.
RayOrbit canonicalize_orbit(const Ray& ray4);

struct MatchReport {
    bool matched = false;
    std::size_t total_rays = 0;
    std::vector<std::pair<int, std::size_t>> orbit_sizes;  // (table column, size)
    std::string detail;
};

// Groups rays into S4 orbits and compares the representatives against the
// seven Table 1 columns.
MatchReport match_table1(const std::vector<Ray>& rays);

enum class Where { inside, boundary, outside };

struct MembershipReport {
    Where where = Where::outside;
    std::vector<std::string> tight;
    std::vector<std::string> violated;
};

MembershipReport membership(const RationalCone& cone, const std::vector<Rational>& point);

// Exact 4-party cone point from an entropy vector: entries at masks 1..15.
// Accepts 4-party vectors and 5-party pure vectors (restriction to abcd).
std::vector<Rational> to_cone_point(const EntropyVector& v);
Ray to_ray(const EntropyVector& v);

}  // namespace entrocone::cone
