#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entrocone/functional.hpp"

namespace entrocone::ineq {

enum class Family { NonNeg, SSA, MONO, WMO, Ingleton, Kinser, Matus, Custom };

std::string family_name(Family f);

struct InequalityInstance {
    std::string name;
    LinearFunctional functional;
    Family family = Family::Custom;
};

// All non-negativity, SSA and monotonicity instances over subset pairs,
// scaled-duplicate and zero functionals removed.
std::vector<InequalityInstance> shannon_family(const PartySystem& sys);

// As above with monotonicity replaced by weak monotonicity.
std::vector<InequalityInstance> quantum_family(const PartySystem& sys);

// Ing(AB:CD) = I(A:B|C) + I(A:B|D) + I(C:D) - I(A:B). Subsets must be
// pairwise disjoint and, unless allow_empty is set, nonempty.
InequalityInstance ingleton(const PartySystem& sys, mask_t a, mask_t b, mask_t c,
                            mask_t d, bool allow_empty = false);

// The 6 distinct Ingleton functionals over 4 distinct singleton parties
// (orderings modulo A<->B and C<->D).
std::vector<InequalityInstance> ingleton_permutations(const PartySystem& sys,
                                                      const std::vector<int>& parties);

// Kinser inequality K[N] over an ordered list of N >= 4 distinct parties
// playing roles 1..N:
//   I(1:N|3) + H(1N) - H(12) - H(3N) + H(23) + sum_{k=4..N} I(2:k-1|k) >= 0.
InequalityInstance kinser(const PartySystem& sys, const std::vector<int>& parties);

// Matus family member for integer t >= 0:
//   t*Ing(AB:CD) + I(A:B|D) + t(t+1)/2 * [I(B:D|C) + I(C:D|B)] >= 0.
InequalityInstance matus(const PartySystem& sys, long t, int a, int b, int c, int d);

struct CheckedInstance {
    std::string name;
    Family family = Family::Custom;
    Margin margin;
    bool violated = false;
};

struct SatisfactionReport {
    std::string vector_id;
    std::vector<CheckedInstance> results;
    std::vector<size_t> violated;  // indices into results

    bool all_satisfied() const { return violated.empty(); }
    // CSV rows "instance,margin,verdict".
    void write_csv(std::ostream& out) const;
    std::string summary() const;
};

SatisfactionReport check(const EntropyVector& v,
                         const std::vector<InequalityInstance>& instances,
                         std::string vector_id = "");

}  // namespace entrocone::ineq
