#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "entrocone/entropy_vector.hpp"
#include "entrocone/exec.hpp"
#include "entrocone/gfp.hpp"
#include "entrocone/groups.hpp"
#include "entrocone/party.hpp"

namespace entrocone::stab {

// Pauli/Weyl element modulo phases: X^{x_i} Z^{z_i} on each qudit. Entropies
// only depend on the central quotient, so phases are never tracked here.
struct PauliElement {
    unsigned p = 2;
    std::vector<std::uint32_t> x, z;  // length n, entries in [0, p)

    // symplectic form <g,h> = x_g . z_h - z_g . x_h mod p; 0 iff commuting
    std::uint32_t symplectic(const PauliElement& other) const;
};

struct ValidationReport {
    bool valid = false;
    bool maximal = false;
    std::size_t k = 0;  // number of independent generators
    std::string error;  // offending pair / dependency when invalid
};

// Stabiliser group over one prime: k mutually commuting independent
// generators on n qudits plus a partition of the qudits into parties.
struct StabiliserGroup {
    unsigned prime = 2;
    std::size_t qudits = 0;
    PartySystem parties{std::vector<std::string>{"a"}};
    std::vector<int> qudit_party;          // size n, party index per qudit
    std::vector<PauliElement> generators;  // k <= n rows

    std::size_t party_qudit_count(int party) const;
    std::vector<std::size_t> qudits_of(mask_t party_subset) const;
};

ValidationReport validate(const StabiliserGroup& g);

// Exponent m with |G_J^| = p^m: dimension of the space of generator
// combinations supported entirely inside the parties of J.
std::size_t subgroup_order_exponent(const StabiliserGroup& g, mask_t j);

// Exact entropy vector of the pure stabiliser state, units log2(p):
// S(J) = (#qudits in J) - m_J. Requires a maximal group (k = n).
EntropyVector entropy_vector(const StabiliserGroup& g, ExecPolicy exec = ExecPolicy::parallel);

enum class PaperTag { R0, R1, R2, R3, R4, R5, R6, QuantumCounterexample };

PaperTag parse_tag(const std::string& s);
std::string tag_name(PaperTag t);

// Witness stabiliser groups for the extreme rays. QuantumCounterexample is
// not a stabiliser state and is built in the quantum module instead.
StabiliserGroup build_paper_group(PaperTag tag);

// Maximal group by rejection sampling: uniform symplectic rows, kept when
// commuting with and independent of the current set. Deterministic per seed.
StabiliserGroup random_stabiliser_group(std::uint64_t seed, unsigned p, std::size_t n,
                                        const PartySystem& parties);

// S = H - h0 with H(J) = n - m_{J^c} (a group poly-matroid over the central
// quotient) and h0(J) = #qudits in J, all in units of log2(p).
struct BalancedDecomposition {
    EntropyVector group_part;  // H
    ModularPart modular_part;  // h0
};

BalancedDecomposition balanced_decomposition(const StabiliserGroup& g);

// Materializes the central quotient as Z_p^k with the per-party subgroups
// G^_{X\x}; requires p^k <= 4096.
groups::SubgroupFamily to_subgroup_family(const StabiliserGroup& g);

// Text format:
//   prime: 2
//   parties: a:1 b:1 c:1 d:2 e:2
//   gen: x 1 1 0 0 0 0 0 | z 0 0 0 0 0 0 0
// For p = 2, "gen: XXIZZYI" Pauli-string shorthand is also accepted.
void write_stab(std::ostream& out, const StabiliserGroup& g);
StabiliserGroup read_stab(std::istream& in);

}  // namespace entrocone::stab
