#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entrocone/entropy_vector.hpp"
#include "entrocone/functional.hpp"
#include "entrocone/gfp.hpp"
#include "entrocone/party.hpp"
#include "entrocone/rational.hpp"

namespace entrocone::groups {

using elem_t = std::uint16_t;

// Finite group given by a full multiplication table, order <= 4096.
class FiniteGroup {
public:
    FiniteGroup(std::size_t order, std::vector<elem_t> table);

    std::size_t order() const { return n_; }
    elem_t identity() const { return identity_; }
    elem_t mul(elem_t a, elem_t b) const { return table_[a * n_ + b]; }
    elem_t inverse(elem_t a) const { return inverse_[a]; }

    // Associativity check: exhaustive for order <= 64, else 1000 seeded triples.
    void validate(std::uint64_t seed = 0) const;

    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
    static FiniteGroup dihedral(std::size_t n);   // order 2n
    static FiniteGroup quaternion8();
    static FiniteGroup heisenberg(unsigned p);    // order p^3, upper unitriangular 3x3
    static FiniteGroup symmetric(int n);          // n <= 5
    static FiniteGroup elementary_abelian(unsigned p, unsigned k);

private:
    std::size_t n_;
    std::vector<elem_t> table_;
    std::vector<elem_t> inverse_;
    elem_t identity_ = 0;
};

// Subgroup helpers; subgroups are sorted element lists.
std::vector<elem_t> subgroup_closure(const FiniteGroup& g, std::vector<elem_t> gens);
bool is_subgroup(const FiniteGroup& g, const std::vector<elem_t>& h);
// When not normal and witness is given, *witness = {g, h} with g h g^-1 not in H.
bool is_normal(const FiniteGroup& g, const std::vector<elem_t>& h,
               std::pair<elem_t, elem_t>* witness = nullptr);
std::vector<elem_t> intersect(const std::vector<elem_t>& a, const std::vector<elem_t>& b);
std::vector<elem_t> product_set(const FiniteGroup& g, const std::vector<elem_t>& a,
                                const std::vector<elem_t>& b);

// One subgroup per party of a common parent group.
struct SubgroupFamily {
    FiniteGroup group;
    PartySystem parties;
    std::vector<std::vector<elem_t>> subgroups;  // size = parties.size()

    void validate() const;  // each G_x a subgroup of the parent
    // G_J = intersection over parties in J (full group for J = empty).
    std::vector<elem_t> subgroup_of(mask_t j) const;
    // |G| / |G_J|, exact.
    std::size_t index_of(mask_t j) const;
};

// H(J) = log2 |G / G_J| as a NumericBits vector.
EntropyVector group_polymatroid(const SubgroupFamily& family);

// Exact sign of sum_J c_J * log |G/G_J| via integer product comparison.
int sign_on_group(const SubgroupFamily& family, const LinearFunctional& f);

// Joint distribution over finite per-party alphabets with exact probabilities.
struct Distribution {
    PartySystem parties{std::vector<std::string>{"a"}};
    std::vector<int> alphabet;                 // per-party alphabet size
    std::map<std::vector<int>, Rational> atoms;

    void validate() const;  // probabilities >= 0 summing to exactly 1
    Distribution marginal(mask_t j) const;
    double entropy_bits() const;
    // Exact check; fills support size when uniform.
    bool is_uniform(std::size_t* support = nullptr) const;

    // Lines "<t_1> ... <t_N> <p/q>" after headers "parties:" and "alphabet:".
    void write(std::ostream& out) const;
    static Distribution read(std::istream& in);
};

// Shannon entropies of all marginals, in bits.
EntropyVector classical_polymatroid(const Distribution& d);

// Joint distribution of the coset variables X_j = gG_j for uniform g.
Distribution coset_distribution(const SubgroupFamily& family);

// C, D independent uniform bits; A = C or D, B = C and D. Violates Ingleton.
Distribution and_or_counterexample();

struct CommonInformation {
    SubgroupFamily extended;  // family plus the new party zeta (last position)
    int zeta_party = -1;
};

// Extends the family by G_zeta = G_A * G_B, where G_A, G_B are the subgroups
// of the (possibly composite) parties A and B. Requires both normal.
CommonInformation common_information_extension(const SubgroupFamily& family, mask_t a,
                                               mask_t b, const std::string& zeta_label = "z");

// Verifies H(zeta|A) = 0, H(zeta|B) = 0, H(zeta) = I(A:B) on the extension,
// and (Prop 3.3 cross-check) Ingleton >= 0 for every (A,B,C,D) with C, D
// drawn from the base parties.
bool check_common_information(const EntropyVector& base, const EntropyVector& extended,
                              mask_t a, mask_t b, int zeta_party, double tol_bits = 1e-9);

// Subspace V_x per party, given by generator rows over Z_p.
struct SubspaceFamily {
    unsigned p = 2;
    std::size_t dim = 0;
    PartySystem parties;
    std::vector<gfp::Matrix> generators;  // rows = spanning vectors of V_x

    // H(J) = dim sum_{x in J} V_x, exact in units of log2(p).
    EntropyVector polymatroid() const;
};

// Group file format: "order: n", "table:" with n rows of n indices, then
// "subgroup <label>: i j k ..." lines.
SubgroupFamily read_group_family(std::istream& in);
void write_group_family(std::ostream& out, const SubgroupFamily& family);

}  // namespace entrocone::groups
