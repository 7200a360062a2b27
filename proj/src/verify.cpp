#include "entrocone/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "entrocone/cone.hpp"
#include "entrocone/detail/dd_oracle.hpp"
#include "entrocone/groups.hpp"
#include "entrocone/ineq.hpp"
#include "entrocone/quantum.hpp"
#include "entrocone/stab.hpp"

namespace entrocone::verify {

namespace {

constexpr double kTol = 1e-9;

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

const stab::PaperTag kWitnessTags[7] = {
    stab::PaperTag::R0, stab::PaperTag::R1, stab::PaperTag::R2, stab::PaperTag::R3,
    stab::PaperTag::R4, stab::PaperTag::R5, stab::PaperTag::R6};

// expected 5-party stabiliser vector from a Table 1 column via purity
Rational expected_entry(int column, mask_t k) {
    if (k == 0 || k == 31) return 0;
    const auto sys5 = PartySystem::alphabetic(5);
    mask_t key = popcount(k) <= 2 ? k : sys5.complement(k);
    const auto& rows = cone::table_row_masks();
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r] == key) return cone::kTable1Columns[column][r];
    return 0;
}

CriterionResult criterion_table1() {
    CriterionResult res{1, "Table 1 reproduction (exact ray enumeration)"};
    auto cone_h = cone::build_quantum_ingleton_cone();
    auto rays = cone::extreme_rays(cone_h);
    auto rep = cone::match_table1(rays);
    res.pass = rep.matched;
    res.detail = fmt("%zu rays, %zu orbits%s", rays.size(), rep.orbit_sizes.size(),
                     rep.matched ? "" : ("; " + rep.detail).c_str());
    return res;
}

CriterionResult criterion_witness_states() {
    CriterionResult res{2, "witness states realize the Table 1 rays (exact)"};
    res.pass = true;
    const unsigned expected_prime[7] = {2, 2, 2, 3, 2, 2, 3};
    for (int i = 0; i < 7; ++i) {
        auto g = stab::build_paper_group(kWitnessTags[i]);
        auto v = stab::entropy_vector(g);
        if (v.scale().prime != expected_prime[i]) {
            res.pass = false;
            res.detail = fmt("state R%d has the wrong scale", i);
            return res;
        }
        for (mask_t k = 1; k <= 31; ++k) {
            if (v.exact_value(k) != expected_entry(i, k)) {
                res.pass = false;
                res.detail = fmt("state R%d disagrees with the table at subset %u", i, k);
                return res;
            }
        }
    }
    res.detail = "7 states, 31 subsets each, integer-exact";
    return res;
}

CriterionResult criterion_projector_crosscheck() {
    CriterionResult res{3, "dense projector entropies match the symplectic engine"};
    res.pass = true;
    int checked = 0;
    for (int i = 0; i < 7; ++i) {
        auto g = stab::build_paper_group(kWitnessTags[i]);
        long dim = 1;
        bool fits = true;
        for (std::size_t q = 0; q < g.qudits; ++q) {
            dim *= g.prime;
            if (dim > 256) {
                fits = false;
                break;
            }
        }
        if (!fits) continue;  // R6 lives in dimension 6561
        auto proj = quantum::stabiliser_projector(g, std::vector<unsigned>(g.qudits, 0));
        auto dense = quantum::entropy_vector(proj.state, g.parties, g.qudit_party);
        auto exact = stab::entropy_vector(g);
        double worst = 0;
        for (mask_t k = 1; k <= 31; ++k)
            worst = std::max(worst, std::abs(dense.bits(k) - exact.bits(k)));
        if (worst > kTol) {
            res.pass = false;
            res.detail = fmt("state R%d deviates by %.2e bits", i, worst);
            return res;
        }
        ++checked;
    }
    res.detail = fmt("%d states with dimension <= 256, all within 1e-9 bits", checked);
    return res;
}

CriterionResult criterion_property_suite(std::uint64_t seed) {
    CriterionResult res{4, "Ingleton/Kinser/Matus hold exactly on random stabiliser groups"};
    const auto sys5 = PartySystem::alphabetic(5);
    long evaluations = 0;
    for (int i = 0; i < 300; ++i) {
        const unsigned p = (i % 2 == 0) ? 2 : 3;
        const std::size_t n = 5 + (i % (p == 2 ? 6 : 5));  // p=2: n<=10, p=3: n<=9
        auto g = stab::random_stabiliser_group(seed * 100003 + 9000 + i, p, n, sys5);
        auto v = stab::entropy_vector(g);
        for (int skip = 0; skip < 5; ++skip) {
            std::vector<int> four;
            for (int party = 0; party < 5; ++party)
                if (party != skip) four.push_back(party);
            for (const auto& inst : ineq::ingleton_permutations(sys5, four)) {
                ++evaluations;
                if (inst.functional.evaluate(v).exact_units < 0) {
                    res.detail = "violated " + inst.name;
                    return res;
                }
            }
            ++evaluations;
            if (ineq::kinser(sys5, four).functional.evaluate(v).exact_units < 0) {
                res.detail = "violated Kinser(4)";
                return res;
            }
            std::vector<int> perm = four;
            std::sort(perm.begin(), perm.end());
            do {
                for (long t = 0; t <= 3; ++t) {
                    ++evaluations;
                    auto inst = ineq::matus(sys5, t, perm[0], perm[1], perm[2], perm[3]);
                    if (inst.functional.evaluate(v).exact_units < 0) {
                        res.detail = "violated " + inst.name;
                        return res;
                    }
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        ++evaluations;
        if (ineq::kinser(sys5, {0, 1, 2, 3, 4}).functional.evaluate(v).exact_units < 0) {
            res.detail = "violated Kinser(5)";
            return res;
        }
    }
    res.pass = true;
    res.detail = fmt("300 groups, %ld exact evaluations, all nonnegative", evaluations);
    return res;
}

CriterionResult criterion_counterexamples() {
    CriterionResult res{5, "Ingleton violation of the and/or pair and the eq.-(7) state"};
    const double expected = -(5.0 - 3.0 * std::log2(3.0)) / 2.0;

    auto vc = groups::classical_polymatroid(groups::and_or_counterexample());
    auto sys = vc.system();
    auto ing = ineq::ingleton(sys, 1, 2, 4, 8).functional;
    const double classical = ing.evaluate(vc).value_bits;
    if (std::abs(classical - expected) > 1e-12) {
        res.detail = fmt("classical margin %.14f != %.14f", classical, expected);
        return res;
    }

    auto vq = quantum::entropy_vector(quantum::ingleton_violating_state(),
                                      PartySystem::alphabetic(4));
    const double qmargin = ing.evaluate(vq).value_bits;
    if (std::abs(qmargin - expected) > kTol) {
        res.detail = fmt("quantum margin %.12f != %.12f", qmargin, expected);
        return res;
    }

    for (const auto* v : {&vc, &vq}) {
        std::vector<int> perm = {0, 1, 2, 3};
        do {
            auto inst = ineq::matus(sys, 1, perm[0], perm[1], perm[2], perm[3]);
            if (inst.functional.evaluate(*v).value_bits < -kTol) {
                res.detail = "Matus t=1 violated on a counterexample";
                return res;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    res.pass = true;
    res.detail = fmt("both margins equal -(5-3log3)/2 = %.6f bits; Matus t=1 holds", expected);
    return res;
}

CriterionResult criterion_pure_states(std::uint64_t seed) {
    CriterionResult res{6, "purification identities on random pure 4-party states"};
    const auto sys = PartySystem::alphabetic(4);
    auto ing = ineq::ingleton(sys, 1, 2, 4, 8).functional;
    auto iabc = conditional_mutual_information(sys, 1, 2, 4);
    auto icda = conditional_mutual_information(sys, 4, 8, 1);
    for (int i = 0; i < 200; ++i) {
        auto psi = quantum::random_pure_state(seed * 77001 + i,
                                              quantum::HilbertFactorization{{2, 2, 2, 2}});
        auto v = quantum::entropy_vector(psi, sys);
        for (mask_t j = 1; j <= 15; ++j)
            if (std::abs(v.bits(j) - v.bits(15 ^ j)) > kTol) {
                res.detail = "complementarity violated";
                return res;
            }
        const double lhs = ing.evaluate(v).value_bits;
        const double rhs = iabc.evaluate(v).value_bits + icda.evaluate(v).value_bits;
        if (std::abs(lhs - rhs) > kTol || lhs < -kTol) {
            res.detail = fmt("pure-state identity failed: %.12f vs %.12f", lhs, rhs);
            return res;
        }
    }
    res.pass = true;
    res.detail = "200 states: S(J)=S(J^c), Ing = I(A:B|C)+I(C:D|A) >= 0";
    return res;
}

CriterionResult criterion_ssa_wmo(std::uint64_t seed) {
    CriterionResult res{7, "SSA and WMO on random mixed states"};
    long checked = 0;
    for (int i = 0; i < 500; ++i) {
        const int n = 2 + i % 3;
        auto sys = PartySystem::alphabetic(n);
        auto rho = quantum::random_density(seed * 50021 + 1000 + i,
                                           quantum::HilbertFactorization{
                                               std::vector<long>(n, 2)});
        auto v = quantum::entropy_vector(rho, sys);
        for (const auto& inst : ineq::quantum_family(sys)) {
            ++checked;
            if (inst.functional.evaluate(v).value_bits < -kTol) {
                res.detail = "violated " + inst.name;
                return res;
            }
        }
    }
    res.pass = true;
    res.detail = fmt("500 states, %ld margins >= -1e-9", checked);
    return res;
}

CriterionResult criterion_kinser_ingleton() {
    CriterionResult res{8, "Kinser(4) equals Ingleton under a relabeling (exact)"};
    const auto sys = PartySystem::alphabetic(4);
    auto k4 = ineq::kinser(sys, {0, 1, 2, 3}).functional.normalized();
    int matches = 0;
    std::string found;
    std::vector<int> perm = {0, 1, 2, 3};
    do {
        auto inst = ineq::ingleton(sys, mask_t{1} << perm[0], mask_t{1} << perm[1],
                                   mask_t{1} << perm[2], mask_t{1} << perm[3]);
        if (inst.functional.normalized() == k4) {
            ++matches;
            if (found.empty()) found = inst.name;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    res.pass = matches == 4;  // the A<->B, C<->D symmetry orbit
    res.detail = fmt("K[4] = %s (%d assignments)", found.c_str(), matches);
    return res;
}

CriterionResult criterion_chan_yeung(std::uint64_t seed) {
    CriterionResult res{9, "Chan-Yeung: coset variables realize the group poly-matroid"};
    using namespace groups;
    std::vector<FiniteGroup> pool;
    pool.push_back(FiniteGroup::symmetric(3));
    pool.push_back(FiniteGroup::symmetric(4));
    pool.push_back(FiniteGroup::dihedral(4));
    pool.push_back(FiniteGroup::dihedral(6));
    pool.push_back(FiniteGroup::quaternion8());
    pool.push_back(FiniteGroup::heisenberg(3));
    pool.push_back(FiniteGroup::cyclic(60));
    pool.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(8)));
    pool.push_back(FiniteGroup::elementary_abelian(2, 5));
    std::mt19937_64 rng(seed * 31337 + 5);
    for (int i = 0; i < 50; ++i) {
        const auto& g = pool[i % pool.size()];
        SubgroupFamily fam{g, PartySystem::alphabetic(3), {}};
        for (int party = 0; party < 3; ++party) {
            std::vector<elem_t> gens;
            for (int k = 0; k < 2; ++k) gens.push_back(static_cast<elem_t>(rng() % g.order()));
            fam.subgroups.push_back(subgroup_closure(g, gens));
        }
        auto dist = coset_distribution(fam);
        for (mask_t j = 1; j <= fam.parties.full_mask(); ++j) {
            std::size_t support = 0;
            if (!dist.marginal(j).is_uniform(&support) || support != fam.index_of(j)) {
                res.detail = fmt("family %d: marginal %u not uniform on |G/G_J|", i, j);
                return res;
            }
        }
    }
    res.pass = true;
    res.detail = "50 families over groups of order <= 64, exact";
    return res;
}

CriterionResult criterion_common_information(std::uint64_t seed) {
    CriterionResult res{10, "common information via normal subgroups (Thm 3.5 + Prop 3.3)"};
    using namespace groups;
    std::vector<FiniteGroup> pool;  // abelian and nilpotent
    pool.push_back(FiniteGroup::elementary_abelian(2, 4));
    pool.push_back(FiniteGroup::cyclic(16));
    pool.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(4), FiniteGroup::cyclic(4)));
    pool.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(9)));
    pool.push_back(FiniteGroup::quaternion8());
    pool.push_back(FiniteGroup::dihedral(4));
    pool.push_back(FiniteGroup::heisenberg(3));
    pool.push_back(FiniteGroup::direct_product(FiniteGroup::quaternion8(),
                                               FiniteGroup::cyclic(2)));
    std::mt19937_64 rng(seed * 90001 + 77);
    int done = 0;
    while (done < 50) {
        const auto& g = pool[done % pool.size()];
        SubgroupFamily fam{g, PartySystem::alphabetic(4), {}};
        for (int party = 0; party < 4; ++party) {
            std::vector<elem_t> sub;
            for (int attempt = 0; attempt < 64; ++attempt) {
                std::vector<elem_t> gens{static_cast<elem_t>(rng() % g.order())};
                if (rng() % 2) gens.push_back(static_cast<elem_t>(rng() % g.order()));
                sub = subgroup_closure(g, gens);
                if (is_normal(g, sub)) break;
                sub.clear();
            }
            if (sub.empty()) break;
            fam.subgroups.push_back(std::move(sub));
        }
        if (fam.subgroups.size() != 4) continue;

        auto ext = common_information_extension(fam, 1, 2);
        const auto& gz = ext.extended.subgroups.back();
        const auto& ga = fam.subgroups[0];
        const auto& gb = fam.subgroups[1];
        // Def 3.2 exactly, in subgroup-order arithmetic
        auto contains = [](const std::vector<elem_t>& big, const std::vector<elem_t>& small) {
            return std::includes(big.begin(), big.end(), small.begin(), small.end());
        };
        if (!contains(gz, ga) || !contains(gz, gb)) {
            res.detail = "H(zeta|A) = 0 or H(zeta|B) = 0 failed";
            return res;
        }
        if (gz.size() * intersect(ga, gb).size() != ga.size() * gb.size()) {
            res.detail = "H(zeta) = I(A:B) failed";
            return res;
        }
        // float-path check plus the Prop 3.3 runtime cross-check
        auto base = group_polymatroid(fam);
        auto extended = group_polymatroid(ext.extended);
        if (!check_common_information(base, extended, 1, 2, ext.zeta_party)) {
            res.detail = "Def 3.2 conditions failed on the entropy vectors";
            return res;
        }
        // Ingleton on every (A,B,C,D) tuple of base parties, exact
        std::vector<int> perm = {0, 1, 2, 3};
        do {
            auto inst = ineq::ingleton(fam.parties, mask_t{1} << perm[0], mask_t{1} << perm[1],
                                       mask_t{1} << perm[2], mask_t{1} << perm[3]);
            if (sign_on_group(fam, inst.functional) < 0) {
                res.detail = "exact Ingleton failed on a normal-subgroup family";
                return res;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        ++done;
    }
    res.pass = true;
    res.detail = "50 abelian/nilpotent families, Def 3.2 and Ingleton exact";
    return res;
}

CriterionResult criterion_dd_oracle(std::uint64_t seed) {
    CriterionResult res{11, "double description matches the brute-force oracle"};
    std::mt19937_64 rng(seed * 1237 + 99);
    int done = 0;
    while (done < 100) {
        const std::size_t d = 2 + rng() % 5;
        cone::RationalCone c;
        c.dim = d;
        if (done % 2 == 0)
            for (std::size_t i = 0; i < d; ++i) {
                std::vector<Rational> row(d, Rational(0));
                row[i] = 1;
                c.add(std::move(row));
            }
        const std::size_t extra = 1 + rng() % (12 - std::min<std::size_t>(d, 6));
        for (std::size_t r = 0; r < extra && c.inequalities.size() < 12; ++r) {
            std::vector<Rational> row(d);
            for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
            c.add(std::move(row));
        }
        std::vector<cone::Ray> dd;
        try {
            dd = cone::extreme_rays(c);
        } catch (const std::invalid_argument&) {
            continue;  // not pointed
        }
        auto oracle = detail::brute_force_rays(c);
        std::set<cone::Ray> a(dd.begin(), dd.end()), b(oracle.begin(), oracle.end());
        if (a != b) {
            res.detail = fmt("mismatch on cone %d (dim %zu)", done, d);
            return res;
        }
        ++done;
    }
    res.pass = true;
    res.detail = "100 cones (dim <= 6, <= 12 constraints), exact agreement";
    return res;
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed) {
    std::vector<std::function<CriterionResult()>> criteria = {
        [] { return criterion_table1(); },
        [] { return criterion_witness_states(); },
        [] { return criterion_projector_crosscheck(); },
        [seed] { return criterion_property_suite(seed); },
        [] { return criterion_counterexamples(); },
        [seed] { return criterion_pure_states(seed); },
        [seed] { return criterion_ssa_wmo(seed); },
        [] { return criterion_kinser_ingleton(); },
        [seed] { return criterion_chan_yeung(seed); },
        [seed] { return criterion_common_information(seed); },
        [seed] { return criterion_dd_oracle(seed); },
    };
    std::vector<CriterionResult> out;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        CriterionResult r = c();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

bool run_and_print(std::ostream& out, std::uint64_t seed) {
    bool all = true;
    for (const auto& r : run_all(seed)) {
        all = all && r.pass;
        out << (r.pass ? "[ok]   " : "[FAIL] ") << r.number << ". " << r.name;
        if (!r.detail.empty()) out << " -- " << r.detail;
        out << fmt("  (%.2f s)", r.seconds) << '\n';
    }
    out << (all ? "all criteria passed" : "CRITERIA FAILED") << '\n';
    return all;
}

}  // namespace entrocone::verify
