#include "entrocone/stab.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entrocone::stab {

std::uint32_t PauliElement::symplectic(const PauliElement& other) const {
    unsigned long long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += (unsigned long long)x[i] * other.z[i] + (unsigned long long)z[i] * (p - other.x[i] % p);
    return static_cast<std::uint32_t>(s % p);
}

std::size_t StabiliserGroup::party_qudit_count(int party) const {
    std::size_t c = 0;
    for (int q : qudit_party)
        if (q == party) ++c;
    return c;
}

std::vector<std::size_t> StabiliserGroup::qudits_of(mask_t party_subset) const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < qudits; ++q)
        if (party_subset & (mask_t{1} << qudit_party[q])) out.push_back(q);
    return out;
}

namespace {

// Generators as a k x 2n matrix over Z_p, columns (x_0..x_{n-1}, z_0..z_{n-1}).
gfp::Matrix generator_matrix(const StabiliserGroup& g) {
    const std::size_t n = g.qudits, k = g.generators.size();
    gfp::Matrix m(g.prime, k, 2 * n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t q = 0; q < n; ++q) {
            m.at(i, q) = g.generators[i].x[q];
            m.at(i, n + q) = g.generators[i].z[q];
        }
    }
    return m;
}

void check_shape(const StabiliserGroup& g) {
    if (g.qudits == 0 || g.qudits > 32) throw std::invalid_argument("qudit count must be 1..32");
    if (g.qudit_party.size() != g.qudits)
        throw std::invalid_argument("qudit -> party map size mismatch");
    for (int party : g.qudit_party)
        if (party < 0 || party >= g.parties.size())
            throw std::invalid_argument("qudit assigned to unknown party");
    for (const auto& gen : g.generators) {
        if (gen.p != g.prime) throw std::invalid_argument("generator prime mismatch");
        if (gen.x.size() != g.qudits || gen.z.size() != g.qudits)
            throw std::invalid_argument("generator length mismatch");
        for (std::size_t q = 0; q < g.qudits; ++q)
            if (gen.x[q] >= g.prime || gen.z[q] >= g.prime)
                throw std::invalid_argument("generator entry not reduced mod p");
    }
}

}  // namespace

ValidationReport validate(const StabiliserGroup& g) {
    ValidationReport rep;
    check_shape(g);
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
        for (std::size_t j = i + 1; j < g.generators.size(); ++j) {
            if (g.generators[i].symplectic(g.generators[j]) != 0) {
                rep.error = "generators " + std::to_string(i) + " and " + std::to_string(j) +
                            " do not commute";
                return rep;
            }
        }
    }
    std::size_t r = gfp::rank(generator_matrix(g));
    if (r != g.generators.size()) {
        rep.error = "generators are dependent (rank " + std::to_string(r) + " of " +
                    std::to_string(g.generators.size()) + ")";
        return rep;
    }
    rep.valid = true;
    rep.k = g.generators.size();
    rep.maximal = rep.k == g.qudits;
    return rep;
}

std::size_t subgroup_order_exponent(const StabiliserGroup& g, mask_t j) {
    // kernel of the generator matrix restricted to the qudits outside J
    auto outside = g.qudits_of(g.parties.complement(j));
    const std::size_t k = g.generators.size();
    gfp::Matrix m(g.prime, k, 2 * outside.size());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t c = 0; c < outside.size(); ++c) {
            m.at(i, c) = g.generators[i].x[outside[c]];
            m.at(i, outside.size() + c) = g.generators[i].z[outside[c]];
        }
    }
    // left kernel dimension = k - rank
    return k - gfp::rank(std::move(m));
}

EntropyVector entropy_vector(const StabiliserGroup& g, ExecPolicy exec) {
    auto rep = validate(g);
    if (!rep.valid) throw std::invalid_argument("invalid stabiliser group: " + rep.error);
    if (!rep.maximal)
        throw std::invalid_argument("entropy vector requires a maximal group (pure state)");

    const mask_t full = g.parties.full_mask();
    std::vector<Rational> values(size_t{1} << g.parties.size(), Rational(0));

    std::vector<long> qudit_count(g.parties.size(), 0);
    for (int party : g.qudit_party) ++qudit_count[party];

    if (exec == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long jj = 1; jj <= static_cast<long long>(full); ++jj) {
            mask_t j = static_cast<mask_t>(jj);
            long q = 0;
            for (int i = 0; i < g.parties.size(); ++i)
                if (j & (mask_t{1} << i)) q += qudit_count[i];
            values[j] = q - static_cast<long>(subgroup_order_exponent(g, j));
        }
    } else {
        for (mask_t j = 1; j <= full; ++j) {
            long q = 0;
            for (int i = 0; i < g.parties.size(); ++i)
                if (j & (mask_t{1} << i)) q += qudit_count[i];
            values[j] = q - static_cast<long>(subgroup_order_exponent(g, j));
        }
    }
    return EntropyVector::exact(g.parties, g.prime, std::move(values), /*pure=*/true);
}

namespace {

PauliElement x_row(unsigned p, const std::vector<std::uint32_t>& v) {
    return PauliElement{p, v, std::vector<std::uint32_t>(v.size(), 0)};
}

PauliElement z_row(unsigned p, const std::vector<std::uint32_t>& v) {
    return PauliElement{p, std::vector<std::uint32_t>(v.size(), 0), v};
}

// Stabiliser group of the uniform superposition over a linear code:
// X(v) for basis rows v, Z(b) for a basis of the dual code.
StabiliserGroup code_state_group(unsigned p, const std::vector<std::vector<std::uint32_t>>& basis,
                                 PartySystem parties, std::vector<int> qudit_party) {
    const std::size_t n = qudit_party.size();
    StabiliserGroup g;
    g.prime = p;
    g.qudits = n;
    g.parties = std::move(parties);
    g.qudit_party = std::move(qudit_party);
    gfp::Matrix m(p, basis.size(), n);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].size() != n) throw std::invalid_argument("code basis row length mismatch");
        for (std::size_t q = 0; q < n; ++q) m.at(i, q) = basis[i][q] % p;
        g.generators.push_back(x_row(p, basis[i]));
    }
    gfp::Matrix dual = gfp::kernel_basis(m);
    for (std::size_t i = 0; i < dual.rows; ++i) {
        std::vector<std::uint32_t> b(n);
        for (std::size_t q = 0; q < n; ++q) b[q] = dual.at(i, q);
        g.generators.push_back(z_row(p, b));
    }
    return g;
}

}  // namespace

PaperTag parse_tag(const std::string& s) {
    for (auto t : {PaperTag::R0, PaperTag::R1, PaperTag::R2, PaperTag::R3, PaperTag::R4,
                   PaperTag::R5, PaperTag::R6, PaperTag::QuantumCounterexample})
        if (tag_name(t) == s) return t;
    throw std::invalid_argument("unknown state tag '" + s + "'");
}

std::string tag_name(PaperTag t) {
    switch (t) {
        case PaperTag::R0: return "R0";
        case PaperTag::R1: return "R1";
        case PaperTag::R2: return "R2";
        case PaperTag::R3: return "R3";
        case PaperTag::R4: return "R4";
        case PaperTag::R5: return "R5";
        case PaperTag::R6: return "R6";
        case PaperTag::QuantumCounterexample: return "quantum_counterexample";
    }
    return "?";
}

StabiliserGroup build_paper_group(PaperTag tag) {
    const PartySystem abcde = PartySystem::alphabetic(5);
    switch (tag) {
        case PaperTag::R1: {
            // Bell pair on ab, |0> on c, d, e
            StabiliserGroup g;
            g.prime = 2;
            g.qudits = 5;
            g.parties = abcde;
            g.qudit_party = {0, 1, 2, 3, 4};
            g.generators = {
                x_row(2, {1, 1, 0, 0, 0}), z_row(2, {1, 1, 0, 0, 0}),
                z_row(2, {0, 0, 1, 0, 0}), z_row(2, {0, 0, 0, 1, 0}),
                z_row(2, {0, 0, 0, 0, 1}),
            };
            return g;
        }
        case PaperTag::R2: {
            // GHZ on abcd, |0> on e
            StabiliserGroup g;
            g.prime = 2;
            g.qudits = 5;
            g.parties = abcde;
            g.qudit_party = {0, 1, 2, 3, 4};
            g.generators = {
                x_row(2, {1, 1, 1, 1, 0}), z_row(2, {1, 1, 0, 0, 0}),
                z_row(2, {0, 1, 1, 0, 0}), z_row(2, {0, 0, 1, 1, 0}),
                z_row(2, {0, 0, 0, 0, 1}),
            };
            return g;
        }
        case PaperTag::R3:
            // sum over |i, j, i+j, i+2j, 0> on qutrits
            return code_state_group(3, {{1, 0, 1, 1, 0}, {0, 1, 1, 2, 0}}, abcde,
                                    {0, 1, 2, 3, 4});
        case PaperTag::R4:
            // 5-qubit GHZ
            return code_state_group(2, {{1, 1, 1, 1, 1}}, abcde, {0, 1, 2, 3, 4});
        case PaperTag::R5: {
            // |0>|0_L> + |1>|1_L> with the 5-qubit code on qubits a'' b c d e;
            // party a owns qubits 0 (a') and 1 (a'')
            StabiliserGroup g;
            g.prime = 2;
            g.qudits = 6;
            g.parties = abcde;
            g.qudit_party = {0, 0, 1, 2, 3, 4};
            auto block = [](std::vector<std::uint32_t> x5, std::vector<std::uint32_t> z5) {
                std::vector<std::uint32_t> x{0}, z{0};
                x.insert(x.end(), x5.begin(), x5.end());
                z.insert(z.end(), z5.begin(), z5.end());
                return PauliElement{2, x, z};
            };
            // cyclic stabilisers XZZXI, IXZZX, XIXZZ, ZXIXZ of the code block
            g.generators = {
                block({1, 0, 0, 1, 0}, {0, 1, 1, 0, 0}),
                block({0, 1, 0, 0, 1}, {0, 0, 1, 1, 0}),
                block({1, 0, 1, 0, 0}, {0, 0, 0, 1, 1}),
                block({0, 1, 0, 1, 0}, {1, 0, 0, 0, 1}),
                x_row(2, {1, 1, 1, 1, 1, 1}),  // X_{a'} X_L
                z_row(2, {1, 1, 1, 1, 1, 1}),  // Z_{a'} Z_L
            };
            return g;
        }
        case PaperTag::R6:
            // sum over |i, j, i+j, k, i+j, k, i+j, k>, parties a|b|c'c''|d'd''|e'e''
            return code_state_group(3,
                                    {{1, 0, 1, 0, 1, 0, 1, 0},
                                     {0, 1, 1, 0, 1, 0, 1, 0},
                                     {0, 0, 0, 1, 0, 1, 0, 1}},
                                    abcde, {0, 1, 2, 2, 3, 3, 4, 4});
        case PaperTag::R0:
            // sum over |i, j, i+j, ij, ij>, parties a|b|c|d'd''|e'e''
            return code_state_group(2,
                                    {{1, 0, 1, 1, 0, 1, 0}, {0, 1, 1, 0, 1, 0, 1}},
                                    abcde, {0, 1, 2, 3, 3, 4, 4});
        case PaperTag::QuantumCounterexample:
            throw std::invalid_argument(
                "quantum_counterexample is a density matrix, not a stabiliser group");
    }
    throw std::invalid_argument("unknown tag");
}

StabiliserGroup random_stabiliser_group(std::uint64_t seed, unsigned p, std::size_t n,
                                        const PartySystem& parties) {
    if (n < static_cast<std::size_t>(parties.size()))
        throw std::invalid_argument("need at least one qudit per party");
    StabiliserGroup g;
    g.prime = p;
    g.qudits = n;
    g.parties = parties;
    g.qudit_party.resize(n);
    for (std::size_t q = 0; q < n; ++q) g.qudit_party[q] = static_cast<int>(q % parties.size());

    std::mt19937_64 rng(seed);
    gfp::Matrix echelon(p, 0, 2 * n);  // accepted rows, kept in echelon form
    std::vector<std::vector<std::uint32_t>> rows;

    auto independent = [&](const std::vector<std::uint32_t>& row) {
        gfp::Matrix m(p, rows.size() + 1, 2 * n);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t c = 0; c < 2 * n; ++c) m.at(i, c) = rows[i][c];
        for (std::size_t c = 0; c < 2 * n; ++c) m.at(rows.size(), c) = row[c];
        return gfp::rank(std::move(m)) == rows.size() + 1;
    };

    long attempts = 0;
    while (g.generators.size() < n) {
        if (++attempts > 100000)
            throw std::runtime_error("random stabiliser sampling exceeded retry cap");
        std::vector<std::uint32_t> row(2 * n);
        for (auto& v : row) v = static_cast<std::uint32_t>(rng() % p);
        PauliElement cand{p, {row.begin(), row.begin() + n}, {row.begin() + n, row.end()}};
        bool commutes = true;
        for (const auto& gen : g.generators)
            if (cand.symplectic(gen) != 0) {
                commutes = false;
                break;
            }
        if (!commutes || !independent(row)) continue;
        rows.push_back(row);
        g.generators.push_back(std::move(cand));
        attempts = 0;
    }
    return g;
}

BalancedDecomposition balanced_decomposition(const StabiliserGroup& g) {
    auto rep = validate(g);
    if (!rep.valid || !rep.maximal)
        throw std::invalid_argument("balanced decomposition requires a valid maximal group");

    const std::size_t n = g.qudits;
    std::vector<Rational> h(size_t{1} << g.parties.size(), Rational(0));
    for (mask_t j = 1; j <= g.parties.full_mask(); ++j)
        h[j] = static_cast<long>(n - subgroup_order_exponent(g, g.parties.complement(j)));

    ModularPart h0{g.parties, {}};
    for (int party = 0; party < g.parties.size(); ++party)
        h0.weights.push_back(static_cast<long>(g.party_qudit_count(party)));

    BalancedDecomposition out{EntropyVector::exact(g.parties, g.prime, std::move(h)),
                              std::move(h0)};

    // S = H - h0 must hold entrywise
    auto s = entropy_vector(g, ExecPolicy::serial);
    for (mask_t j = 1; j <= g.parties.full_mask(); ++j)
        if (s.exact_value(j) != out.group_part.exact_value(j) - out.modular_part.rank(j))
            throw std::logic_error("balanced decomposition identity failed");
    return out;
}

groups::SubgroupFamily to_subgroup_family(const StabiliserGroup& g) {
    auto rep = validate(g);
    if (!rep.valid) throw std::invalid_argument("invalid stabiliser group: " + rep.error);
    const std::size_t k = g.generators.size();
    std::size_t order = 1;
    for (std::size_t i = 0; i < k; ++i) {
        order *= g.prime;
        if (order > 4096) throw std::invalid_argument("central quotient larger than 4096");
    }

    groups::SubgroupFamily family{groups::FiniteGroup::elementary_abelian(g.prime, k),
                                  g.parties,
                                  {}};

    // subgroup for party x: combinations supported outside x's qudits
    for (int party = 0; party < g.parties.size(); ++party) {
        auto inside = g.qudits_of(mask_t{1} << party);
        gfp::Matrix m(g.prime, k, 2 * inside.size());
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < inside.size(); ++c) {
                m.at(i, c) = g.generators[i].x[inside[c]];
                m.at(i, inside.size() + c) = g.generators[i].z[inside[c]];
            }
        // left kernel of m: solve v^T m = 0 via kernel of transpose
        gfp::Matrix mt(g.prime, m.cols, m.rows);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) mt.at(j, i) = m.at(i, j);
        gfp::Matrix ker = gfp::kernel_basis(mt);

        // enumerate the span of the kernel basis as element indices of Z_p^k
        std::vector<groups::elem_t> elems;
        std::size_t combos = 1;
        for (std::size_t i = 0; i < ker.rows; ++i) combos *= g.prime;
        for (std::size_t c = 0; c < combos; ++c) {
            std::vector<std::uint32_t> v(k, 0);
            std::size_t rest = c;
            for (std::size_t i = 0; i < ker.rows; ++i) {
                std::uint32_t coeff = rest % g.prime;
                rest /= g.prime;
                for (std::size_t col = 0; col < k; ++col)
                    v[col] = (v[col] + coeff * ker.at(i, col)) % g.prime;
            }
            std::size_t index = 0, pw = 1;
            for (std::size_t col = 0; col < k; ++col) {
                index += pw * v[col];
                pw *= g.prime;
            }
            elems.push_back(static_cast<groups::elem_t>(index));
        }
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        family.subgroups.push_back(std::move(elems));
    }
    return family;
}

void write_stab(std::ostream& out, const StabiliserGroup& g) {
    out << "prime: " << g.prime << "\nparties:";
    for (int party = 0; party < g.parties.size(); ++party)
        out << ' ' << g.parties.label(party) << ':' << g.party_qudit_count(party);
    out << '\n';
    for (const auto& gen : g.generators) {
        out << "gen: x";
        for (auto v : gen.x) out << ' ' << v;
        out << " | z";
        for (auto v : gen.z) out << ' ' << v;
        out << '\n';
    }
}

StabiliserGroup read_stab(std::istream& in) {
    StabiliserGroup g;
    g.prime = 0;
    std::string line;
    std::vector<std::string> labels;
    std::vector<int> counts;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string word;
        if (!(ss >> word)) continue;
        if (word == "prime:") {
            unsigned p;
            if (!(ss >> p)) throw std::invalid_argument("bad prime line");
            g.prime = p;
        } else if (word == "parties:") {
            std::string spec;
            while (ss >> spec) {
                auto colon = spec.rfind(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("party spec needs label:count");
                labels.push_back(spec.substr(0, colon));
                counts.push_back(std::stoi(spec.substr(colon + 1)));
                if (counts.back() < 1) throw std::invalid_argument("party needs >= 1 qudits");
            }
            g.parties = PartySystem(labels);
            g.qudit_party.clear();
            for (std::size_t i = 0; i < labels.size(); ++i)
                for (int c = 0; c < counts[i]; ++c) g.qudit_party.push_back(static_cast<int>(i));
            g.qudits = g.qudit_party.size();
        } else if (word == "gen:") {
            if (g.prime == 0 || g.qudits == 0)
                throw std::invalid_argument("prime and parties must precede generators");
            std::string first;
            if (!(ss >> first)) throw std::invalid_argument("empty generator line");
            PauliElement gen{g.prime, std::vector<std::uint32_t>(g.qudits, 0),
                             std::vector<std::uint32_t>(g.qudits, 0)};
            if (first == "x") {
                for (auto& v : gen.x) {
                    if (!(ss >> v)) throw std::invalid_argument("short x part in generator");
                    v %= g.prime;
                }
                std::string bar, zword;
                if (!(ss >> bar >> zword) || bar != "|" || zword != "z")
                    throw std::invalid_argument("generator needs '| z' separator");
                for (auto& v : gen.z) {
                    if (!(ss >> v)) throw std::invalid_argument("short z part in generator");
                    v %= g.prime;
                }
            } else {
                // Pauli-string shorthand, p = 2 only
                if (g.prime != 2)
                    throw std::invalid_argument("Pauli-string shorthand requires p = 2");
                if (first.size() != g.qudits)
                    throw std::invalid_argument("Pauli string length mismatch");
                for (std::size_t q = 0; q < g.qudits; ++q) {
                    switch (first[q]) {
                        case 'I': break;
                        case 'X': gen.x[q] = 1; break;
                        case 'Z': gen.z[q] = 1; break;
                        case 'Y': gen.x[q] = gen.z[q] = 1; break;
                        default:
                            throw std::invalid_argument("Pauli string may contain only IXYZ");
                    }
                }
            }
            g.generators.push_back(std::move(gen));
        } else {
            throw std::invalid_argument("unexpected line in stabiliser file: '" + line + "'");
        }
    }
    if (g.prime == 0) throw std::invalid_argument("stabiliser file missing prime");
    if (g.qudits == 0) throw std::invalid_argument("stabiliser file missing parties");
    return g;
}

}  // namespace entrocone::stab
