#include "entrocone/groups.hpp"

#include "entrocone/ineq.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace entrocone::groups {

FiniteGroup::FiniteGroup(std::size_t order, std::vector<elem_t> table)
    : n_(order), table_(std::move(table)) {
    if (n_ == 0 || n_ > 4096) throw std::invalid_argument("group order must be 1..4096");
    if (table_.size() != n_ * n_) throw std::invalid_argument("multiplication table size mismatch");
    for (auto e : table_)
        if (e >= n_) throw std::invalid_argument("table entry out of range");

    // locate the identity
    bool found = false;
    for (elem_t e = 0; e < n_; ++e) {
        bool ok = true;
        for (elem_t a = 0; a < n_ && ok; ++a)
            ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) {
            identity_ = e;
            found = true;
            break;
        }
    }
    if (!found) throw std::invalid_argument("group has no identity");

    inverse_.assign(n_, 0);
    for (elem_t a = 0; a < n_; ++a) {
        bool ok = false;
        for (elem_t b = 0; b < n_; ++b) {
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inverse_[a] = b;
                ok = true;
                break;
            }
        }
        if (!ok) throw std::invalid_argument("element without inverse");
    }
}

void FiniteGroup::validate(std::uint64_t seed) const {
    auto assoc = [&](elem_t a, elem_t b, elem_t c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("multiplication table is not associative");
    };
    if (n_ <= 64) {
        for (elem_t a = 0; a < n_; ++a)
            for (elem_t b = 0; b < n_; ++b)
                for (elem_t c = 0; c < n_; ++c) assoc(a, b, c);
    } else {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < 1000; ++i)
            assoc(static_cast<elem_t>(rng() % n_), static_cast<elem_t>(rng() % n_),
                  static_cast<elem_t>(rng() % n_));
    }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    std::vector<elem_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<elem_t>((a + b) % n);
    return FiniteGroup(n, std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const std::size_t n = g.order() * h.order();
    std::vector<elem_t> t(n * n);
    auto id = [&](std::size_t a, std::size_t b) { return a * h.order() + b; };
    for (std::size_t a1 = 0; a1 < g.order(); ++a1)
        for (std::size_t a2 = 0; a2 < h.order(); ++a2)
            for (std::size_t b1 = 0; b1 < g.order(); ++b1)
                for (std::size_t b2 = 0; b2 < h.order(); ++b2)
                    t[id(a1, a2) * n + id(b1, b2)] = static_cast<elem_t>(
                        id(g.mul(static_cast<elem_t>(a1), static_cast<elem_t>(b1)),
                           h.mul(static_cast<elem_t>(a2), static_cast<elem_t>(b2))));
    return FiniteGroup(n, std::move(t));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
    // elements (r, s) = rotation r in Z_n, reflection flag s
    const std::size_t order = 2 * n;
    std::vector<elem_t> t(order * order);
    auto id = [&](std::size_t r, std::size_t s) { return s * n + r; };
    for (std::size_t r1 = 0; r1 < n; ++r1)
        for (std::size_t s1 = 0; s1 < 2; ++s1)
            for (std::size_t r2 = 0; r2 < n; ++r2)
                for (std::size_t s2 = 0; s2 < 2; ++s2) {
                    std::size_t r = s1 ? (r1 + n - r2) % n : (r1 + r2) % n;
                    std::size_t s = s1 ^ s2;
                    t[id(r1, s1) * order + id(r2, s2)] = static_cast<elem_t>(id(r, s));
                }
    return FiniteGroup(order, std::move(t));
}

FiniteGroup FiniteGroup::quaternion8() {
    // {1, -1, i, -i, j, -j, k, -k} as pairs (axis 0..3 for 1,i,j,k; sign bit)
    auto pack = [](int axis, int neg) { return axis * 2 + neg; };
    auto mul_unit = [](int a, int b, int& axis, int& neg) {
        if (a == 0) { axis = b; neg = 0; return; }
        if (b == 0) { axis = a; neg = 0; return; }
        if (a == b) { axis = 0; neg = 1; return; }
        // i*j = k, j*k = i, k*i = j, anticommuting otherwise
        static const int prod_axis[4][4] = {{0,0,0,0},{0,0,3,2},{0,3,0,1},{0,2,1,0}};
        static const int prod_neg[4][4]  = {{0,0,0,0},{0,0,0,1},{0,1,0,0},{0,0,1,0}};
        axis = prod_axis[a][b];
        neg = prod_neg[a][b];
    };
    std::vector<elem_t> t(64);
    for (int a = 0; a < 4; ++a)
        for (int sa = 0; sa < 2; ++sa)
            for (int b = 0; b < 4; ++b)
                for (int sb = 0; sb < 2; ++sb) {
                    int axis, neg;
                    mul_unit(a, b, axis, neg);
                    t[pack(a, sa) * 8 + pack(b, sb)] =
                        static_cast<elem_t>(pack(axis, neg ^ sa ^ sb));
                }
    return FiniteGroup(8, std::move(t));
}

FiniteGroup FiniteGroup::heisenberg(unsigned p) {
    // triples (a, b, c): (a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b') mod p
    const std::size_t n = static_cast<std::size_t>(p) * p * p;
    std::vector<elem_t> t(n * n);
    auto id = [&](unsigned a, unsigned b, unsigned c) { return (a * p + b) * p + c; };
    for (unsigned a = 0; a < p; ++a)
        for (unsigned b = 0; b < p; ++b)
            for (unsigned c = 0; c < p; ++c)
                for (unsigned a2 = 0; a2 < p; ++a2)
                    for (unsigned b2 = 0; b2 < p; ++b2)
                        for (unsigned c2 = 0; c2 < p; ++c2)
                            t[id(a, b, c) * n + id(a2, b2, c2)] = static_cast<elem_t>(
                                id((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p));
    return FiniteGroup(n, std::move(t));
}

FiniteGroup FiniteGroup::symmetric(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("symmetric group supported for n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> base(n);
    for (int i = 0; i < n; ++i) base[i] = i;
    std::vector<int> p = base;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t order = perms.size();
    std::map<std::vector<int>, elem_t> index;
    for (std::size_t i = 0; i < order; ++i) index[perms[i]] = static_cast<elem_t>(i);
    std::vector<elem_t> t(order * order);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            t[a * order + b] = index[c];
        }
    return FiniteGroup(order, std::move(t));
}

FiniteGroup FiniteGroup::elementary_abelian(unsigned p, unsigned k) {
    std::size_t n = 1;
    for (unsigned i = 0; i < k; ++i) n *= p;
    if (n > 4096) throw std::invalid_argument("elementary abelian group too large");
    std::vector<elem_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            // digitwise addition mod p
            std::size_t x = a, y = b, s = 0, pw = 1;
            for (unsigned i = 0; i < k; ++i) {
                s += pw * ((x % p + y % p) % p);
                x /= p;
                y /= p;
                pw *= p;
            }
            t[a * n + b] = static_cast<elem_t>(s);
        }
    return FiniteGroup(n, std::move(t));
}

std::vector<elem_t> subgroup_closure(const FiniteGroup& g, std::vector<elem_t> gens) {
    std::set<elem_t> elems{g.identity()};
    std::vector<elem_t> frontier{g.identity()};
    gens.push_back(g.identity());
    while (!frontier.empty()) {
        std::vector<elem_t> next;
        for (elem_t e : frontier) {
            for (elem_t x : gens) {
                for (elem_t y : {g.mul(e, x), g.mul(e, g.inverse(x))}) {
                    if (elems.insert(y).second) next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    return {elems.begin(), elems.end()};
}

bool is_subgroup(const FiniteGroup& g, const std::vector<elem_t>& h) {
    if (h.empty() || !std::binary_search(h.begin(), h.end(), g.identity())) return false;
    for (elem_t a : h) {
        if (!std::binary_search(h.begin(), h.end(), g.inverse(a))) return false;
        for (elem_t b : h)
            if (!std::binary_search(h.begin(), h.end(), g.mul(a, b))) return false;
    }
    return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<elem_t>& h,
               std::pair<elem_t, elem_t>* witness) {
    for (elem_t x = 0; x < g.order(); ++x) {
        for (elem_t a : h) {
            elem_t conj = g.mul(g.mul(x, a), g.inverse(x));
            if (!std::binary_search(h.begin(), h.end(), conj)) {
                if (witness) *witness = {x, a};
                return false;
            }
        }
    }
    return true;
}

std::vector<elem_t> intersect(const std::vector<elem_t>& a, const std::vector<elem_t>& b) {
    std::vector<elem_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<elem_t> product_set(const FiniteGroup& g, const std::vector<elem_t>& a,
                                const std::vector<elem_t>& b) {
    std::set<elem_t> out;
    for (elem_t x : a)
        for (elem_t y : b) out.insert(g.mul(x, y));
    return {out.begin(), out.end()};
}

void SubgroupFamily::validate() const {
    if (subgroups.size() != static_cast<std::size_t>(parties.size()))
        throw std::invalid_argument("one subgroup per party required");
    for (const auto& h : subgroups)
        if (!is_subgroup(group, h)) throw std::invalid_argument("family member is not a subgroup");
}

std::vector<elem_t> SubgroupFamily::subgroup_of(mask_t j) const {
    std::vector<elem_t> cur;
    bool first = true;
    for (int i = 0; i < parties.size(); ++i) {
        if (!(j & (mask_t{1} << i))) continue;
        cur = first ? subgroups[i] : intersect(cur, subgroups[i]);
        first = false;
    }
    if (first) {
        cur.resize(group.order());
        for (std::size_t e = 0; e < group.order(); ++e) cur[e] = static_cast<elem_t>(e);
    }
    return cur;
}

std::size_t SubgroupFamily::index_of(mask_t j) const {
    return group.order() / subgroup_of(j).size();
}

EntropyVector group_polymatroid(const SubgroupFamily& family) {
    std::vector<double> bits(size_t{1} << family.parties.size(), 0.0);
    for (mask_t j = 1; j <= family.parties.full_mask(); ++j)
        bits[j] = std::log2(static_cast<double>(family.index_of(j)));
    return EntropyVector::numeric(family.parties, std::move(bits));
}

int sign_on_group(const SubgroupFamily& family, const LinearFunctional& f) {
    // sum c_J log n_J >= 0  <=>  prod n_J^{c_J} >= 1, with scaled-integer c_J
    LinearFunctional norm = f.normalized();
    Integer pos = 1, neg = 1;
    for (const auto& [j, c] : norm.coeffs()) {
        Integer n(static_cast<unsigned long>(family.index_of(j)));
        Integer power;
        unsigned long e = std::abs(c.get_num().get_si());
        mpz_pow_ui(power.get_mpz_t(), n.get_mpz_t(), e);
        if (c > 0)
            pos *= power;
        else
            neg *= power;
    }
    return pos == neg ? 0 : (pos > neg ? 1 : -1);
}

void Distribution::validate() const {
    if (alphabet.size() != static_cast<std::size_t>(parties.size()))
        throw std::invalid_argument("alphabet size per party required");
    Rational total = 0;
    for (const auto& [t, p] : atoms) {
        if (t.size() != alphabet.size()) throw std::invalid_argument("atom arity mismatch");
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] < 0 || t[i] >= alphabet[i])
                throw std::invalid_argument("atom symbol outside alphabet");
        if (p < 0) throw std::invalid_argument("negative probability");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("probabilities must sum to 1");
}

Distribution Distribution::marginal(mask_t j) const {
    std::vector<int> keep;
    for (int i = 0; i < parties.size(); ++i)
        if (j & (mask_t{1} << i)) keep.push_back(i);
    Distribution out;
    std::vector<std::string> labels;
    for (int i : keep) labels.push_back(parties.label(i));
    out.parties = PartySystem(labels);
    for (int i : keep) out.alphabet.push_back(alphabet[i]);
    for (const auto& [t, p] : atoms) {
        if (p == 0) continue;
        std::vector<int> sub;
        for (int i : keep) sub.push_back(t[i]);
        out.atoms[sub] += p;
    }
    return out;
}

double Distribution::entropy_bits() const {
    double h = 0;
    for (const auto& [t, p] : atoms) {
        if (p == 0) continue;
        double x = to_double(p);
        h -= x * std::log2(x);
    }
    return h;
}

bool Distribution::is_uniform(std::size_t* support) const {
    std::size_t count = 0;
    const Rational* first = nullptr;
    for (const auto& [t, p] : atoms) {
        if (p == 0) continue;
        if (!first)
            first = &p;
        else if (p != *first)
            return false;
        ++count;
    }
    if (support) *support = count;
    return count > 0;
}

EntropyVector classical_polymatroid(const Distribution& d) {
    d.validate();
    std::vector<double> bits(size_t{1} << d.parties.size(), 0.0);
    for (mask_t j = 1; j <= d.parties.full_mask(); ++j)
        bits[j] = d.marginal(j).entropy_bits();
    return EntropyVector::numeric(d.parties, std::move(bits));
}

Distribution coset_distribution(const SubgroupFamily& family) {
    family.validate();
    const auto& g = family.group;
    const int n = family.parties.size();
    Distribution out;
    out.parties = family.parties;

    // coset index per party: map representative -> id
    std::vector<std::map<elem_t, int>> coset_id(n);
    std::vector<std::vector<int>> elem_coset(n, std::vector<int>(g.order()));
    for (int i = 0; i < n; ++i) {
        const auto& h = family.subgroups[i];
        std::vector<int> seen(g.order(), -1);
        int next = 0;
        for (std::size_t e = 0; e < g.order(); ++e) {
            if (seen[e] >= 0) {
                elem_coset[i][e] = seen[e];
                continue;
            }
            for (elem_t x : h) seen[g.mul(static_cast<elem_t>(e), x)] = next;
            elem_coset[i][e] = next;
            ++next;
        }
        out.alphabet.push_back(next);
    }

    Rational p(1, static_cast<unsigned long>(g.order()));
    for (std::size_t e = 0; e < g.order(); ++e) {
        std::vector<int> atom(n);
        for (int i = 0; i < n; ++i) atom[i] = elem_coset[i][e];
        out.atoms[atom] += p;
    }
    return out;
}

void Distribution::write(std::ostream& out) const {
    out << "parties:";
    for (const auto& n : parties.labels()) out << ' ' << n;
    out << "\nalphabet:";
    for (int a : alphabet) out << ' ' << a;
    out << '\n';
    for (const auto& [t, p] : atoms) {
        if (p == 0) continue;
        out << "atom";
        for (int s : t) out << ' ' << s;
        out << ' ' << p.get_str() << '\n';
    }
}

Distribution Distribution::read(std::istream& in) {
    Distribution d;
    std::string line;
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string word;
        if (!(ss >> word)) continue;
        if (word == "parties:") {
            while (ss >> word) labels.push_back(word);
            d.parties = PartySystem(labels);
        } else if (word == "alphabet:") {
            int a;
            while (ss >> a) d.alphabet.push_back(a);
        } else if (word == "atom") {
            if (labels.empty() || d.alphabet.empty())
                throw std::invalid_argument("parties and alphabet must precede atoms");
            std::vector<int> t(labels.size());
            for (auto& s : t)
                if (!(ss >> s)) throw std::invalid_argument("short atom line");
            std::string prob;
            if (!(ss >> prob)) throw std::invalid_argument("atom line missing probability");
            d.atoms[t] += parse_rational(prob);
        } else {
            throw std::invalid_argument("unexpected line in distribution file: '" + line + "'");
        }
    }
    d.validate();
    return d;
}

Distribution and_or_counterexample() {
    Distribution d;
    d.parties = PartySystem({"a", "b", "c", "d"});
    d.alphabet = {2, 2, 2, 2};
    for (int c = 0; c < 2; ++c)
        for (int dd = 0; dd < 2; ++dd)
            d.atoms[{c | dd, c & dd, c, dd}] += Rational(1, 4);
    return d;
}

CommonInformation common_information_extension(const SubgroupFamily& family, mask_t a,
                                               mask_t b, const std::string& zeta_label) {
    family.validate();
    auto ga = family.subgroup_of(a);
    auto gb = family.subgroup_of(b);
    std::pair<elem_t, elem_t> w;
    if (!is_normal(family.group, ga, &w))
        throw std::invalid_argument("subgroup for A not normal (conjugation by element " +
                                    std::to_string(w.first) + " moves " +
                                    std::to_string(w.second) + ")");
    if (!is_normal(family.group, gb, &w))
        throw std::invalid_argument("subgroup for B not normal (conjugation by element " +
                                    std::to_string(w.first) + " moves " +
                                    std::to_string(w.second) + ")");
    auto gz = product_set(family.group, ga, gb);
    if (!is_subgroup(family.group, gz))
        throw std::logic_error("product of normal subgroups must be a subgroup");

    auto labels = family.parties.labels();
    labels.push_back(zeta_label);
    CommonInformation out{SubgroupFamily{family.group, PartySystem(labels), family.subgroups},
                          family.parties.size()};
    out.extended.subgroups.push_back(std::move(gz));
    return out;
}

bool check_common_information(const EntropyVector& base, const EntropyVector& extended,
                              mask_t a, mask_t b, int zeta_party, double tol_bits) {
    const auto& sys = extended.system();
    const mask_t z = mask_t{1} << zeta_party;
    if ((a & z) || (b & z)) throw std::invalid_argument("zeta cannot occur in A or B");
    // extension must restrict to the base vector
    for (mask_t j = 1; j <= base.system().full_mask(); ++j)
        if (std::abs(extended.bits(j) - base.bits(j)) > tol_bits)
            throw std::invalid_argument("extended vector does not restrict to the base vector");

    auto close = [&](double x, double y) { return std::abs(x - y) <= tol_bits; };
    double hz = extended.bits(z);
    bool ok = close(extended.bits(z | a), extended.bits(a)) &&
              close(extended.bits(z | b), extended.bits(b)) &&
              close(hz, extended.bits(a) + extended.bits(b) - extended.bits(a | b));
    if (!ok) return false;

    // Prop 3.3: with a common information present, Ingleton holds on the base.
    const int n = base.system().size();
    for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
            if (c == d) continue;
            mask_t mc = mask_t{1} << c, md = mask_t{1} << d;
            if ((mc | md) & (a | b)) continue;
            auto inst = ineq::ingleton(base.system(), a, b, mc, md);
            if (inst.functional.evaluate(base).classify() < 0)
                throw std::logic_error("Ingleton violated despite common information");
        }
    }
    return true;
}

EntropyVector SubspaceFamily::polymatroid() const {
    if (generators.size() != static_cast<std::size_t>(parties.size()))
        throw std::invalid_argument("one generator matrix per party required");
    std::vector<Rational> values(size_t{1} << parties.size(), Rational(0));
    for (mask_t j = 1; j <= parties.full_mask(); ++j) {
        std::size_t rows = 0;
        for (int i = 0; i < parties.size(); ++i)
            if (j & (mask_t{1} << i)) rows += generators[i].rows;
        gfp::Matrix stacked(p, rows, dim);
        std::size_t r = 0;
        for (int i = 0; i < parties.size(); ++i) {
            if (!(j & (mask_t{1} << i))) continue;
            const auto& m = generators[i];
            if (m.cols != dim || m.p != p)
                throw std::invalid_argument("generator matrix shape mismatch");
            for (std::size_t k = 0; k < m.rows; ++k, ++r)
                for (std::size_t col = 0; col < dim; ++col) stacked.at(r, col) = m.at(k, col);
        }
        values[j] = static_cast<long>(gfp::rank(stacked));
    }
    return EntropyVector::exact(parties, p, std::move(values));
}

SubgroupFamily read_group_family(std::istream& in) {
    std::string line;
    std::size_t order = 0;
    std::vector<elem_t> table;
    std::vector<std::string> labels;
    std::vector<std::vector<elem_t>> subgroups;
    bool in_table = false;
    std::size_t table_rows = 0;

    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string word;
        if (!(ss >> word)) continue;
        if (word == "order:") {
            if (!(ss >> order) || order == 0) throw std::invalid_argument("bad order line");
            in_table = false;
        } else if (word == "table:") {
            if (order == 0) throw std::invalid_argument("order must precede table");
            in_table = true;
        } else if (word == "subgroup") {
            in_table = false;
            std::string label;
            if (!(ss >> label) || label.back() != ':')
                throw std::invalid_argument("bad subgroup line");
            label.pop_back();
            labels.push_back(label);
            std::vector<elem_t> elems;
            long v;
            while (ss >> v) elems.push_back(static_cast<elem_t>(v));
            std::sort(elems.begin(), elems.end());
            elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
            subgroups.push_back(std::move(elems));
        } else if (in_table) {
            if (table_rows >= order) throw std::invalid_argument("too many table rows");
            table.push_back(static_cast<elem_t>(std::stoul(word)));
            long v;
            while (ss >> v) table.push_back(static_cast<elem_t>(v));
            ++table_rows;
        } else {
            throw std::invalid_argument("unexpected line in group file: '" + line + "'");
        }
    }
    if (table.size() != order * order) throw std::invalid_argument("incomplete table");
    SubgroupFamily family{FiniteGroup(order, std::move(table)), PartySystem(labels),
                          std::move(subgroups)};
    family.group.validate();
    family.validate();
    return family;
}

void write_group_family(std::ostream& out, const SubgroupFamily& family) {
    out << "order: " << family.group.order() << "\ntable:\n";
    for (std::size_t a = 0; a < family.group.order(); ++a) {
        for (std::size_t b = 0; b < family.group.order(); ++b)
            out << (b ? " " : "")
                << family.group.mul(static_cast<elem_t>(a), static_cast<elem_t>(b));
        out << '\n';
    }
    for (int i = 0; i < family.parties.size(); ++i) {
        out << "subgroup " << family.parties.label(i) << ":";
        for (elem_t e : family.subgroups[i]) out << ' ' << e;
        out << '\n';
    }
}

}  // namespace entrocone::groups
