#include "entrocone/ineq.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace entrocone::ineq {

namespace {

std::string format_bits(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Keeps the first instance per normalized functional, drops zero functionals.
void push_dedup(std::vector<InequalityInstance>& out,
                std::map<std::vector<Rational>, size_t>& seen, InequalityInstance inst) {
    if (inst.functional.is_zero()) return;
    auto key = inst.functional.normalized().dense_row();
    if (seen.emplace(std::move(key), out.size()).second) out.push_back(std::move(inst));
}

std::vector<InequalityInstance> base_family(const PartySystem& sys, bool quantum) {
    std::vector<InequalityInstance> out;
    std::map<std::vector<Rational>, size_t> seen;
    const mask_t full = sys.full_mask();

    for (mask_t a = 1; a <= full; ++a) {
        LinearFunctional f(sys);
        f.add(a, 1);
        push_dedup(out, seen, {"nonneg(" + sys.subset_label(a) + ")", f, Family::NonNeg});
    }
    for (mask_t a = 1; a <= full; ++a) {
        for (mask_t b = a; b <= full; ++b) {
            LinearFunctional f(sys);
            f.add(a, 1);
            f.add(b, 1);
            f.add(a & b, -1);
            f.add(a | b, -1);
            push_dedup(out, seen,
                       {"SSA(" + sys.subset_label(a) + ";" + sys.subset_label(b) + ")", f,
                        Family::SSA});
        }
    }
    if (quantum) {
        for (mask_t a = 1; a <= full; ++a) {
            for (mask_t b = a; b <= full; ++b) {
                LinearFunctional f(sys);
                f.add(a, 1);
                f.add(b, 1);
                f.add(a & ~b, -1);
                f.add(b & ~a, -1);
                push_dedup(out, seen,
                           {"WMO(" + sys.subset_label(a) + ";" + sys.subset_label(b) + ")", f,
                            Family::WMO});
            }
        }
    } else {
        for (mask_t b = 1; b <= full; ++b) {
            for (mask_t a = 0; a < b; ++a) {
                if ((a & b) != a) continue;  // A must be a subset of B
                LinearFunctional f(sys);
                f.add(b, 1);
                f.add(a, -1);
                push_dedup(out, seen,
                           {"MONO(" + sys.subset_label(a) + ";" + sys.subset_label(b) + ")", f,
                            Family::MONO});
            }
        }
    }
    return out;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::NonNeg: return "NonNeg";
        case Family::SSA: return "SSA";
        case Family::MONO: return "MONO";
        case Family::WMO: return "WMO";
        case Family::Ingleton: return "Ingleton";
        case Family::Kinser: return "Kinser";
        case Family::Matus: return "Matus";
        case Family::Custom: return "Custom";
    }
    return "?";
}

std::vector<InequalityInstance> shannon_family(const PartySystem& sys) {
    return base_family(sys, false);
}

std::vector<InequalityInstance> quantum_family(const PartySystem& sys) {
    return base_family(sys, true);
}

InequalityInstance ingleton(const PartySystem& sys, mask_t a, mask_t b, mask_t c,
                            mask_t d, bool allow_empty) {
    if (!allow_empty && (!a || !b || !c || !d))
        throw std::invalid_argument("Ingleton requires nonempty subsets");
    if ((a & b) || (a & c) || (a & d) || (b & c) || (b & d) || (c & d))
        throw std::invalid_argument("Ingleton requires pairwise disjoint subsets");
    LinearFunctional f = conditional_mutual_information(sys, a, b, c);
    f += conditional_mutual_information(sys, a, b, d);
    f += mutual_information(sys, c, d);
    f -= mutual_information(sys, a, b);
    std::string name = "Ing(" + sys.subset_label(a) + sys.subset_label(b) + ":" +
                       sys.subset_label(c) + sys.subset_label(d) + ")";
    return {name, f, Family::Ingleton};
}

std::vector<InequalityInstance> ingleton_permutations(const PartySystem& sys,
                                                      const std::vector<int>& parties) {
    if (parties.size() != 4) throw std::invalid_argument("need exactly 4 parties");
    std::vector<InequalityInstance> out;
    std::map<std::vector<Rational>, size_t> seen;
    std::vector<int> p = parties;
    std::sort(p.begin(), p.end());
    do {
        auto m = [&](int i) { return mask_t{1} << p[i]; };
        push_dedup(out, seen, ingleton(sys, m(0), m(1), m(2), m(3)));
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

InequalityInstance kinser(const PartySystem& sys, const std::vector<int>& parties) {
    const size_t n = parties.size();
    if (n < 4) throw std::invalid_argument("Kinser needs N >= 4 parties");
    auto m = [&](size_t role) { return mask_t{1} << parties.at(role - 1); };  // roles 1..N
    LinearFunctional f = conditional_mutual_information(sys, m(1), m(n), m(3));
    f.add(m(1) | m(n), 1);
    f.add(m(1) | m(2), -1);
    f.add(m(3) | m(n), -1);
    f.add(m(2) | m(3), 1);
    for (size_t k = 4; k <= n; ++k)
        f += conditional_mutual_information(sys, m(2), m(k - 1), m(k));
    std::string name = "Kinser[" + std::to_string(n) + "](";
    for (size_t i = 0; i < n; ++i) name += (i ? "," : "") + sys.label(parties[i]);
    name += ")";
    return {name, f, Family::Kinser};
}

InequalityInstance matus(const PartySystem& sys, long t, int a, int b, int c, int d) {
    if (t < 0) throw std::invalid_argument("Matus parameter t must be nonnegative");
    const mask_t ma = mask_t{1} << a, mb = mask_t{1} << b, mc = mask_t{1} << c,
                 md = mask_t{1} << d;
    LinearFunctional f = Rational(t) * ingleton(sys, ma, mb, mc, md).functional;
    f += conditional_mutual_information(sys, ma, mb, md);
    Rational half = Rational(t) * Rational(t + 1) / 2;
    f += half * (conditional_mutual_information(sys, mb, md, mc) +
                 conditional_mutual_information(sys, mc, md, mb));
    std::string name = "Matus[t=" + std::to_string(t) + "](" + sys.label(a) + sys.label(b) +
                       ":" + sys.label(c) + sys.label(d) + ")";
    return {name, f, Family::Matus};
}

SatisfactionReport check(const EntropyVector& v,
                         const std::vector<InequalityInstance>& instances,
                         std::string vector_id) {
    SatisfactionReport rep;
    rep.vector_id = std::move(vector_id);
    rep.results.reserve(instances.size());
    for (const auto& inst : instances) {
        CheckedInstance ci;
        ci.name = inst.name;
        ci.family = inst.family;
        ci.margin = inst.functional.evaluate(v);
        ci.violated = ci.margin.classify() < 0;
        if (ci.violated) rep.violated.push_back(rep.results.size());
        rep.results.push_back(std::move(ci));
    }
    return rep;
}

void SatisfactionReport::write_csv(std::ostream& out) const {
    out << "instance,margin,verdict\n";
    for (const auto& r : results) {
        out << r.name << ',';
        if (r.margin.exact && r.margin.scale.exact()) {
            if (r.margin.exact_units == 0)
                out << '0';
            else
                out << r.margin.exact_units.get_str() << "*log2(" << r.margin.scale.prime << ")";
        } else {
            out << format_bits(r.margin.value_bits);
        }
        int cls = r.margin.classify();
        out << ',' << (r.violated ? "violated" : cls == 0 ? "tight" : "satisfied") << '\n';
    }
}

std::string SatisfactionReport::summary() const {
    std::string head = vector_id.empty() ? "vector" : vector_id;
    if (violated.empty())
        return head + ": all " + std::to_string(results.size()) + " instances satisfied";
    std::string out = head + ": " + std::to_string(violated.size()) + " of " +
                      std::to_string(results.size()) + " instances violated";
    for (size_t idx : violated) {
        out += "\n  " + results[idx].name + "  margin " +
               format_bits(results[idx].margin.value_bits) + " bits";
    }
    return out;
}

}  // namespace entrocone::ineq
