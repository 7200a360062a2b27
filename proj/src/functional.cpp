#include "entrocone/functional.hpp"

#include <cmath>
#include <stdexcept>

namespace entrocone {

int Margin::classify(double tol_bits) const {
    if (exact) return sign(exact_units);
    if (value_bits > tol_bits) return 1;
    if (value_bits < -tol_bits) return -1;
    return 0;
}

Rational LinearFunctional::coeff(mask_t j) const {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void LinearFunctional::add(mask_t j, const Rational& c) {
    if (j > sys_.full_mask()) throw std::invalid_argument("subset mask outside universe");
    if (j == 0 || c == 0) return;
    auto [it, inserted] = coeffs_.emplace(j, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

LinearFunctional& LinearFunctional::operator+=(const LinearFunctional& other) {
    if (!(sys_ == other.sys_)) throw std::invalid_argument("party system mismatch");
    for (const auto& [j, c] : other.coeffs_) add(j, c);
    return *this;
}

LinearFunctional& LinearFunctional::operator-=(const LinearFunctional& other) {
    if (!(sys_ == other.sys_)) throw std::invalid_argument("party system mismatch");
    for (const auto& [j, c] : other.coeffs_) add(j, -c);
    return *this;
}

LinearFunctional& LinearFunctional::operator*=(const Rational& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [j, v] : coeffs_) v *= c;
    return *this;
}

bool LinearFunctional::operator==(const LinearFunctional& other) const {
    return sys_ == other.sys_ && coeffs_ == other.coeffs_;
}

LinearFunctional LinearFunctional::normalized() const {
    if (coeffs_.empty()) return *this;
    Integer denom_lcm = 1;
    for (const auto& [j, c] : coeffs_)
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    Integer g = 0;
    for (const auto& [j, c] : coeffs_) {
        Rational scaled = c * Rational(denom_lcm);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_num().get_mpz_t());
    }
    LinearFunctional out(sys_);
    Rational factor = Rational(denom_lcm) / Rational(g);
    for (const auto& [j, c] : coeffs_) out.add(j, c * factor);
    return out;
}

BalanceReport LinearFunctional::balance() const {
    BalanceReport rep;
    rep.defects.assign(sys_.size(), Rational(0));
    for (const auto& [j, c] : coeffs_)
        for (int i = 0; i < sys_.size(); ++i)
            if (j & (mask_t{1} << i)) rep.defects[i] += c;
    rep.balanced = true;
    for (const auto& d : rep.defects)
        if (d != 0) rep.balanced = false;
    return rep;
}

Margin LinearFunctional::evaluate(const EntropyVector& v) const {
    if (!(sys_ == v.system())) throw std::invalid_argument("party system mismatch");
    Margin m;
    m.scale = v.scale();
    if (v.is_exact()) {
        m.exact = true;
        for (const auto& [j, c] : coeffs_) m.exact_units += c * v.exact_value(j);
        m.value_bits = to_double(m.exact_units) * v.scale().bits_per_unit();
    } else {
        for (const auto& [j, c] : coeffs_) m.value_bits += to_double(c) * v.bits(j);
    }
    return m;
}

Rational LinearFunctional::evaluate_modular(const ModularPart& m) const {
    if (!(sys_ == m.system)) throw std::invalid_argument("party system mismatch");
    Rational r = 0;
    for (const auto& [j, c] : coeffs_) r += c * m.rank(j);
    return r;
}

std::vector<Rational> LinearFunctional::dense_row() const {
    std::vector<Rational> row(sys_.full_mask(), Rational(0));
    for (const auto& [j, c] : coeffs_) row[j - 1] = c;
    return row;
}

std::string LinearFunctional::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [j, c] : coeffs_) {
        std::string coeff = abs(c) == 1 ? "" : Rational(abs(c)).get_str() + "*";
        out += (c > 0 ? "+" : "-") + coeff + "S(" + sys_.subset_label(j) + ")";
    }
    return out;
}

LinearFunctional entropy_term(const PartySystem& sys, mask_t j) {
    LinearFunctional f(sys);
    f.add(j, 1);
    return f;
}

LinearFunctional mutual_information(const PartySystem& sys, mask_t a, mask_t b) {
    return conditional_mutual_information(sys, a, b, 0);
}

LinearFunctional conditional_mutual_information(const PartySystem& sys, mask_t a,
                                                mask_t b, mask_t c) {
    if ((a & b) || (a & c) || (b & c))
        throw std::invalid_argument("I(A:B|C) requires pairwise disjoint subsets");
    LinearFunctional f(sys);
    f.add(a | c, 1);
    f.add(b | c, 1);
    f.add(a | b | c, -1);
    f.add(c, -1);
    return f;
}

}  // namespace entrocone
