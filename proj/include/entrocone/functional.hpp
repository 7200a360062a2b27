#pragma once

#include <map>
#include <string>
#include <vector>

#include "entrocone/entropy_vector.hpp"
#include "entrocone/party.hpp"
#include "entrocone/rational.hpp"

namespace entrocone {

// Result of evaluating a linear functional on an entropy vector. For exact
// vectors the sign is decided in rational arithmetic; the numeric mirror is
// always filled in.
struct Margin {
    Scale scale;
    bool exact = false;
    Rational exact_units;  // meaningful when exact, in units of log2(prime)
    double value_bits = 0.0;

    // -1 / 0 / +1. Numeric margins within tol of zero count as 0.
    int classify(double tol_bits = 1e-9) const;
};

struct BalanceReport {
    bool balanced = false;
    std::vector<Rational> defects;  // per-party column sums
};

// Rational coefficient per nonempty subset (sparse; missing = 0). Hosts the
// left-hand side of one entropy inequality.
class LinearFunctional {
public:
    explicit LinearFunctional(PartySystem sys) : sys_(std::move(sys)) {}

    const PartySystem& system() const { return sys_; }
    const std::map<mask_t, Rational>& coeffs() const { return coeffs_; }
    Rational coeff(mask_t j) const;

    // Adds c * S(J). J = 0 contributes nothing (S(empty) = 0 absorbs it).
    void add(mask_t j, const Rational& c);

    LinearFunctional& operator+=(const LinearFunctional& other);
    LinearFunctional& operator-=(const LinearFunctional& other);
    LinearFunctional& operator*=(const Rational& c);
    friend LinearFunctional operator+(LinearFunctional a, const LinearFunctional& b) {
        a += b;
        return a;
    }
    friend LinearFunctional operator-(LinearFunctional a, const LinearFunctional& b) {
        a -= b;
        return a;
    }
    friend LinearFunctional operator*(const Rational& c, LinearFunctional f) {
        f *= c;
        return f;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool operator==(const LinearFunctional& other) const;

    // Same functional scaled by a positive rational so coefficients are
    // integers with content 1. Canonical form for dedup and equality of
    // inequality instances.
    LinearFunctional normalized() const;

    // Balanced <=> every per-party column sum vanishes <=> the functional
    // annihilates every modular rank function.
    BalanceReport balance() const;

    Margin evaluate(const EntropyVector& v) const;
    Rational evaluate_modular(const ModularPart& m) const;

    // Dense coefficient row over masks 1..2^N-1 (index = mask - 1).
    std::vector<Rational> dense_row() const;

    std::string str() const;  // e.g. "+S(ac)+S(bc)-S(abc)-S(c)"

private:
    PartySystem sys_;
    std::map<mask_t, Rational> coeffs_;  // zero coefficients never stored
};

// S(J) as a functional.
LinearFunctional entropy_term(const PartySystem& sys, mask_t j);

// I(A:B) = S(A)+S(B)-S(AB); throws if A, B overlap.
LinearFunctional mutual_information(const PartySystem& sys, mask_t a, mask_t b);

// I(A:B|C) = S(AC)+S(BC)-S(ABC)-S(C); C may be empty. Throws on overlap.
LinearFunctional conditional_mutual_information(const PartySystem& sys, mask_t a,
                                                mask_t b, mask_t c);

}  // namespace entrocone
