#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "entrocone/party.hpp"
#include "entrocone/rational.hpp"

namespace entrocone {

// Value scale of an entropy vector: either exact rational multiples of
// log2(p) for a single prime p, or plain floating-point bits.
struct Scale {
    enum class Kind { exact_log, bits };

    Kind kind = Kind::bits;
    unsigned prime = 0;

    static Scale exact_log(unsigned p);
    static Scale numeric_bits() { return Scale{Kind::bits, 0}; }

    bool exact() const { return kind == Kind::exact_log; }
    double bits_per_unit() const;
    std::string str() const;  // "log2(p)" or "bits"

    bool operator==(const Scale&) const = default;
};

// One entropy value per nonempty subset of a party system. S(empty) = 0 by
// construction. Exact vectors hold rationals in units of log2(prime);
// numeric vectors hold bits.
class EntropyVector {
public:
    // `values` indexed by subset mask, size 1 << N; entry 0 must be zero.
    static EntropyVector exact(PartySystem sys, unsigned prime,
                               std::vector<Rational> values, bool pure = false);
    static EntropyVector numeric(PartySystem sys, std::vector<double> bits,
                                 bool pure = false);

    const PartySystem& system() const { return sys_; }
    const Scale& scale() const { return scale_; }
    bool is_exact() const { return scale_.exact(); }
    bool pure() const { return pure_; }

    // Exact value in units of log2(prime); throws on numeric vectors.
    const Rational& exact_value(mask_t j) const;
    // Value in bits, exact vectors converted via log2(prime).
    double bits(mask_t j) const;

    const std::vector<Rational>& exact_values() const;
    EntropyVector to_bits() const;

    // CSV: header "party_system,<labels...>", rows "subset,value,scale".
    void write_csv(std::ostream& out) const;
    static EntropyVector read_csv(std::istream& in);

    bool operator==(const EntropyVector& other) const;

private:
    EntropyVector() = default;

    PartySystem sys_{std::vector<std::string>{"a"}};
    Scale scale_;
    std::vector<Rational> exact_;  // empty unless exact
    std::vector<double> bits_;     // empty unless numeric
    bool pure_ = false;
};

// Additive ("modular") rank function h0(J) = sum of per-party weights over J.
struct ModularPart {
    PartySystem system;
    std::vector<Rational> weights;  // one nonnegative weight per party

    Rational rank(mask_t j) const;

    // Entropy vector h0 in units of log2(prime).
    EntropyVector induced_exact(unsigned prime) const;
};

mask_t subset_complement(const PartySystem& sys, mask_t j);

}  // namespace entrocone
