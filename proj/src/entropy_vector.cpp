#include "entrocone/entropy_vector.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace entrocone {

namespace {

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::string format_bits(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

constexpr double kPurityTolBits = 1e-9;

}  // namespace

Scale Scale::exact_log(unsigned p) {
    if (!is_prime(p)) throw std::invalid_argument("exact scale requires a prime");
    return Scale{Kind::exact_log, p};
}

double Scale::bits_per_unit() const {
    return exact() ? std::log2(static_cast<double>(prime)) : 1.0;
}

std::string Scale::str() const {
    return exact() ? "log2(" + std::to_string(prime) + ")" : "bits";
}

EntropyVector EntropyVector::exact(PartySystem sys, unsigned prime,
                                   std::vector<Rational> values, bool pure) {
    EntropyVector v;
    v.scale_ = Scale::exact_log(prime);
    if (values.size() != (size_t{1} << sys.size()))
        throw std::invalid_argument("entropy vector needs 2^N entries");
    if (values[0] != 0) throw std::invalid_argument("S(empty) must be 0");
    if (pure) {
        for (mask_t j = 0; j <= sys.full_mask(); ++j)
            if (values[j] != values[sys.complement(j)])
                throw std::invalid_argument("pure vector violates S(J) = S(J^c)");
    }
    v.sys_ = std::move(sys);
    v.exact_ = std::move(values);
    v.pure_ = pure;
    return v;
}

EntropyVector EntropyVector::numeric(PartySystem sys, std::vector<double> bits, bool pure) {
    EntropyVector v;
    v.scale_ = Scale::numeric_bits();
    if (bits.size() != (size_t{1} << sys.size()))
        throw std::invalid_argument("entropy vector needs 2^N entries");
    if (bits[0] != 0.0) throw std::invalid_argument("S(empty) must be 0");
    if (pure) {
        for (mask_t j = 0; j <= sys.full_mask(); ++j)
            if (std::abs(bits[j] - bits[sys.complement(j)]) > kPurityTolBits)
                throw std::invalid_argument("pure vector violates S(J) = S(J^c)");
    }
    v.sys_ = std::move(sys);
    v.bits_ = std::move(bits);
    v.pure_ = pure;
    return v;
}

const Rational& EntropyVector::exact_value(mask_t j) const {
    if (!is_exact()) throw std::logic_error("exact_value on numeric entropy vector");
    if (j > sys_.full_mask()) throw std::invalid_argument("subset mask outside universe");
    return exact_[j];
}

double EntropyVector::bits(mask_t j) const {
    if (j > sys_.full_mask()) throw std::invalid_argument("subset mask outside universe");
    if (is_exact()) return to_double(exact_[j]) * scale_.bits_per_unit();
    return bits_[j];
}

const std::vector<Rational>& EntropyVector::exact_values() const {
    if (!is_exact()) throw std::logic_error("exact_values on numeric entropy vector");
    return exact_;
}

EntropyVector EntropyVector::to_bits() const {
    if (!is_exact()) return *this;
    std::vector<double> b(exact_.size());
    for (size_t j = 0; j < exact_.size(); ++j) b[j] = bits(static_cast<mask_t>(j));
    return numeric(sys_, std::move(b), pure_);
}

bool EntropyVector::operator==(const EntropyVector& other) const {
    return sys_ == other.sys_ && scale_ == other.scale_ && exact_ == other.exact_ &&
           bits_ == other.bits_;
}

void EntropyVector::write_csv(std::ostream& out) const {
    out << "party_system";
    for (const auto& n : sys_.labels()) out << ',' << n;
    out << '\n';
    for (mask_t j = 1; j <= sys_.full_mask(); ++j) {
        out << sys_.subset_label(j) << ',';
        if (is_exact()) {
            if (exact_[j] == 0)
                out << '0';
            else
                out << exact_[j].get_str() << "*log2(" << scale_.prime << ")";
        } else {
            out << format_bits(bits_[j]);
        }
        out << ',' << scale_.str() << '\n';
    }
}

EntropyVector EntropyVector::read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty entropy CSV");
    std::stringstream header(line);
    std::string field;
    if (!std::getline(header, field, ',') || field != "party_system")
        throw std::invalid_argument("entropy CSV must start with party_system header");
    std::vector<std::string> labels;
    while (std::getline(header, field, ',')) labels.push_back(field);
    PartySystem sys(labels);

    std::vector<Rational> exact(size_t{1} << sys.size(), Rational(0));
    std::vector<double> bits(size_t{1} << sys.size(), 0.0);
    std::vector<bool> seen(size_t{1} << sys.size(), false);
    bool any_exact = false, any_numeric = false;
    unsigned prime = 0;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string subset, value, scale;
        if (!std::getline(row, subset, ',') || !std::getline(row, value, ',') ||
            !std::getline(row, scale, ','))
            throw std::invalid_argument("malformed entropy CSV row: '" + line + "'");
        mask_t j = sys.subset_mask(subset);
        if (j == 0) throw std::invalid_argument("empty subset row in entropy CSV");
        seen[j] = true;
        if (scale == "bits") {
            any_numeric = true;
            bits[j] = std::stod(value);
        } else if (scale.rfind("log2(", 0) == 0 && scale.back() == ')') {
            any_exact = true;
            unsigned p = static_cast<unsigned>(std::stoul(scale.substr(5, scale.size() - 6)));
            if (prime != 0 && p != prime)
                throw std::invalid_argument("mixed primes in entropy CSV");
            prime = p;
            auto star = value.find('*');
            exact[j] = value == "0" ? Rational(0) : parse_rational(value.substr(0, star));
        } else {
            throw std::invalid_argument("unknown scale '" + scale + "'");
        }
    }
    if (any_exact && any_numeric) throw std::invalid_argument("mixed scales in entropy CSV");
    for (mask_t j = 1; j <= sys.full_mask(); ++j)
        if (!seen[j])
            throw std::invalid_argument("entropy CSV missing subset " + sys.subset_label(j));
    if (any_exact) return EntropyVector::exact(sys, prime, std::move(exact));
    return EntropyVector::numeric(sys, std::move(bits));
}

Rational ModularPart::rank(mask_t j) const {
    if (j > system.full_mask()) throw std::invalid_argument("subset mask outside universe");
    Rational r = 0;
    for (int i = 0; i < system.size(); ++i)
        if (j & (mask_t{1} << i)) r += weights.at(i);
    return r;
}

EntropyVector ModularPart::induced_exact(unsigned prime) const {
    std::vector<Rational> values(size_t{1} << system.size());
    for (mask_t j = 0; j <= system.full_mask(); ++j) values[j] = rank(j);
    return EntropyVector::exact(system, prime, std::move(values));
}

mask_t subset_complement(const PartySystem& sys, mask_t j) { return sys.complement(j); }

}  // namespace entrocone
