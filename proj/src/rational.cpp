#include "entrocone/rational.hpp"

#include <stdexcept>

namespace entrocone {

std::vector<Integer> to_integer_vector(const std::vector<Rational>& v) {
    Integer denom_lcm = 1;
    for (const auto& q : v) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rational scaled = v[i] * Rational(denom_lcm);
        out[i] = scaled.get_num();  // denominator is 1 by construction
    }
    reduce_by_content(out);
    return out;
}

void reduce_by_content(std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& z : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 0 || g == 1) return;
    for (auto& z : v) z /= g;
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace entrocone
