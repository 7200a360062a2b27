#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace entrocone {

using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }
inline double to_double(const Rational& q) { return q.get_d(); }

// Scales a rational vector to integers (lcm of denominators) and divides out
// the content. Direction is preserved; the zero vector maps to itself.
std::vector<Integer> to_integer_vector(const std::vector<Rational>& v);

// Divides the vector by the gcd of its entries (no sign flip).
void reduce_by_content(std::vector<Integer>& v);

// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& s);

}  // namespace entrocone
