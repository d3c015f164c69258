#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace marsem {

// Exact arithmetic everywhere: integers for semigroup data, rationals for
// cone data. Floating point is never used for any decision.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integral(const Rat& q) { return denominator(q) == 1; }

inline Int to_int(const Rat& q) { return numerator(q) / denominator(q); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int rat_floor(const Rat& q) { return floor_div(numerator(q), denominator(q)); }
inline Int rat_ceil(const Rat& q) { return ceil_div(numerator(q), denominator(q)); }

std::string to_string(const Int& v);

/// "p" when integral, "p/q" otherwise (q > 0, canonical form).
std::string to_string(const Rat& q);

Int int_from_string(std::string_view s);
Rat rat_from_string(std::string_view s);

} // namespace marsem
