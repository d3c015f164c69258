#include "marsem/numeric.hpp"
#include "marsem/errors.hpp"

namespace marsem {

std::string to_string(const Int& v) { return v.str(); }

std::string to_string(const Rat& q) {
    if (is_integral(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Int int_from_string(std::string_view s) {
    if (s.empty()) throw input_error("empty integer literal");
    try {
        return Int(std::string(s));
    } catch (const std::exception&) {
        throw input_error("bad integer literal: '" + std::string(s) + "'");
    }
}

Rat rat_from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(int_from_string(s));
    Int num = int_from_string(s.substr(0, slash));
    Int den = int_from_string(s.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in '" + std::string(s) + "'");
    return Rat(num, den);
}

} // namespace marsem
