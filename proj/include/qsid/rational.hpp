#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include <boost/rational.hpp>

#include "qsid/errors.hpp"

// Boost's mixed rational/integer operator== recurses forever under C++20's
// reversed-candidate rules; these exact overloads win resolution instead.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == static_cast<long>(b); }
inline bool operator==(long b, const rational<std::int64_t>& a) { return a == b; }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a == static_cast<long>(b); }
inline bool operator!=(const rational<std::int64_t>& a, long b) { return !(a == b); }
inline bool operator!=(const rational<std::int64_t>& a, int b) { return !(a == b); }
inline bool operator!=(long b, const rational<std::int64_t>& a) { return !(a == b); }
inline bool operator!=(int b, const rational<std::int64_t>& a) { return !(a == b); }
} // namespace boost

namespace qsid {

using Rational = boost::rational<std::int64_t>;

// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& r);

// Parses "a", "-a" or "a/b".
Rational parse_rational(const std::string& text);

// Exponent q^r as a power of t = q^(1/D); throws SubstrateError if r*D is fractional.
std::int64_t to_t_units(const Rational& r, int denom);

inline Rational from_t_units(std::int64_t t, int denom) { return Rational(t, denom); }

inline std::int64_t lcm_denominator(std::int64_t acc, const Rational& r) {
    return std::lcm(acc, r.denominator());
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace qsid
