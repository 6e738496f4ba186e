#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74 declares mixed rational/integer equality as templates that, under
// C++20's reversed-operator rules, resolve to each other and never return.
// Exact non-template overloads win overload resolution and break the cycle.
namespace boost {

inline bool operator==(const rational<std::int64_t>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, long long b) {
  return a.denominator() == 1 && a.numerator() == b;
}

}  // namespace boost

namespace modinv {

using Rational = boost::rational<std::int64_t>;

// Largest integer not exceeding r.
std::int64_t floor(const Rational& r);

// r - floor(r), always in [0, 1).
Rational fractional_part(const Rational& r);

// "num/den" for JSON; integers keep the "/1" suffix.
std::string to_string(const Rational& r);

// Compact form for terminals: "3" instead of "3/1".
std::string to_display_string(const Rational& r);

// Accepts "num/den" or a bare integer. Throws ParseError.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace modinv
