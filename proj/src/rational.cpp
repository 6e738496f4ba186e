#include "modinv/rational.hpp"

#include <charconv>

#include "modinv/errors.hpp"

namespace modinv {

std::int64_t floor(const Rational& r) {
  // boost::rational keeps the denominator positive.
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

Rational fractional_part(const Rational& r) { return r - floor(r); }

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_display_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return to_string(r);
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  std::int64_t num = parse_int(text.substr(0, slash), text);
  std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in rational '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace modinv
