#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pathcuts {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// Parses "p/q" or a plain integer.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::mpz_int(s));
    boost::multiprecision::mpz_int num(s.substr(0, slash));
    boost::multiprecision::mpz_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in rational '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

// Always emits "p/q", including q = 1.
inline std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Short form for human-readable output: "p" when integral.
inline std::string pretty_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return format_rational(r);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("int64 addition overflow");
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("int64 subtraction overflow");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("int64 multiplication overflow");
  return out;
}

inline std::int64_t pos_part(std::int64_t a) { return a > 0 ? a : 0; }

}  // namespace pathcuts
