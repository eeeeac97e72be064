#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bmono {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" or "p", optional sign on p
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(Integer(std::string(s)));
    Integer p(std::string(s.substr(0, slash)));
    Integer q(std::string(s.substr(slash + 1)));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational: " + std::string(s));
  }
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Dyadic rational agreeing with v to the given number of fractional bits.
inline Rational from_double(double v, int bits = 40) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  int e = 0;
  double m = std::frexp(v, &e);  // v = m * 2^e, 0.5 <= |m| < 1
  Integer mant(static_cast<long long>(std::ldexp(m, 53)));
  int shift = e - 53;  // v = mant * 2^shift
  if (shift >= 0) return Rational(mant << shift);
  if (-shift > bits) {
    bool neg = mant < 0;
    if (neg) mant = -mant;
    mant >>= (-shift - bits);
    if (neg) mant = -mant;
    return Rational(mant, Integer(1) << bits);
  }
  return Rational(mant, Integer(1) << (-shift));
}

}  // namespace bmono
