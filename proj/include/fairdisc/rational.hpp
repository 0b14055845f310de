#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fairdisc {

// Exact arithmetic for utilities supplied as "p/q" strings. Everything
// else in the toolkit runs on double with a fixed relative tolerance.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(s));
    }
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += '/';
    out += denominator(r).str();
  }
  return out;
}

// Exact binary value of a finite double.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rational(x);
}

// Comparison policy used by the verifiers: exact for Rational, relative
// 1e-9 for double (shields binary-float ingestion only).
template <class T>
struct value_policy {
  static bool geq(const T& a, const T& b) { return a >= b; }
  static bool leq_zero(const T& a) { return a <= 0; }
};

template <>
struct value_policy<double> {
  static constexpr double rel_tol = 1e-9;
  static bool geq(double a, double b) {
    return a >= b - rel_tol * std::max(std::fabs(a), std::fabs(b));
  }
  static bool leq_zero(double a) { return a <= 0.0; }
};

}  // namespace fairdisc
