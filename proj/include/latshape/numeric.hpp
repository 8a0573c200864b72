#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latshape {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Integer abs(const Integer &a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Integer lcm(const Integer &a, const Integer &b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

// g = gcd(a, b) = s*a + t*b with g >= 0
inline Integer ext_gcd(const Integer &a, const Integer &b, Integer &s, Integer &t) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    Integer s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Integer t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return r0;
}

// floor division and nonnegative remainder
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer mod(const Integer &a, const Integer &b) {
  Integer r = a % b;
  if (r < 0) r += abs(b);
  return r;
}

inline Integer numerator(const Rational &r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational &r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational &r) { return denominator(r) == 1; }

inline Rational abs(const Rational &r) { return r < 0 ? Rational(-r) : r; }

// p-adic valuation, a != 0
inline int valuation(Integer a, const Integer &p) {
  if (a == 0) throw MathError("valuation of zero");
  a = abs(a);
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rational &r, const Integer &p) {
  return valuation(numerator(r), p) - valuation(denominator(r), p);
}

inline Integer isqrt(const Integer &a) {
  if (a < 0) throw MathError("isqrt of negative");
  return boost::multiprecision::sqrt(a);
}

inline bool is_square(const Integer &a) {
  if (a < 0) return false;
  Integer s = isqrt(a);
  return s * s == a;
}

inline bool is_prime(const Integer &n) {
  if (n < 2) return false;
  for (Integer d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<Integer> prime_factors(Integer n) {
  std::vector<Integer> out;
  n = abs(n);
  for (Integer d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline Integer pow(Integer b, unsigned e) {
  Integer r = 1;
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

inline std::string to_string(const Integer &a) { return a.str(); }

inline std::string to_string(const Rational &r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string &s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer d(s.substr(slash + 1));
    if (d == 0) throw MathError("zero denominator in '" + s + "'");
    return Rational(Integer(s.substr(0, slash))) / Rational(d); // the two-argument constructor rejects d < 0
  } catch (const std::runtime_error &) {
    throw MathError("cannot parse rational '" + s + "'");
  }
}

inline double to_double(const Rational &r) { return r.convert_to<double>(); }
inline double to_double(const Integer &a) { return a.convert_to<double>(); }
inline long long to_ll(const Integer &a) { return a.convert_to<long long>(); }

} // namespace latshape
