#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "torodyn/errors.hpp"

namespace torodyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline BigInt ipow(BigInt base, unsigned exp) {
  BigInt r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline BigInt iabs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Floor of num/den for den > 0.
inline BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q = n / d;
  if ((n % d) != 0 && ((n < 0) != (d < 0))) --q;
  return q;
}

inline BigInt floor_rat(const Rational& q) { return floor_div(num(q), den(q)); }

// Reduce q into [0, 1) mod 1.
inline Rational mod1(const Rational& q) {
  Rational f = q - Rational(floor_rat(q));
  return f;
}

// Nearest rational with denominator 2^bits (round half toward zero); used to
// cap denominator growth during exact Newton refinement.
inline Rational round_dyadic(const Rational& q, unsigned bits) {
  BigInt scaled_num = num(q) << bits;
  BigInt d = den(q);
  BigInt twice = 2 * scaled_num + (scaled_num < 0 ? -d : d);
  BigInt rounded = twice / (2 * d);
  return Rational(rounded, BigInt(1) << bits);
}

// Parse "p", "p/q", or a decimal like "0.75" into an exact rational.
inline Rational parse_rational(std::string_view s) {
  auto bad = [&] { throw ConfigError("cannot parse rational: '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash != std::string_view::npos) {
      BigInt p(std::string(s.substr(0, slash)));
      BigInt q(std::string(s.substr(slash + 1)));
      if (q == 0) bad();
      return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return Rational(BigInt(std::string(s)));
    std::string head(s.substr(0, dot)), tail(s.substr(dot + 1));
    if (tail.empty()) return Rational(BigInt(head.empty() ? "0" : head));
    bool neg = !head.empty() && head[0] == '-';
    BigInt whole(head.empty() || head == "-" ? "0" : head);
    BigInt frac{tail};
    BigInt scale = ipow(10, static_cast<unsigned>(tail.size()));
    Rational r = Rational(iabs(whole)) + Rational(frac, scale);
    return neg ? -r : r;
  } catch (const std::exception&) {
    bad();
  }
  return {};
}

inline std::string rational_str(const Rational& q) {
  std::string s = num(q).str();
  if (den(q) != 1) s += "/" + den(q).str();
  return s;
}

// FNV-1a, used to stamp config hashes into reports.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace torodyn
