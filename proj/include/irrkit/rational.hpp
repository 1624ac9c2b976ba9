#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irrkit/errors.hpp"

namespace irrkit {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) {
    throw InputError("not an integer: '" + std::string(text) + "'");
  }
  return z;
}

/// Accepts "p" or "p/q" with q != 0; the result is canonical.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// n/d in lowest terms (the two-argument mpq constructor does not canonicalize).
inline Rational ratio(const Integer& n, const Integer& d) {
  if (d == 0) throw InputError("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool fits_int64(const Integer& z) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return z.fits_slong_p();
}

inline std::int64_t to_int64(const Integer& z) {
  if (!fits_int64(z)) throw InputError("integer out of 64-bit range: " + z.get_str());
  return z.get_si();
}

inline Integer gcd_of(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Divides by the content and makes the first nonzero entry positive. Zero vectors are left alone.
inline void make_primitive(IntVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) return;
  bool flip = false;
  for (const auto& x : v) {
    if (x != 0) {
      flip = x < 0;
      break;
    }
  }
  if (flip) g = -g;
  if (g == 1) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline std::size_t binomial_size(std::size_t n, std::size_t k) {
  Integer b = binomial(n, k);
  if (!b.fits_ulong_p()) throw InputError("binomial coefficient too large");
  return b.get_ui();
}

}  // namespace irrkit
