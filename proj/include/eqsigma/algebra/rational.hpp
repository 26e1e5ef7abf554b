#pragma once

#include <gmpxx.h>

#include <cctype>
#include <limits>
#include <set>
#include <string>
#include <string_view>

#include "eqsigma/errors.hpp"

namespace eqsigma {

// mpq_class keeps itself canonical (reduced, positive denominator) as long as
// every constructor path goes through canonicalize(), which make_rational does.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  std::size_t slash = s.find('/');
  auto digits_ok = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// Exponent of p in |n|, n != 0.
inline long valuation(const Integer& n, unsigned long p) {
  if (n == 0) return std::numeric_limits<long>::max();
  Integer m = abs(n);
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline long valuation(const Rational& r, unsigned long p) {
  if (r == 0) return std::numeric_limits<long>::max();
  return valuation(Integer(r.get_num()), p) - valuation(Integer(r.get_den()), p);
}

inline std::set<Integer> prime_factors(Integer n) {
  std::set<Integer> out;
  n = abs(n);
  if (n <= 1) return out;
  for (unsigned long p = 2; p < 100000 && n > 1; ++p) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    out.insert(Integer(p));
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) break;
  }
  if (n > 1) {
    // Remaining cofactor: prime (by the test above) or a product of large
    // primes that we do not split further. Denominators here are factorial
    // sized, so the second case is not expected.
    out.insert(n);
  }
  return out;
}

}  // namespace eqsigma
