#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "eqsigma/sigma/sigma.hpp"

namespace eqsigma {

enum class Ring { ZMu, ZMuPrime };

inline const char* ring_name(Ring r) { return r == Ring::ZMu ? "Z_mu" : "Z_mu_prime"; }

struct Violation {
  GapPolynomial::Exponents exponents;
  std::set<Integer> primes;
  MuPolynomial coefficient;  // as tested (after mu -> 2 mu' for Z_mu_prime)
};

struct IntegralityReport {
  Ring ring = Ring::ZMu;
  std::vector<Violation> violations;
  bool verdict = true;
  int weight_bound = 0;
};

// mu_j multiplying x^i y^k in f with i and k both odd.
inline std::set<int> odd_odd_mu_set(int e, int q) {
  CurveModel c = build_curve(e, q);
  std::set<int> out;
  for (const auto& [key, coef] : c.f.terms()) {
    auto [m, n] = key;
    if (m % 2 == 1 && n % 2 == 1)
      for (int j : coef.variables()) out.insert(j);
  }
  return out;
}

inline std::set<int> odd_odd_mu_set(const CurveModel& curve) { return odd_odd_mu_set(curve.e, curve.q); }

inline IntegralityReport check_hurwitz(const SigmaExpansion& s, Ring ring) {
  IntegralityReport rep;
  rep.ring = ring;
  rep.weight_bound = s.max_u_weight;
  std::map<int, MuPolynomial> doubling;
  if (ring == Ring::ZMuPrime)
    for (int j : odd_odd_mu_set(s.e, s.q)) doubling[j] = MuPolynomial::mu(j) * 2;
  for (const auto& [k, a] : s.terms.ordered_terms()) {
    MuPolynomial c = doubling.empty() ? a : a.substitute_partial(doubling);
    if (c.is_integral()) continue;
    rep.violations.push_back({k, c.denominator_primes(), c});
  }
  rep.verdict = rep.violations.empty();
  return rep;
}

inline IntegralityReport check_sigma_square(const SigmaExpansion& s) {
  return check_hurwitz(sigma_square(s), Ring::ZMu);
}

// Minimum 2-adic valuation over the monomial coefficients of each term.
inline std::map<GapPolynomial::Exponents, long> two_adic_profile(const SigmaExpansion& s) {
  std::map<GapPolynomial::Exponents, long> out;
  for (const auto& [k, a] : s.terms.terms()) out[k] = a.two_adic_valuation();
  return out;
}

// The shape the main theorem predicts for Z_mu violations: only the prime 2,
// and every non-integral monomial contains an odd-odd mu.
inline bool violations_explained(const IntegralityReport& rep, const std::set<int>& odd_odd) {
  for (const auto& v : rep.violations) {
    for (const auto& p : v.primes)
      if (p != 2) return false;
    for (const auto& [m, c] : v.coefficient.terms()) {
      if (c.get_den() == 1) continue;
      bool has = false;
      for (int j : odd_odd)
        if (m.exp[j - 1]) has = true;
      if (!has) return false;
    }
  }
  return true;
}

}  // namespace eqsigma
