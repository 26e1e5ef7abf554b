#pragma once

#include <sstream>
#include <string>

#include "eqsigma/integrality.hpp"

namespace eqsigma {

// "u5 u2^2/2! u1" for exponents aligned with gaps, largest gap first.
inline std::string hurwitz_monomial(const std::vector<int>& gaps, const GapPolynomial::Exponents& k) {
  std::string s;
  for (std::size_t i = gaps.size(); i-- > 0;) {
    if (!k[i]) continue;
    if (!s.empty()) s += " ";
    s += "u" + std::to_string(gaps[i]);
    if (k[i] > 1) s += "^" + std::to_string(k[i]) + "/" + std::to_string(k[i]) + "!";
  }
  return s.empty() ? "1" : s;
}

// One line per u-weight stratum: "C<w>: (a) mono + (a) mono ...".
inline std::string expansion_to_text(const SigmaExpansion& s, const std::string& title = "sigma") {
  std::ostringstream out;
  out << title << " (e,q) = (" << s.e << "," << s.q << ")  wt = " << s.sigma_weight
      << "  max u-weight = " << s.max_u_weight << "  truncation N = " << s.truncation_N << "\n";
  out << "gaps:";
  for (int w : s.gaps) out << " " << w;
  out << "\n";
  out << "q sign: " << s.q_sign_convention << "\n";
  int cur = -1;
  for (const auto& [k, a] : s.terms.ordered_terms()) {
    int w = s.terms.weight_of(k);
    if (w != cur) {
      if (cur >= 0) out << "\n";
      out << "C" << w << ":";
      cur = w;
    } else {
      out << " +";
    }
    out << " (" << a.to_string() << ") " << hurwitz_monomial(s.gaps, k);
  }
  if (cur >= 0) out << "\n";
  return out.str();
}

inline std::string report_to_text(const IntegralityReport& r, const SigmaExpansion& s) {
  std::ostringstream out;
  out << "ring " << ring_name(r.ring) << "  weight bound " << r.weight_bound << "  verdict "
      << (r.verdict ? "true" : "false") << "  violations " << r.violations.size() << "\n";
  for (const auto& v : r.violations) {
    out << "  " << hurwitz_monomial(s.gaps, v.exponents) << "  primes";
    for (const auto& p : v.primes) out << " " << p.get_str();
    out << "  coefficient " << v.coefficient.to_string() << "\n";
  }
  return out.str();
}

}  // namespace eqsigma
