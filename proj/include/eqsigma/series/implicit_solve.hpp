#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqsigma/series/laurent_series.hpp"

namespace eqsigma {

// Polynomial in two variables with Q[mu] coefficients; key (i, j) is the
// exponent pair of the first and second variable.
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;

  void add(int i, int j, const MuPolynomial& c) {
    auto& slot = terms_[{i, j}];
    slot += c;
    if (slot.is_zero()) terms_.erase({i, j});
  }

  MuPolynomial coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? MuPolynomial() : it->second;
  }

  const std::map<Key, MuPolynomial>& terms() const { return terms_; }

  int max_second_degree() const {
    int d = 0;
    for (const auto& kv : terms_) d = std::max(d, kv.first.second);
    return d;
  }

  BivariatePoly derivative_second() const {
    BivariatePoly r;
    for (const auto& [k, c] : terms_)
      if (k.second > 0) r.add(k.first, k.second - 1, c * Rational(k.second));
    return r;
  }

  BivariatePoly map_coeffs(const std::function<MuPolynomial(const MuPolynomial&)>& fn) const {
    BivariatePoly r;
    for (const auto& [k, c] : terms_) r.add(k.first, k.second, fn(c));
    return r;
  }

  // Sum of c * a^i * b^j with both arguments as series; cap bounds the result.
  LaurentSeries evaluate(const LaurentSeries& a, const LaurentSeries& b, int cap) const {
    std::map<int, LaurentSeries> pa, pb;
    auto power = [cap](std::map<int, LaurentSeries>& cache, const LaurentSeries& base, int n) {
      auto it = cache.find(n);
      if (it != cache.end()) return it->second;
      LaurentSeries r = base.pow(n, cap);
      cache.emplace(n, r);
      return r;
    };
    LaurentSeries out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      LaurentSeries term = LaurentSeries::mul(power(pa, a, k.first), power(pb, b, k.second), cap) * c;
      out = first ? term : out + term;
      first = false;
    }
    if (first) return LaurentSeries::zero(cap);
    return out.truncated(cap);
  }

  std::string to_string(const std::string& v1, const std::string& v2) const {
    std::string s;
    for (const auto& [k, c] : terms_) {
      for (const auto& [m, a0] : c.terms()) {
        Rational a = a0;
        if (s.empty()) {
          if (a < 0) s += "-";
        } else {
          s += a < 0 ? " - " : " + ";
        }
        if (a < 0) a = -a;
        s += MuPolynomial(a).to_string() + MuPolynomial::from_terms({{m, Rational(1)}}).to_string().substr(1);
        if (k.first) s += "*" + v1 + (k.first == 1 ? "" : "^" + std::to_string(k.first));
        if (k.second) s += "*" + v2 + (k.second == 1 ? "" : "^" + std::to_string(k.second));
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::map<Key, MuPolynomial> terms_;
};

// Solves F(t, s(t)) = 0 for s(t) = O(t^2) given F = s + (terms whose
// contribution to t^k only involves lower coefficients of s). Coefficients
// are produced one at a time while the powers s^j are kept up to date, so
// each pass costs one new coefficient of every power.
inline LaurentSeries implicit_solve(const BivariatePoly& F, int order, std::optional<int> weight = std::nullopt) {
  if (F.coeff(0, 1) != MuPolynomial(1) || !F.coeff(0, 0).is_zero() || !F.coeff(1, 0).is_zero())
    throw Error(ErrorCode::BadNormalForm, "F must be s + O(t^2) at the origin");
  for (const auto& [k, c] : F.terms())
    if (k.first < 0 || k.second < 0)
      throw Error(ErrorCode::BadNormalForm, "negative exponent in F");
  int J = F.max_second_degree();
  // pw[j][k] = coefficient of t^k in s^j.
  std::vector<std::vector<MuPolynomial>> pw(J + 1, std::vector<MuPolynomial>(std::max(order, 1)));
  pw[0][0] = MuPolynomial(1);
  for (int k = 0; k < order; ++k) {
    for (int j = 2; j <= J; ++j) {
      MuPolynomial acc;
      for (int a = 2; a <= k - 2 * (j - 1); ++a) {
        if (pw[1][a].is_zero() || pw[j - 1][k - a].is_zero()) continue;
        acc += pw[1][a] * pw[j - 1][k - a];
      }
      pw[j][k] = acc;
    }
    MuPolynomial sk;
    for (const auto& [key, c] : F.terms()) {
      auto [i, j] = key;
      if (i == 0 && j == 1) continue;
      if (k - i < 0) continue;
      const MuPolynomial& p = pw[j][k - i];
      if (!p.is_zero()) sk -= c * p;
    }
    pw[1][k] = sk;
  }
  return LaurentSeries(0, pw[1], order, weight);
}

}  // namespace eqsigma
