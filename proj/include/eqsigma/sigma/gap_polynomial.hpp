#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "eqsigma/algebra/mu_polynomial.hpp"

namespace eqsigma {

// Polynomial in variables indexed by the Weierstrass gaps (U_w or u_w) with
// Q[mu] coefficients, truncated above a weight bound; wt(u_w) = w.
class GapPolynomial {
 public:
  using Exponents = std::vector<int>;  // k_j is the exponent of the variable at gaps[j]

  GapPolynomial() = default;
  GapPolynomial(std::vector<int> gaps, int max_weight) : gaps_(std::move(gaps)), max_weight_(max_weight) {}

  static GapPolynomial constant(const std::vector<int>& gaps, int max_weight, const MuPolynomial& c) {
    GapPolynomial p(gaps, max_weight);
    p.add(Exponents(gaps.size(), 0), c);
    return p;
  }

  static GapPolynomial variable(const std::vector<int>& gaps, int max_weight, std::size_t index,
                                const MuPolynomial& c = MuPolynomial(1)) {
    GapPolynomial p(gaps, max_weight);
    Exponents k(gaps.size(), 0);
    k.at(index) = 1;
    p.add(k, c);
    return p;
  }

  const std::vector<int>& gaps() const { return gaps_; }
  int max_weight() const { return max_weight_; }
  const std::map<Exponents, MuPolynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int weight_of(const Exponents& k) const {
    int w = 0;
    for (std::size_t j = 0; j < k.size(); ++j) w += k[j] * gaps_[j];
    return w;
  }

  void add(const Exponents& k, const MuPolynomial& c) {
    if (c.is_zero() || weight_of(k) > max_weight_) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  MuPolynomial coeff(const Exponents& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? MuPolynomial() : it->second;
  }

  GapPolynomial truncated(int max_weight) const {
    GapPolynomial r(gaps_, std::min(max_weight, max_weight_));
    for (const auto& [k, c] : terms_) r.add(k, c);
    return r;
  }

  GapPolynomial scaled(const MuPolynomial& c) const {
    GapPolynomial r(gaps_, max_weight_);
    for (const auto& [k, v] : terms_) r.add(k, v * c);
    return r;
  }

  friend GapPolynomial operator+(const GapPolynomial& a, const GapPolynomial& b) {
    GapPolynomial r(a.gaps_, std::min(a.max_weight_, b.max_weight_));
    for (const auto& [k, c] : a.terms_) r.add(k, c);
    for (const auto& [k, c] : b.terms_) r.add(k, c);
    return r;
  }

  friend GapPolynomial operator-(const GapPolynomial& a, const GapPolynomial& b) {
    return a + b.scaled(MuPolynomial(-1));
  }

  friend GapPolynomial operator*(const GapPolynomial& a, const GapPolynomial& b) {
    return multiply(a, b, std::min(a.max_weight_, b.max_weight_));
  }

  // Product truncated at an explicit bound; the caller vouches for validity.
  friend GapPolynomial multiply(const GapPolynomial& a, const GapPolynomial& b, int max_weight) {
    GapPolynomial r(a.gaps_, max_weight);
    Exponents k(a.gaps_.size());
    for (const auto& [ka, ca] : a.terms_) {
      int wa = a.weight_of(ka);
      for (const auto& [kb, cb] : b.terms_) {
        if (wa + a.weight_of(kb) > r.max_weight_) continue;
        for (std::size_t j = 0; j < k.size(); ++j) k[j] = ka[j] + kb[j];
        r.add(k, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const GapPolynomial& a, const GapPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const GapPolynomial& a, const GapPolynomial& b) { return !(a == b); }

  // Terms ordered by weight, then by the exponent of the largest gap first.
  std::vector<std::pair<Exponents, MuPolynomial>> ordered_terms() const {
    std::vector<std::pair<Exponents, MuPolynomial>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
      int wx = weight_of(x.first), wy = weight_of(y.first);
      if (wx != wy) return wx < wy;
      for (std::size_t j = x.first.size(); j-- > 0;)
        if (x.first[j] != y.first[j]) return x.first[j] > y.first[j];
      return false;
    });
    return out;
  }

  std::string to_string(const std::string& var = "u") const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : ordered_terms()) {
      if (!first) s += " + ";
      first = false;
      s += "(" + c.to_string() + ")";
      for (std::size_t j = gaps_.size(); j-- > 0;) {
        if (!k[j]) continue;
        s += "*" + var + std::to_string(gaps_[j]);
        if (k[j] > 1) s += "^" + std::to_string(k[j]);
      }
    }
    return s;
  }

 private:
  std::vector<int> gaps_;
  int max_weight_ = 0;
  std::map<Exponents, MuPolynomial> terms_;
};

// Linear substitution var_j -> images[j], truncated at the weight bound of p.
// Every image must only contain terms of weight >= gaps[j].
inline GapPolynomial substitute_linear(const GapPolynomial& p, const std::vector<GapPolynomial>& images) {
  const auto& gaps = p.gaps();
  int W = p.max_weight();
  std::vector<std::vector<GapPolynomial>> powers(gaps.size());
  auto power = [&](std::size_t j, int k) -> const GapPolynomial& {
    auto& pw = powers[j];
    if (pw.empty()) pw.push_back(GapPolynomial::constant(gaps, W, MuPolynomial(1)));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * images[j].truncated(W));
    return pw[k];
  };
  GapPolynomial out(gaps, W);
  for (const auto& [k, c] : p.terms()) {
    GapPolynomial prod = GapPolynomial::constant(gaps, W, c);
    for (std::size_t j = 0; j < gaps.size(); ++j)
      if (k[j]) prod = prod * power(j, k[j]);
    out = out + prod;
  }
  return out;
}

// Multiplies every coefficient by prod k_j! (plain <-> Hurwitz form).
inline GapPolynomial hurwitz_normalize(const GapPolynomial& p) {
  GapPolynomial r(p.gaps(), p.max_weight());
  for (const auto& [k, c] : p.terms()) {
    Integer f = 1;
    for (int kj : k) f *= factorial(kj);
    r.add(k, c * Rational(f));
  }
  return r;
}

inline GapPolynomial hurwitz_denormalize(const GapPolynomial& p) {
  GapPolynomial r(p.gaps(), p.max_weight());
  for (const auto& [k, c] : p.terms()) {
    Integer f = 1;
    for (int kj : k) f *= factorial(kj);
    r.add(k, c * make_rational(Integer(1), f));
  }
  return r;
}

}  // namespace eqsigma
