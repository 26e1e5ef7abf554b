#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqsigma/algebra/mu_polynomial.hpp"
#include "eqsigma/errors.hpp"

namespace eqsigma {

// Sentinel truncation for series known exactly (finitely many terms).
inline constexpr int kExact = 1 << 28;

// Truncation arithmetic: anything at or above kExact stays exact.
inline int sat_add(int a, int b) {
  if (a >= kExact || b >= kExact) return kExact;
  long s = static_cast<long>(a) + b;
  if (s >= kExact) return kExact;
  return static_cast<int>(s);
}

// Truncated Laurent series in one variable over Q[mu].
//
// Coefficients of t^k are stored for start <= k < start + size; the ones in
// [start + size, trunc) are zero and the ones at k >= trunc are unknown. The
// optional weight tag w asserts that the coefficient of t^k has weight w - k.
class LaurentSeries {
 public:
  LaurentSeries() : start_(0), trunc_(kExact) {}

  LaurentSeries(int start, std::vector<MuPolynomial> coeffs, int trunc, std::optional<int> weight = std::nullopt)
      : start_(start), trunc_(trunc), c_(std::move(coeffs)), weight_(weight) {
    if (start_ + static_cast<int>(c_.size()) > trunc_) c_.resize(std::max(0, trunc_ - start_));
    normalize();
    check_weight();
  }

  static LaurentSeries monomial(int k, const MuPolynomial& c, std::optional<int> weight = std::nullopt) {
    return LaurentSeries(k, {c}, kExact, weight);
  }
  static LaurentSeries zero(int trunc = kExact) {
    LaurentSeries s;
    s.trunc_ = trunc;
    s.start_ = trunc == kExact ? 0 : trunc;
    return s;
  }
  static LaurentSeries one() { return monomial(0, MuPolynomial(1), 0); }

  int start() const { return start_; }
  int trunc() const { return trunc_; }
  bool is_exact() const { return trunc_ >= kExact; }
  const std::vector<MuPolynomial>& coeffs() const { return c_; }
  std::optional<int> weight() const { return weight_; }
  bool is_zero() const { return c_.empty(); }

  // Lowest exponent that can be nonzero. For a zero series this is the
  // truncation, so products get the right truncation.
  int order() const { return c_.empty() ? trunc_ : start_; }

  const MuPolynomial& leading() const {
    if (c_.empty()) throw Error(ErrorCode::InsufficientOrder, "leading coefficient of zero series");
    return c_.front();
  }

  MuPolynomial coeff(int k) const {
    if (k >= trunc_)
      throw Error(ErrorCode::InsufficientOrder,
                  "coefficient t^" + std::to_string(k) + " beyond truncation " + std::to_string(trunc_));
    if (k < start_ || k >= start_ + static_cast<int>(c_.size())) return MuPolynomial();
    return c_[k - start_];
  }

  bool known(int k) const { return k < trunc_; }

  LaurentSeries with_weight(std::optional<int> w) const {
    LaurentSeries r = *this;
    r.weight_ = w;
    r.check_weight();
    return r;
  }

  LaurentSeries truncated(int n) const {
    if (n >= trunc_) return *this;
    LaurentSeries r = *this;
    r.trunc_ = n;
    if (r.start_ + static_cast<int>(r.c_.size()) > n) r.c_.resize(std::max(0, n - r.start_));
    r.normalize();
    return r;
  }

  // Multiply by t^k.
  LaurentSeries shifted(int k) const {
    LaurentSeries r = *this;
    r.start_ += k;
    if (!is_exact()) r.trunc_ += k;
    if (r.c_.empty() && r.is_exact()) r.start_ = 0;
    if (weight_) r.weight_ = *weight_ + k;
    return r;
  }

  LaurentSeries operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return add(a, b, false); }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return add(a, b, true); }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b, kExact); }

  friend LaurentSeries operator*(const LaurentSeries& a, const MuPolynomial& k) {
    std::vector<MuPolynomial> c;
    c.reserve(a.c_.size());
    for (const auto& x : a.c_) c.push_back(x * k);
    std::optional<int> w;
    if (a.weight_) w = k.is_zero() ? a.weight_ : (k.homogeneous_weight() ? std::optional<int>(*a.weight_ + *k.homogeneous_weight()) : std::nullopt);
    return LaurentSeries(a.start_, std::move(c), a.trunc_, w);
  }

  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  // Product, never computing coefficients at or beyond cap.
  static LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b, int cap) {
    int tr = std::min(sat_add(a.trunc_, b.order()), sat_add(b.trunc_, a.order()));
    tr = std::min(tr, cap);
    std::optional<int> w;
    if (a.weight_ && b.weight_) w = *a.weight_ + *b.weight_;
    if (a.c_.empty() || b.c_.empty()) return zero(tr).with_weight(w);
    int lo = a.start_ + b.start_;
    int hi = a.start_ + static_cast<int>(a.c_.size()) + b.start_ + static_cast<int>(b.c_.size()) - 1;
    hi = std::min(hi, tr);
    std::vector<MuPolynomial> c(std::max(0, hi - lo));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      int ka = a.start_ + static_cast<int>(i);
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        int k = ka + b.start_ + static_cast<int>(j);
        if (k >= hi) break;
        if (b.c_[j].is_zero()) continue;
        c[k - lo] += a.c_[i] * b.c_[j];
      }
    }
    return LaurentSeries(lo, std::move(c), tr, w);
  }

  // Multiplicative inverse. The leading coefficient must be a nonzero rational
  // constant. For exact input the result is truncated at cap.
  LaurentSeries inverse(int cap = kExact) const {
    if (c_.empty() || !c_.front().is_constant())
      throw Error(ErrorCode::NonUnitLeadingCoefficient, "leading coefficient not an invertible constant");
    int v = start_;
    int tr = is_exact() ? kExact : trunc_ - 2 * v;
    if (is_exact() && c_.size() == 1) {
      tr = kExact;
    } else {
      tr = std::min(tr, cap);
      if (tr >= kExact) throw Error(ErrorCode::InsufficientOrder, "inverse of exact series needs a cap");
    }
    Rational inv0 = 1 / c_.front().constant_term();
    int n = tr >= kExact ? 1 : std::max(0, tr + v);
    std::vector<MuPolynomial> b(n);
    for (int k = 0; k < n; ++k) {
      if (k == 0) {
        b[0] = MuPolynomial(inv0);
        continue;
      }
      MuPolynomial acc;
      for (int i = 1; i <= k && i < static_cast<int>(c_.size()); ++i) {
        if (c_[i].is_zero() || b[k - i].is_zero()) continue;
        acc += c_[i] * b[k - i];
      }
      b[k] = acc * Rational(-inv0);
    }
    std::optional<int> w;
    if (weight_) w = -*weight_;
    return LaurentSeries(-v, std::move(b), tr, w);
  }

  LaurentSeries pow(int n, int cap = kExact) const {
    if (n < 0) return pow(-n, cap).inverse(cap);
    LaurentSeries r = one();
    LaurentSeries base = *this;
    while (n > 0) {
      if (n & 1) r = mul(r, base, cap);
      n >>= 1;
      if (n) base = mul(base, base, cap);
    }
    return r;
  }

  LaurentSeries derivative() const {
    std::vector<MuPolynomial> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * Rational(start_ + static_cast<long>(i));
    std::optional<int> w;
    if (weight_) w = *weight_ - 1;
    if (c_.empty()) return zero(is_exact() ? kExact : trunc_ - 1).with_weight(w);
    return LaurentSeries(start_ - 1, std::move(c), is_exact() ? kExact : trunc_ - 1, w);
  }

  // Termwise antiderivative with zero constant of integration.
  LaurentSeries antiderivative() const {
    if (known(-1) && !coeff(-1).is_zero())
      throw Error(ErrorCode::NonIntegrableInput, "series has a t^-1 term");
    std::vector<MuPolynomial> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      int k = start_ + static_cast<int>(i);
      if (k == -1) continue;
      c[i] = c_[i] * make_rational(1, k + 1);
    }
    std::optional<int> w;
    if (weight_) w = *weight_ + 1;
    if (c_.empty()) return zero(is_exact() ? kExact : trunc_ + 1).with_weight(w);
    return LaurentSeries(start_ + 1, std::move(c), is_exact() ? kExact : trunc_ + 1, w);
  }

  MuPolynomial residue() const { return coeff(-1); }

  // (1/2) a'/a for a = 1 + O(t).
  LaurentSeries log_derivative_half(int cap = kExact) const {
    if (!known(0) || start_ < 0 || coeff(0) != MuPolynomial(1))
      throw Error(ErrorCode::ConstantTermNotOne, "log derivative needs constant term 1");
    LaurentSeries r = mul(derivative(), inverse(std::min(cap, trunc_)), cap);
    return r * MuPolynomial(Rational(1, 2));
  }

  LaurentSeries map_coeffs(const std::function<MuPolynomial(const MuPolynomial&)>& fn,
                           std::optional<int> weight) const {
    std::vector<MuPolynomial> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(fn(x));
    return LaurentSeries(start_, std::move(c), trunc_, weight);
  }

  void check_weight() const {
    if (!weight_) return;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      int k = start_ + static_cast<int>(i);
      if (!c_[i].has_weight(*weight_ - k))
        throw Error(ErrorCode::Inhomogeneous, "coefficient of t^" + std::to_string(k) + " is not of weight " +
                                                  std::to_string(*weight_ - k) + ": " + c_[i].to_string());
    }
  }

  bool all_integral() const {
    for (const auto& c : c_)
      if (!c.is_integral()) return false;
    return true;
  }

  // Flattened polynomial grammar, e.g. "1*t^-3 + 1*mu1*t^-2 + O(t^4)".
  std::string to_string(const std::string& var = "t") const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      int k = start_ + static_cast<int>(i);
      for (const auto& [m, c] : c_[i].terms()) {
        Rational a = c;
        if (s.empty()) {
          if (a < 0) s += "-";
        } else {
          s += a < 0 ? " - " : " + ";
        }
        if (a < 0) a = -a;
        s += MuPolynomial(a).to_string() + MuPolynomial::from_terms({{m, Rational(1)}}).to_string().substr(1);
        if (k != 0) s += "*" + var + (k == 1 ? "" : "^" + std::to_string(k));
      }
    }
    if (!is_exact()) s += (s.empty() ? "" : " + ") + std::string("O(") + var + "^" + std::to_string(trunc_) + ")";
    if (s.empty()) s = "0";
    return s;
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.trunc_ == b.trunc_ && a.c_ == b.c_ && (a.c_.empty() || a.start_ == b.start_);
  }

 private:
  int start_;
  int trunc_;
  std::vector<MuPolynomial> c_;
  std::optional<int> weight_;

  void normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      start_ += static_cast<int>(lead);
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) start_ = is_exact() ? 0 : trunc_;
  }

  static LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
    int tr = std::min(a.trunc_, b.trunc_);
    std::optional<int> w;
    if (a.weight_ && b.weight_) {
      if (*a.weight_ != *b.weight_ && !a.c_.empty() && !b.c_.empty())
        throw Error(ErrorCode::Inhomogeneous, "adding series of weights " + std::to_string(*a.weight_) + " and " +
                                                  std::to_string(*b.weight_));
      w = a.c_.empty() ? b.weight_ : a.weight_;
    }
    if (a.c_.empty() && b.c_.empty()) return zero(tr).with_weight(w);
    int lo = a.c_.empty() ? b.start_ : (b.c_.empty() ? a.start_ : std::min(a.start_, b.start_));
    int hi = std::max(a.start_ + static_cast<int>(a.c_.size()), b.start_ + static_cast<int>(b.c_.size()));
    hi = std::min(hi, tr);
    lo = std::min(lo, tr);
    std::vector<MuPolynomial> c(std::max(0, hi - lo));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      int k = a.start_ + static_cast<int>(i);
      if (k < hi) c[k - lo] = a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
      int k = b.start_ + static_cast<int>(i);
      if (k >= hi) break;
      if (subtract)
        c[k - lo] -= b.c_[i];
      else
        c[k - lo] += b.c_[i];
    }
    return LaurentSeries(lo, std::move(c), tr, w);
  }
};

}  // namespace eqsigma
