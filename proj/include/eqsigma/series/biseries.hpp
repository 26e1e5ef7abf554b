#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "eqsigma/series/laurent_series.hpp"

namespace eqsigma {

// Series in (t1, t2) in the regime |t1| < |t2|: row k is the coefficient of
// t1^k, itself a Laurent series in t2 with its own truncation. Rows in
// [row_lo, row_lo + rows.size()) are stored, rows up to row_end are exact
// zero, rows from row_end on are unknown. Weight tag w: the coefficient of
// t1^a t2^b has weight w - a - b.
class BiSeries {
 public:
  BiSeries() : row_lo_(0), row_end_(kExact) {}

  BiSeries(int row_lo, std::vector<LaurentSeries> rows, int row_end, std::optional<int> weight = std::nullopt)
      : row_lo_(row_lo), row_end_(row_end), rows_(std::move(rows)), weight_(weight) {
    if (row_lo_ + static_cast<int>(rows_.size()) > row_end_) rows_.resize(std::max(0, row_end_ - row_lo_));
    normalize();
    if (weight_)
      for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] = rows_[i].with_weight(*weight_ - row_lo_ - static_cast<int>(i));
  }

  // a(t1) * b(t2).
  static BiSeries outer(const LaurentSeries& a, const LaurentSeries& b) {
    std::vector<LaurentSeries> rows;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) rows.push_back(b * a.coeffs()[i]);
    std::optional<int> w;
    if (a.weight() && b.weight()) w = *a.weight() + *b.weight();
    int lo = a.is_zero() ? a.order() : a.start();
    if (a.is_zero() && a.is_exact()) lo = 0;
    return BiSeries(lo, std::move(rows), a.trunc(), w);
  }

  int row_lo() const { return row_lo_; }
  int row_end() const { return row_end_; }
  std::optional<int> weight() const { return weight_; }
  const std::vector<LaurentSeries>& rows() const { return rows_; }

  bool row_known(int k) const { return k < row_end_; }

  LaurentSeries row(int k) const {
    if (k >= row_end_)
      throw Error(ErrorCode::InsufficientOrder, "row t1^" + std::to_string(k) + " beyond " + std::to_string(row_end_));
    if (k < row_lo_ || k >= row_lo_ + static_cast<int>(rows_.size())) {
      LaurentSeries z;
      if (weight_) z = z.with_weight(*weight_ - k);
      return z;
    }
    return rows_[k - row_lo_];
  }

  MuPolynomial coeff(int a, int b) const { return row(a).coeff(b); }

  // First row that is not exactly zero (a truncated zero row still counts).
  int order() const { return rows_.empty() ? row_end_ : row_lo_; }

  BiSeries truncated_rows(int n) const {
    if (n >= row_end_) return *this;
    BiSeries r = *this;
    r.row_end_ = n;
    if (r.row_lo_ + static_cast<int>(r.rows_.size()) > n) r.rows_.resize(std::max(0, n - r.row_lo_));
    r.normalize();
    return r;
  }

  BiSeries map_rows(const std::function<LaurentSeries(const LaurentSeries&)>& fn, std::optional<int> weight) const {
    std::vector<LaurentSeries> rows;
    rows.reserve(rows_.size());
    for (const auto& r : rows_) rows.push_back(fn(r));
    return BiSeries(row_lo_, std::move(rows), row_end_, weight);
  }

  BiSeries derive_t2() const {
    std::optional<int> w;
    if (weight_) w = *weight_ - 1;
    return map_rows([](const LaurentSeries& r) { return r.derivative(); }, w);
  }

  BiSeries operator-() const {
    return map_rows([](const LaurentSeries& r) { return -r; }, weight_);
  }

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) { return add(a, b, false); }
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b) { return add(a, b, true); }

  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    int end = std::min(sat_add(a.row_end_, b.order()), sat_add(b.row_end_, a.order()));
    std::optional<int> w;
    if (a.weight_ && b.weight_) w = *a.weight_ + *b.weight_;
    if (a.rows_.empty() || b.rows_.empty()) return BiSeries(0, {}, end, w);
    int lo = a.row_lo_ + b.row_lo_;
    int hi = std::min(end, a.row_lo_ + static_cast<int>(a.rows_.size()) + b.row_lo_ + static_cast<int>(b.rows_.size()) - 1);
    std::vector<LaurentSeries> rows(std::max(0, hi - lo));
    std::vector<bool> touched(rows.size(), false);
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      for (std::size_t j = 0; j < b.rows_.size(); ++j) {
        int k = a.row_lo_ + b.row_lo_ + static_cast<int>(i + j);
        if (k >= hi) break;
        LaurentSeries p = a.rows_[i] * b.rows_[j];
        if (touched[k - lo]) {
          rows[k - lo] += p;
        } else {
          rows[k - lo] = p;
          touched[k - lo] = true;
        }
      }
    }
    return BiSeries(lo, std::move(rows), end, w);
  }

  // Exact quotient num / den in the t1-inner regime. The first row of den
  // that is not exactly zero must be invertible as a Laurent series in t2.
  // row_cap bounds the number of quotient rows; t2_cap bounds each row.
  static BiSeries divide_inner(const BiSeries& num, const BiSeries& den, int row_cap = kExact, int t2_cap = kExact) {
    if (den.rows_.empty()) throw Error(ErrorCode::NonInvertibleLeading, "denominator is zero");
    int dlo = den.row_lo_;
    const LaurentSeries& d0 = den.rows_.front();
    LaurentSeries inv;
    try {
      inv = d0.inverse(t2_cap);
    } catch (const Error& err) {
      throw Error(ErrorCode::NonInvertibleLeading, std::string("leading row not invertible: ") + err.what());
    }
    int qlo = num.order() - dlo;
    if (num.rows_.empty() && num.row_end_ >= kExact) return BiSeries();
    int end = std::min(sat_add(num.row_end_, -dlo), sat_add(sat_add(den.row_end_, -dlo), qlo));
    end = std::min(end, row_cap);
    if (end >= kExact) throw Error(ErrorCode::InsufficientOrder, "divide_inner needs a row cap");
    std::optional<int> w;
    if (num.weight_ && den.weight_) w = *num.weight_ - *den.weight_;
    std::vector<LaurentSeries> q;
    for (int m = qlo; m < end; ++m) {
      LaurentSeries acc = num.row(m + dlo);
      for (int i = dlo + 1; m + dlo - i >= qlo; ++i) {
        LaurentSeries di = den.row(i);
        if (di.is_zero() && di.is_exact()) continue;
        acc -= di * q[m + dlo - i - qlo];
      }
      q.push_back(LaurentSeries::mul(acc, inv, t2_cap));
    }
    return BiSeries(qlo, std::move(q), end, w);
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].is_zero() && rows_[i].is_exact()) continue;
      int k = row_lo_ + static_cast<int>(i);
      if (!s.empty()) s += " + ";
      s += "(" + rows_[i].to_string("t2") + ")";
      if (k != 0) s += "*t1" + (k == 1 ? std::string() : "^" + std::to_string(k));
    }
    if (row_end_ < kExact) s += (s.empty() ? "" : " + ") + std::string("O(t1^") + std::to_string(row_end_) + ")";
    if (s.empty()) s = "0";
    return s;
  }

 private:
  int row_lo_;
  int row_end_;
  std::vector<LaurentSeries> rows_;
  std::optional<int> weight_;

  static bool exact_zero(const LaurentSeries& r) { return r.is_zero() && r.is_exact(); }

  void normalize() {
    std::size_t lead = 0;
    while (lead < rows_.size() && exact_zero(rows_[lead])) ++lead;
    if (lead) {
      rows_.erase(rows_.begin(), rows_.begin() + static_cast<long>(lead));
      row_lo_ += static_cast<int>(lead);
    }
    while (!rows_.empty() && exact_zero(rows_.back())) rows_.pop_back();
    if (rows_.empty()) row_lo_ = row_end_ >= kExact ? 0 : row_end_;
  }

  static BiSeries add(const BiSeries& a, const BiSeries& b, bool subtract) {
    int end = std::min(a.row_end_, b.row_end_);
    std::optional<int> w;
    if (a.weight_ && b.weight_) {
      if (*a.weight_ != *b.weight_ && !a.rows_.empty() && !b.rows_.empty())
        throw Error(ErrorCode::Inhomogeneous, "adding bivariate series of different weights");
      w = a.rows_.empty() ? b.weight_ : a.weight_;
    }
    if (a.rows_.empty() && b.rows_.empty()) return BiSeries(0, {}, end, w);
    int lo = a.rows_.empty() ? b.row_lo_ : (b.rows_.empty() ? a.row_lo_ : std::min(a.row_lo_, b.row_lo_));
    int hi = std::max(a.row_lo_ + static_cast<int>(a.rows_.size()), b.row_lo_ + static_cast<int>(b.rows_.size()));
    hi = std::min(hi, end);
    std::vector<LaurentSeries> rows;
    for (int k = lo; k < hi; ++k) {
      LaurentSeries ra = a.row(k), rb = b.row(k);
      rows.push_back(subtract ? ra - rb : ra + rb);
    }
    return BiSeries(lo, std::move(rows), end, w);
  }
};

}  // namespace eqsigma
