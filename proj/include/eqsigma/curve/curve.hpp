#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "eqsigma/series/implicit_solve.hpp"
#include "eqsigma/series/laurent_series.hpp"

namespace eqsigma {

struct LocalParameter {
  int a = 0, b = 0, c = 0, d = 0;
  int sign() const { return a > 0 ? 1 : -1; }
};

// f(x, y) = y^e + p_1(x) y^{e-1} + ... + p_{e-1}(x) y - p_e(x).
struct CurveModel {
  int e = 0, q = 0, genus = 0;
  std::vector<int> gaps;  // ascending, w_1 = 1 ... w_g = 2g - 1
  std::vector<int> mu;    // ascending indices j of the mu_j present in f
  LocalParameter abcd;
  BivariatePoly f;        // key (m, n) for x^m y^n
  // False once some mu has been specialized to numbers; weight tags are then
  // not attached to derived series.
  bool graded = true;

  std::optional<int> tag(int w) const { return graded ? std::optional<int>(w) : std::nullopt; }
};

inline int sigma_weight(int e, int q) { return (e * e - 1) * (q * q - 1) / 24; }

inline std::vector<int> weierstrass_gaps(int e, int q) {
  int g = (e - 1) * (q - 1) / 2;
  std::vector<bool> in_semigroup(2 * g + 1, false);
  for (int m = 0; m * e <= 2 * g; ++m)
    for (int n = 0; m * e + n * q <= 2 * g; ++n) in_semigroup[m * e + n * q] = true;
  std::vector<int> gaps;
  for (int v = 1; v <= 2 * g; ++v)
    if (!in_semigroup[v]) gaps.push_back(v);
  return gaps;
}

// a e - b q = 1 with |a| minimal, scanning |a| = 1, 2, ... and trying the
// negative sign first.
inline LocalParameter local_parameter_exponents(int e, int q) {
  if (std::gcd(e, q) != 1) throw Error(ErrorCode::NotCoprime, "gcd(e, q) != 1");
  for (int m = 1; m <= q; ++m) {
    for (int a : {-m, m}) {
      long num = static_cast<long>(a) * e - 1;
      if (num % q != 0) continue;
      LocalParameter p;
      p.a = a;
      p.b = static_cast<int>(num / q);
      int sg = a > 0 ? 1 : -1;
      p.c = -2 * p.a + sg * q;
      p.d = -2 * p.b + sg * e;
      return p;
    }
  }
  throw Error(ErrorCode::NotCoprime, "no local parameter");
}

inline CurveModel build_curve(int e, int q) {
  if (e < 2 || e >= q) throw Error(ErrorCode::BadOrder, "need 1 < e < q");
  if (std::gcd(e, q) != 1) throw Error(ErrorCode::NotCoprime, "gcd(e, q) != 1");
  if (e * q > Monomial::kMaxMu) throw Error(ErrorCode::TooLarge, "e*q exceeds the supported mu range");
  CurveModel c;
  c.e = e;
  c.q = q;
  c.genus = (e - 1) * (q - 1) / 2;
  c.gaps = weierstrass_gaps(e, q);
  c.abcd = local_parameter_exponents(e, q);
  c.f.add(0, e, MuPolynomial(1));
  for (int j = 1; j < e; ++j)
    for (int k = 0; j * q - e * k > 0; ++k) {
      int idx = j * q - e * k;
      c.f.add(k, e - j, MuPolynomial::mu(idx));
      c.mu.push_back(idx);
    }
  c.f.add(q, 0, MuPolynomial(-1));
  for (int k = 0; k < q; ++k) {
    int idx = e * (q - k);
    c.f.add(k, 0, -MuPolynomial::mu(idx));
    c.mu.push_back(idx);
  }
  std::sort(c.mu.begin(), c.mu.end());
  return c;
}

// Numeric (or partial) specialization of the mu. The result is ungraded.
inline CurveModel specialize(const CurveModel& curve, const std::map<int, MuPolynomial>& values) {
  CurveModel c = curve;
  c.f = curve.f.map_coeffs([&](const MuPolynomial& p) { return p.substitute_partial(values); });
  c.graded = values.empty() && curve.graded;
  return c;
}

// f~(t, s): f at x = t^-|d| s^-|b|, y = t^-|c| s^-|a|, times t^{|c|e} s^{|a|e}
// and then by s (a < 0) or -t^2 (a > 0), so that f~ = -t^2 + s + ...
inline BivariatePoly tilde_f(const CurveModel& curve) {
  const auto& p = curve.abcd;
  int A = std::abs(p.a), B = std::abs(p.b), C = std::abs(p.c), D = std::abs(p.d);
  BivariatePoly out;
  for (const auto& [k, coef] : curve.f.terms()) {
    auto [m, n] = k;
    int ti = C * curve.e - D * m - C * n;
    int sj = A * curve.e - B * m - A * n;
    MuPolynomial cf = coef;
    if (p.a < 0) {
      sj += 1;
    } else {
      ti += 2;
      cf = -cf;
    }
    if (ti < 0 || sj < 0) throw Error(ErrorCode::BadNormalForm, "f~ has a negative exponent");
    out.add(ti, sj, cf);
  }
  return out;
}

struct CurveExpansion {
  LaurentSeries s, x, y;
};

// s(t) modulo t^order, and x(t), y(t) with the same relative precision.
inline CurveExpansion expand_curve(const CurveModel& curve, int order) {
  if (order < 3) throw Error(ErrorCode::InsufficientOrder, "expand_curve needs order >= 3");
  const auto& p = curve.abcd;
  CurveExpansion ex;
  ex.s = implicit_solve(tilde_f(curve), order, curve.tag(2));
  auto t_pow = [&](int k) { return LaurentSeries::monomial(k, MuPolynomial(1), curve.tag(k)); };
  ex.x = t_pow(-std::abs(p.d)) * ex.s.pow(-std::abs(p.b));
  ex.y = t_pow(-std::abs(p.c)) * ex.s.pow(-std::abs(p.a));
  if (curve.graded) {
    ex.x = ex.x.with_weight(-curve.e);
    ex.y = ex.y.with_weight(-curve.q);
  }
  return ex;
}

struct BasisMonomial {
  int m = 0, n = 0, pole = 0;
};

// x^m y^n with n < e, ordered by pole order m e + n q <= max_pole.
inline std::vector<BasisMonomial> monomial_basis(const CurveModel& curve, int max_pole) {
  std::vector<BasisMonomial> out;
  for (int n = 0; n < curve.e; ++n)
    for (int m = 0; m * curve.e + n * curve.q <= max_pole; ++m) out.push_back({m, n, m * curve.e + n * curve.q});
  std::sort(out.begin(), out.end(), [](const BasisMonomial& a, const BasisMonomial& b) { return a.pole < b.pole; });
  return out;
}

// Power cache for x(t)^m y(t)^n.
class MonomialSeries {
 public:
  explicit MonomialSeries(const CurveExpansion& ex) : ex_(ex) {}

  LaurentSeries get(int m, int n) {
    auto key = std::make_pair(m, n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    LaurentSeries r;
    if (m == 0 && n == 0)
      r = LaurentSeries::one();
    else if (n > 0)
      r = get(m, n - 1) * ex_.y;
    else
      r = get(m - 1, 0) * ex_.x;
    cache_.emplace(key, r);
    return r;
  }

 private:
  CurveExpansion ex_;
  std::map<std::pair<int, int>, LaurentSeries> cache_;
};

}  // namespace eqsigma
