#pragma once

#include <string>
#include <vector>

#include "eqsigma/curve/curve.hpp"

namespace eqsigma {

enum class FormKind { First, Second };

// A differential h(t) dt; only h is stored. Weight tags refer to h, so
// omega_w carries w - 1 and eta_{-w} carries -w - 1.
struct DifferentialSeries {
  LaurentSeries series;
  FormKind kind = FormKind::First;
  int label = 0;  // w for omega_w, -w for eta_{-w}
};

// dx / f_y = -(s or t^2) t^A s^B / f~_s(t, s(t)) dt,
// A = |c|e - |c| - |d| - 1, B = |a|e - |a| - |b| - 1.
inline LaurentSeries dx_over_fy(const CurveModel& curve, const CurveExpansion& ex) {
  const auto& p = curve.abcd;
  int a = std::abs(p.a), b = std::abs(p.b), c = std::abs(p.c), d = std::abs(p.d);
  int A = c * curve.e - c - d - 1;
  int B = a * curve.e - a - b - 1;
  if (p.a < 0)
    B += 1;
  else
    A += 2;
  BivariatePoly fs = tilde_f(curve).derivative_second();
  LaurentSeries t = LaurentSeries::monomial(1, MuPolynomial(1), curve.tag(1));
  LaurentSeries den = fs.evaluate(t, ex.s, ex.s.trunc());
  LaurentSeries num = LaurentSeries::monomial(A, MuPolynomial(-1), curve.tag(A)) * ex.s.pow(B);
  LaurentSeries r = num * den.inverse(den.trunc());
  if (curve.graded) r = r.with_weight(2 * curve.genus - 2);
  return r;
}

struct FormsContext {
  CurveModel curve;
  CurveExpansion expansion;
  LaurentSeries dxfy;
  std::vector<BasisMonomial> basis;
  std::vector<DifferentialSeries> omega;  // omega[i] is omega_{w_{i+1}}
};

// omega_{w_{g-1-j}} = -phi_j dx/f_y for the first g basis monomials.
inline FormsContext first_kind_forms(const CurveModel& curve, int order) {
  FormsContext ctx{curve, expand_curve(curve, order), {}, {}, {}};
  ctx.dxfy = dx_over_fy(curve, ctx.expansion);
  ctx.basis = monomial_basis(curve, 2 * curve.genus - 2);
  int g = curve.genus;
  ctx.omega.resize(g);
  MonomialSeries ms(ctx.expansion);
  for (int j = 0; j < g; ++j) {
    const auto& bm = ctx.basis.at(j);
    int w = curve.gaps[g - 1 - j];
    LaurentSeries s = -(ms.get(bm.m, bm.n) * ctx.dxfy);
    if (s.start() != w - 1 || s.leading() != MuPolynomial(1))
      throw Error(ErrorCode::BadNormalForm, "omega_" + std::to_string(w) + " does not lead with t^" + std::to_string(w - 1));
    if (curve.graded) s = s.with_weight(w - 1);
    ctx.omega[g - 1 - j] = {s, FormKind::First, w};
  }
  return ctx;
}

// x^m y^n dx / f_y.
inline LaurentSeries second_kind_form(const CurveModel& curve, const CurveExpansion& ex, const LaurentSeries& dxfy,
                                      int m, int n) {
  MonomialSeries ms(ex);
  LaurentSeries r = ms.get(m, n) * dxfy;
  if (curve.graded) r = r.with_weight(2 * curve.genus - 2 - m * curve.e - n * curve.q);
  return r;
}

// Res_{t=0} (integral of omega) * eta.
inline MuPolynomial residue_pairing(const LaurentSeries& omega, const LaurentSeries& eta) {
  return (omega.antiderivative() * eta).residue();
}

}  // namespace eqsigma
