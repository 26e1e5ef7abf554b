#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqsigma/algebra/matrix.hpp"
#include "eqsigma/forms.hpp"
#include "eqsigma/series/biseries.hpp"

namespace eqsigma {

struct KleinData {
  FormsContext ctx;
  std::vector<BasisMonomial> basis;  // extended through pole 4g - 2
  int region = 0;                    // coefficients t1^a t2^b, 0 <= a, b <= region, are verified
  int precision = 0;                 // relative precision of every t-series
  BiSeries bracket_dt2;              // d/dt2 [t1,t2] - 1/(t1 - t2)^2
  PolyMatrix M;
  std::vector<std::pair<int, int>> M_rows;  // (w_k, ell): coefficient of t1^{w_k - 1} t2^ell
  std::vector<std::pair<int, int>> M_cols;  // (w_i, j): omega_{w_i}(t1) against phi_j dx/f_y (t2)
  MuPolynomial M_det;
  PolyVector q_vector;  // bracket_dt2 at the M rows
  PolyVector solution;
  // eta_{-w_i} = sum_k eta_numerator[i][k] * basis[k] * dx/f_y
  std::vector<std::map<int, MuPolynomial>> eta_numerator;
  std::vector<DifferentialSeries> eta;
  PolyMatrix omega_matrix;  // [t^{w_b - 1}] omega_{w_a}, unit upper triangular
  PolyMatrix correction;    // antisymmetric a_ij, gap-index order
  BiSeries xi_regular;      // xi - dt1 dt2 / (t1 - t2)^2, symmetric after symmetrize()
  PolyMatrix q_matrix;      // q_ij = [t1^{w_i-1} t2^{w_j-1}] xi_regular
  bool symmetrized = false;
};

// Sign linking q_matrix to q(U): q(U) = sum c_w U_w + kQuadraticSign/2 sum q_ij U_i U_j.
inline constexpr int kQuadraticSign = -1;
inline constexpr const char* kQSignConvention =
    "q(U) = sum_w c_w U_w - 1/2 sum_ij q_ij U_i U_j with q_ij = [t1^(w_i-1) t2^(w_j-1)](xi - dt1dt2/(t1-t2)^2)";

namespace detail {

inline LaurentSeries t_power(const CurveModel& c, int k) {
  return LaurentSeries::monomial(k, MuPolynomial(1), c.tag(k));
}

}  // namespace detail

// d/dt2 [t1, t2] - 1/(t1 - t2)^2 in the t1-inner regime, rows t1^-1 .. region.
inline BiSeries bracket_derivative(const FormsContext& ctx, int region) {
  const CurveModel& c = ctx.curve;
  const auto& ex = ctx.expansion;
  int g = c.genus;
  LaurentSeries one = detail::t_power(c, 0);
  MonomialSeries ms(ex);
  std::vector<LaurentSeries> ypow{one};
  for (int a = 1; a < c.e; ++a) ypow.push_back(ypow.back() * ex.y);

  // (f(x2, y1) - f(x2, y2)) / (y1 - y2)
  BiSeries N;
  bool first = true;
  for (const auto& [key, coef] : c.f.terms()) {
    auto [m, n] = key;
    for (int a = 0; a + 1 <= n; ++a) {
      int b = n - 1 - a;
      BiSeries term = BiSeries::outer(ypow[a], ms.get(m, b) * coef);
      N = first ? term : N + term;
      first = false;
    }
  }
  BiSeries D = BiSeries::outer(ex.x, one) - BiSeries::outer(one, ex.x);
  int row_cap = region + 2 - (2 * g - 2);
  BiSeries Q = BiSeries::divide_inner(N, D, row_cap);
  const LaurentSeries& wg = ctx.omega.back().series;
  BiSeries B = -(BiSeries::outer(wg, one) * Q);

  // 1/(t1 - t2) = -sum_k t1^k t2^{-k-1}
  std::vector<LaurentSeries> srows;
  int rows = std::min(B.row_end(), region + 2);
  for (int k = 0; k < rows; ++k) srows.push_back(LaurentSeries::monomial(-k - 1, MuPolynomial(-1), c.tag(-1 - k)));
  BiSeries sing(0, std::move(srows), rows, c.tag(-1));
  BiSeries R = (B - sing).truncated_rows(rows);
  BiSeries dR = R.derive_t2();
  if (dR.row_known(-1) && !dR.row(-1).is_zero())
    throw Error(ErrorCode::InsufficientOrder, "bracket has a t1^-1 row depending on t2");
  return dR;
}

// Rows (w_k, ell) for ell = -w_k - 1 .. -2 and columns (w_i, j) for
// j = g + w_i - 1 .. g, both with w running downwards through the gaps.
inline void build_M(KleinData& kd) {
  const CurveModel& c = kd.ctx.curve;
  int g = c.genus;
  kd.M_rows.clear();
  kd.M_cols.clear();
  for (int idx = g - 1; idx >= 0; --idx) {
    int w = c.gaps[idx];
    for (int ell = -w - 1; ell <= -2; ++ell) kd.M_rows.push_back({w, ell});
    for (int j = g + w - 1; j >= g; --j) kd.M_cols.push_back({w, j});
  }
  std::map<int, LaurentSeries> phi_dx;
  for (const auto& col : kd.M_cols) {
    int j = col.second;
    if (!phi_dx.count(j)) {
      const auto& bm = kd.basis.at(j);
      phi_dx[j] = second_kind_form(c, kd.ctx.expansion, kd.ctx.dxfy, bm.m, bm.n);
    }
  }
  auto gap_index = [&](int w) { return static_cast<int>(std::find(c.gaps.begin(), c.gaps.end(), w) - c.gaps.begin()); };
  std::size_t n = kd.M_rows.size();
  kd.M = zero_matrix(n, n);
  kd.q_vector.assign(n, MuPolynomial());
  for (std::size_t r = 0; r < n; ++r) {
    auto [wk, ell] = kd.M_rows[r];
    kd.q_vector[r] = kd.bracket_dt2.coeff(wk - 1, ell);
    for (std::size_t col = 0; col < n; ++col) {
      auto [wi, j] = kd.M_cols[col];
      const LaurentSeries& om = kd.ctx.omega[gap_index(wi)].series;
      kd.M[r][col] = -(om.coeff(wk - 1) * phi_dx[j].coeff(ell));
    }
  }
}

// Solves M a = -q and assembles eta_{-w_i} = -sum_j a_ij phi_j dx/f_y.
inline void solve_eta(KleinData& kd) {
  const CurveModel& c = kd.ctx.curve;
  int g = c.genus;
  PolyVector rhs;
  for (const auto& v : kd.q_vector) rhs.push_back(-v);
  kd.solution = solve_unimodular(kd.M, rhs, &kd.M_det);
  kd.eta_numerator.assign(g, {});
  for (std::size_t col = 0; col < kd.M_cols.size(); ++col) {
    auto [wi, j] = kd.M_cols[col];
    int i = static_cast<int>(std::find(c.gaps.begin(), c.gaps.end(), wi) - c.gaps.begin());
    kd.eta_numerator[i][j] -= kd.solution[col];
  }
}

inline void assemble_eta_and_xi(KleinData& kd) {
  const CurveModel& c = kd.ctx.curve;
  int g = c.genus;
  MonomialSeries ms(kd.ctx.expansion);
  kd.eta.assign(g, {});
  for (int i = 0; i < g; ++i) {
    LaurentSeries s = LaurentSeries::zero().with_weight(c.tag(-c.gaps[i] - 1));
    for (const auto& [j, coef] : kd.eta_numerator[i]) {
      if (coef.is_zero()) continue;
      const auto& bm = kd.basis.at(j);
      s += ms.get(bm.m, bm.n) * kd.ctx.dxfy * coef;
    }
    kd.eta[i] = {s, FormKind::Second, -c.gaps[i]};
  }
  BiSeries xi = kd.bracket_dt2;
  for (int i = 0; i < g; ++i) xi = xi + BiSeries::outer(kd.ctx.omega[i].series, kd.eta[i].series);
  kd.xi_regular = xi.truncated_rows(kd.region + 1);
  for (int a = 0; a <= kd.region; ++a) {
    LaurentSeries row = kd.xi_regular.row(a);
    for (int b = row.start(); b < 0; ++b)
      if (!row.coeff(b).is_zero())
        throw Error(ErrorCode::AsymmetryNotHolomorphic,
                    "xi keeps a pole at t1^" + std::to_string(a) + " t2^" + std::to_string(b));
  }
}

inline void symmetrize(KleinData& kd) {
  const CurveModel& c = kd.ctx.curve;
  int g = c.genus;
  int K = kd.region;
  kd.omega_matrix = zero_matrix(g, g);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) kd.omega_matrix[a][b] = kd.ctx.omega[a].series.coeff(c.gaps[b] - 1);
  PolyMatrix Dm = zero_matrix(g, g);
  for (int b = 0; b < g; ++b)
    for (int cc = 0; cc < g; ++cc) {
      int p = c.gaps[b] - 1, r = c.gaps[cc] - 1;
      Dm[b][cc] = kd.xi_regular.coeff(p, r) - kd.xi_regular.coeff(r, p);
    }
  PolyMatrix Oinv = unit_upper_inverse(kd.omega_matrix);
  kd.correction = matmul(matmul(transpose(Oinv), Dm), Oinv);
  for (int i = 0; i < g; ++i)
    if (!kd.correction[i][i].is_zero()) throw Error(ErrorCode::AsymmetryNotHolomorphic, "a_ii != 0");

  // The antisymmetric part must be exactly sum a_ij omega_i(t1) omega_j(t2).
  for (int p = 0; p <= K; ++p)
    for (int r = 0; r <= K; ++r) {
      MuPolynomial lhs = kd.xi_regular.coeff(p, r) - kd.xi_regular.coeff(r, p);
      MuPolynomial rhs;
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
          if (kd.correction[i][j].is_zero()) continue;
          rhs += kd.correction[i][j] * kd.ctx.omega[i].series.coeff(p) * kd.ctx.omega[j].series.coeff(r);
        }
      if (lhs != rhs)
        throw Error(ErrorCode::AsymmetryNotHolomorphic,
                    "antisymmetric part is not holomorphic at t1^" + std::to_string(p) + " t2^" + std::to_string(r));
    }

  // eta_{w_i} -= sum_{w_j < w_i} a_ij omega_{w_j}, with omega_{w_j} = -phi_{g-1-j} dx/f_y.
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < i; ++j) {
      if (kd.correction[i][j].is_zero()) continue;
      kd.eta_numerator[i][g - 1 - j] += kd.correction[i][j];
    }
  assemble_eta_and_xi(kd);
  for (int p = 0; p <= K; ++p)
    for (int r = 0; r < p; ++r)
      if (kd.xi_regular.coeff(p, r) != kd.xi_regular.coeff(r, p))
        throw Error(ErrorCode::AsymmetryNotHolomorphic, "xi not symmetric after correction");
  kd.symmetrized = true;
}

inline PolyMatrix q_coefficients(const KleinData& kd) {
  const CurveModel& c = kd.ctx.curve;
  int g = c.genus;
  PolyMatrix q = zero_matrix(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) q[i][j] = kd.xi_regular.coeff(c.gaps[i] - 1, c.gaps[j] - 1);
  return q;
}

// Full pipeline. region defaults to 2g - 1 (enough for every q_ij); the
// relative precision follows from homogeneity: the coefficient of
// t1^a t2^b in xi has mu-degree a + b + 2.
inline KleinData build_klein(const CurveModel& curve, int region = -1, bool do_symmetrize = true) {
  int g = curve.genus;
  if (region < 0) region = 2 * g - 1;
  int precision = 2 * region + 3;
  for (int attempt = 0;; ++attempt) {
    try {
      KleinData kd;
      kd.region = region;
      kd.precision = precision;
      kd.ctx = first_kind_forms(curve, precision + 2);
      kd.basis = monomial_basis(curve, 4 * g - 2);
      kd.bracket_dt2 = bracket_derivative(kd.ctx, region);
      build_M(kd);
      solve_eta(kd);
      assemble_eta_and_xi(kd);
      if (do_symmetrize) symmetrize(kd);
      kd.q_matrix = q_coefficients(kd);
      return kd;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::InsufficientOrder || attempt >= 4) throw;
      precision += region + 2;
    }
  }
}

}  // namespace eqsigma
