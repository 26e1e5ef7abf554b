#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqsigma/klein.hpp"
#include "eqsigma/sigma/gap_polynomial.hpp"
#include "eqsigma/sigma/schur.hpp"

namespace eqsigma {

// c_1 .. c_count from 1/2 log(omega_{w_g} / t^{2g-2}) = sum_j c_j / j t^j.
inline std::vector<MuPolynomial> c_coefficients(const LaurentSeries& omega_top, int genus, int count) {
  LaurentSeries h = omega_top.shifted(-(2 * genus - 2));
  LaurentSeries d = h.log_derivative_half(count);
  std::vector<MuPolynomial> c(count + 1);
  for (int j = 1; j <= count; ++j) c[j] = d.coeff(j - 1);
  return c;
}

inline std::vector<MuPolynomial> c_coefficients(const CurveModel& curve, int count) {
  FormsContext ctx = first_kind_forms(curve, count + 4);
  return c_coefficients(ctx.omega.back().series, curve.genus, count);
}

struct BMatrices {
  PolyMatrix B;      // B[i][j] = [t^j] omega_{w_{g-i}}, rows from w_g down to w_1
  PolyMatrix B0;     // [t^{w_b - 1}] omega_{w_a}, gap order; unit upper triangular
  PolyMatrix B0inv;  // U = B0inv u
};

inline BMatrices b_matrices(const FormsContext& ctx, int order) {
  const CurveModel& c = ctx.curve;
  int g = c.genus;
  BMatrices b;
  b.B = zero_matrix(g, order);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < order; ++j) b.B[i][j] = ctx.omega[g - 1 - i].series.coeff(j);
  b.B0 = zero_matrix(g, g);
  for (int a = 0; a < g; ++a)
    for (int k = 0; k < g; ++k) b.B0[a][k] = ctx.omega[a].series.coeff(c.gaps[k] - 1);
  b.B0inv = unit_upper_inverse(b.B0);
  return b;
}

// Gamma: the monomials phi_i = x^m y^n (n < e) in increasing pole order v_i,
// expanded in t with relative precision `rel` (coefficients of t^{-v_i} ..
// t^{-v_i + rel - 1}). The columns are also kept in reduced form: phi^_i has
// coefficient 1 at t^{-v_i} and 0 at every t^{-v_j}, j != i.
struct GammaMatrix {
  std::vector<BasisMonomial> basis;
  std::vector<LaurentSeries> columns;
  std::vector<LaurentSeries> reduced;
  int rel = 0;

  MuPolynomial entry(int row, int col) const { return columns.at(col).coeff(row); }
};

inline GammaMatrix gamma_matrix(const CurveModel& curve, int max_pole, int rel) {
  for (int order = rel + 4;; order += rel + 2) {
    try {
      GammaMatrix gm;
      gm.rel = rel;
      gm.basis = monomial_basis(curve, max_pole);
      CurveExpansion ex = expand_curve(curve, order);
      MonomialSeries ms(ex);
      for (const auto& bm : gm.basis) {
        LaurentSeries s = ms.get(bm.m, bm.n).truncated(-bm.pole + rel);
        if (s.trunc() < -bm.pole + rel) throw Error(ErrorCode::InsufficientOrder, "Gamma column");
        gm.columns.push_back(s);
      }
      for (std::size_t i = 0; i < gm.basis.size(); ++i) {
        LaurentSeries r = gm.columns[i];
        for (std::size_t j = i; j-- > 0;) {
          // Pivots past the precision window only feed terms above the degree bound.
          if (!r.known(-gm.basis[j].pole)) continue;
          MuPolynomial cj = r.coeff(-gm.basis[j].pole);
          if (!cj.is_zero()) r = (r - gm.reduced[j] * cj).truncated(-gm.basis[i].pole + rel);
        }
        gm.reduced.push_back(r);
      }
      return gm;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::InsufficientOrder || order > 8 * (rel + 8)) throw;
    }
  }
}

// Truncations of det(S(U) Gamma) through its Plucker expansion. The N x N
// leading minor has entries [t^{-(R+g)}](P(t) phi_i(t)), P = exp(sum U_w t^-w),
// so by Cauchy-Binet it is sum_kappa s_kappa(U) det Phi^_{J(kappa)}, where
// J = {b + g - kappa_b}. Rows of J at pivot positions are unit rows; the
// remaining minor sits on the holes (gaps and negative positions).
class TauExpansion {
 public:
  TauExpansion(const CurveModel& curve, int max_u_weight)
      : curve_(curve),
        g_(curve.genus),
        W_(max_u_weight),
        M_(std::max(0, max_u_weight - sigma_weight(curve.e, curve.q))),
        schur_(curve.gaps, max_u_weight) {
    gamma_ = gamma_matrix(curve, M_ + 2 * g_ - 1 + 1, M_ + 1);
    for (int v : curve.gaps) gap_set_.push_back(v);
  }

  int degree_bound() const { return M_; }
  const GammaMatrix& gamma() const { return gamma_; }

  // Pole order of the i-th basis monomial; beyond the stored basis every
  // integer >= 2g is a pole order.
  int pole(int i) const {
    if (i < static_cast<int>(gamma_.basis.size())) return gamma_.basis[i].pole;
    return i + g_;
  }

  bool is_hole(int n) const {
    return n < 0 || std::find(gap_set_.begin(), gap_set_.end(), n) != gap_set_.end();
  }

  // Plucker coordinate of kappa for the N-column truncation.
  MuPolynomial plucker(const Partition& kappa, int N) {
    std::vector<int> rows, cols;
    std::vector<int> J(N);
    int parity = 0;
    for (int b = 0; b < N; ++b) {
      int kb = b < static_cast<int>(kappa.size()) ? kappa[b] : 0;
      J[b] = b + g_ - kb;
      if (is_hole(J[b])) {
        rows.push_back(J[b]);
        parity += b;
      }
    }
    for (int i = 0; i < N; ++i)
      if (std::find(J.begin(), J.end(), pole(i)) == J.end()) {
        cols.push_back(i);
        parity += i;
      }
    if (rows.size() != cols.size()) throw Error(ErrorCode::Unstable, "Plucker index sets do not match");
    MuPolynomial d = minor(rows, cols);
    return parity % 2 ? -d : d;
  }

  // det of the N x N truncation, all terms of U-weight <= max_u_weight.
  GapPolynomial truncated(int N) {
    if (N < g_) throw Error(ErrorCode::InvalidConfig, "truncation below the genus");
    GapPolynomial tau(curve_.gaps, W_);
    for (const auto& kappa : partitions_up_to(W_, N)) {
      MuPolynomial pi = plucker(kappa, N);
      if (pi.is_zero()) continue;
      tau = tau + schur_.get(kappa).scaled(pi);
    }
    return tau;
  }

 private:
  CurveModel curve_;
  int g_, W_, M_;
  GammaMatrix gamma_;
  SchurCache schur_;
  std::vector<int> gap_set_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, MuPolynomial> minors_;

  MuPolynomial entry(int n, int col) {
    if (col >= static_cast<int>(gamma_.reduced.size())) {
      // Every entry of such a column exceeds the mu-degree bound.
      return MuPolynomial();
    }
    const LaurentSeries& s = gamma_.reduced[col];
    if (-n >= s.trunc()) return MuPolynomial();
    return s.coeff(-n);
  }

  MuPolynomial minor(const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.empty()) return MuPolynomial(1);
    auto key = std::make_pair(rows, cols);
    auto it = minors_.find(key);
    if (it != minors_.end()) return it->second;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    MuPolynomial acc;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      MuPolynomial a = entry(rows[0], cols[k]);
      if (a.is_zero()) continue;
      std::vector<int> sub_cols = cols;
      sub_cols.erase(sub_cols.begin() + k);
      MuPolynomial m = a * minor(sub_rows, sub_cols);
      acc = k % 2 ? acc - m : acc + m;
    }
    minors_.emplace(std::move(key), acc);
    return acc;
  }
};

inline int truncation_cap(int max_u_weight, int genus) {
  if (const char* env = std::getenv("SIGMA_TRUNCATION_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return max_u_weight + 2 * genus + 8;
}

struct TauResult {
  GapPolynomial tau;  // in U
  int N = 0;          // first N with tau_N = tau_{N+1} = tau_{N+2}
};

inline TauResult tau_determinant(const CurveModel& curve, int max_u_weight, int cap = -1) {
  if (cap < 0) cap = truncation_cap(max_u_weight, curve.genus);
  TauExpansion te(curve, max_u_weight);
  int N = curve.genus;
  std::vector<GapPolynomial> seq;
  seq.push_back(te.truncated(N));
  seq.push_back(te.truncated(N + 1));
  for (;;) {
    if (N + 2 > cap)
      throw Error(ErrorCode::Unstable, "determinant did not stabilize up to N = " + std::to_string(cap));
    seq.push_back(te.truncated(N + 2));
    std::size_t k = seq.size();
    if (seq[k - 3] == seq[k - 2] && seq[k - 2] == seq[k - 1]) return {seq[k - 3], N};
    ++N;
  }
}

// q(U) = sum c_w U_w + kQuadraticSign/2 sum q_ij U_i U_j over the gaps.
inline GapPolynomial q_polynomial(const std::vector<int>& gaps, const std::vector<MuPolynomial>& c,
                                  const PolyMatrix& q, int max_weight) {
  GapPolynomial out(gaps, max_weight);
  std::size_t g = gaps.size();
  for (std::size_t j = 0; j < g; ++j) out = out + GapPolynomial::variable(gaps, max_weight, j, c.at(gaps[j]));
  Rational half = make_rational(kQuadraticSign, 2);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      if (q[i][j].is_zero()) continue;
      GapPolynomial::Exponents k(g, 0);
      ++k[i];
      ++k[j];
      out.add(k, q[i][j] * half);
    }
  return out;
}

inline GapPolynomial exp_series(const GapPolynomial& f) {
  const auto& gaps = f.gaps();
  int W = f.max_weight();
  GapPolynomial sum = GapPolynomial::constant(gaps, W, MuPolynomial(1));
  GapPolynomial term = sum;
  for (int n = 1; n <= W; ++n) {
    term = (term * f).scaled(MuPolynomial(make_rational(1, n)));
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum;
}

inline std::vector<GapPolynomial> u_images(const std::vector<int>& gaps, const PolyMatrix& B0inv, int max_weight) {
  std::vector<GapPolynomial> images;
  for (std::size_t a = 0; a < gaps.size(); ++a) {
    GapPolynomial im(gaps, max_weight);
    for (std::size_t b = 0; b < gaps.size(); ++b)
      im = im + GapPolynomial::variable(gaps, max_weight, b, B0inv[a][b]);
    images.push_back(im);
  }
  return images;
}

// exp(q(B0^{-1} u)) to u-weight max_weight, plain (not Hurwitz) coefficients.
inline GapPolynomial exp_q_part(const KleinData& kd, int max_weight) {
  const CurveModel& c = kd.ctx.curve;
  auto cs = c_coefficients(kd.ctx.omega.back().series, c.genus, c.gaps.back());
  BMatrices bm = b_matrices(kd.ctx, c.gaps.back());
  GapPolynomial qU = q_polynomial(c.gaps, cs, kd.q_matrix, max_weight);
  return substitute_linear(exp_series(qU), u_images(c.gaps, bm.B0inv, max_weight));
}

struct SigmaExpansion {
  int e = 0, q = 0;
  int sigma_weight = 0;
  int max_u_weight = 0;
  std::vector<int> gaps;
  GapPolynomial terms;  // Hurwitz coefficients a_k: sigma = sum a_k prod u^k / k!
  std::string q_sign_convention = kQSignConvention;
  int truncation_N = 0;
  bool graded = true;
};

inline SigmaExpansion sigma_expansion(const CurveModel& curve, int max_u_weight, int cap = -1) {
  SigmaExpansion out;
  out.e = curve.e;
  out.q = curve.q;
  out.sigma_weight = sigma_weight(curve.e, curve.q);
  out.max_u_weight = max_u_weight;
  out.gaps = curve.gaps;
  out.graded = curve.graded;
  int M = std::max(0, max_u_weight - out.sigma_weight);

  TauResult tr = tau_determinant(curve, max_u_weight, cap);
  out.truncation_N = tr.N;

  KleinData kd = build_klein(curve);
  auto cs = c_coefficients(kd.ctx.omega.back().series, curve.genus, curve.gaps.back());
  BMatrices bm = b_matrices(kd.ctx, curve.gaps.back());
  // tau starts at U-weight wt(sigma), so exp(q) is needed only to weight M.
  GapPolynomial E = exp_series(q_polynomial(curve.gaps, cs, kd.q_matrix, M));
  GapPolynomial sigmaU = multiply(tr.tau, E, max_u_weight);
  GapPolynomial sigma_u = substitute_linear(sigmaU, u_images(curve.gaps, bm.B0inv, max_u_weight));
  out.terms = hurwitz_normalize(sigma_u);
  if (out.graded)
    for (const auto& [k, a] : out.terms.terms())
      if (!a.has_weight(out.sigma_weight - out.terms.weight_of(k)))
        throw Error(ErrorCode::Inhomogeneous, "sigma term of wrong weight: " + a.to_string());
  return out;
}

// sigma^2 in Hurwitz form, valid to u-weight max_u_weight + wt(sigma).
inline SigmaExpansion sigma_square(const SigmaExpansion& s) {
  SigmaExpansion out = s;
  int W = s.max_u_weight + s.sigma_weight;
  GapPolynomial plain = hurwitz_denormalize(s.terms);
  out.terms = hurwitz_normalize(multiply(plain, plain, W));
  out.sigma_weight = 2 * s.sigma_weight;
  out.max_u_weight = W;
  return out;
}

}  // namespace eqsigma
