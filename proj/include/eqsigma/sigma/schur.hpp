#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "eqsigma/sigma/gap_polynomial.hpp"

namespace eqsigma {

using Partition = std::vector<int>;  // weakly decreasing, no zero parts

inline int partition_size(const Partition& k) {
  int s = 0;
  for (int x : k) s += x;
  return s;
}

// All partitions of size <= max_size with at most max_len parts.
inline std::vector<Partition> partitions_up_to(int max_size, int max_len) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int remaining, int largest) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) >= max_len) return;
    for (int p = std::min(remaining, largest); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(max_size, max_size);
  return out;
}

// Irreducible characters chi^kappa(rho) of the symmetric group by the
// Murnaghan-Nakayama rule, rho given as multiplicities over a fixed set of
// cycle lengths. Rim hooks are removed through beta numbers.
class CharacterTable {
 public:
  explicit CharacterTable(std::vector<int> lengths) : lengths_(std::move(lengths)) {}

  Integer chi(const Partition& kappa, const std::vector<int>& mult) {
    int total = 0;
    for (std::size_t j = 0; j < mult.size(); ++j) total += mult[j] * lengths_[j];
    if (total != partition_size(kappa)) return 0;
    if (kappa.empty()) return 1;
    auto key = std::make_pair(kappa, mult);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::size_t j = mult.size();
    while (j-- > 0)
      if (mult[j] > 0) break;
    int r = lengths_[j];
    std::vector<int> rest = mult;
    --rest[j];

    int L = static_cast<int>(kappa.size());
    std::vector<int> beta(L);
    for (int i = 0; i < L; ++i) beta[i] = kappa[i] + (L - 1 - i);
    Integer acc = 0;
    for (int i = 0; i < L; ++i) {
      int nb = beta[i] - r;
      if (nb < 0 || std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
      int between = 0;
      for (int b : beta)
        if (b > nb && b < beta[i]) ++between;
      std::vector<int> nbeta = beta;
      nbeta[i] = nb;
      std::sort(nbeta.rbegin(), nbeta.rend());
      Partition sub;
      for (int k = 0; k < L; ++k) {
        int part = nbeta[k] - (L - 1 - k);
        if (part > 0) sub.push_back(part);
      }
      Integer v = chi(sub, rest);
      acc += (between % 2 ? -v : v);
    }
    memo_.emplace(std::move(key), acc);
    return acc;
  }

 private:
  std::vector<int> lengths_;
  std::map<std::pair<Partition, std::vector<int>>, Integer> memo_;
};

// Multiplicity vectors m over gaps with sum m_j gaps[j] == n.
inline std::vector<std::vector<int>> gap_compositions(const std::vector<int>& gaps, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(gaps.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
    if (j == gaps.size()) {
      if (left == 0) out.push_back(m);
      return;
    }
    for (int k = 0; k * gaps[j] <= left; ++k) {
      m[j] = k;
      rec(j + 1, left - k * gaps[j]);
    }
    m[j] = 0;
  };
  rec(0, n);
  return out;
}

// s_kappa(U) in the times U_w = p_w / w, all U outside the gaps set to zero:
// s_kappa = sum_rho chi^kappa(rho) prod U_w^{m_w} / m_w!.
class SchurCache {
 public:
  SchurCache(std::vector<int> gaps, int max_weight) : gaps_(gaps), max_weight_(max_weight), chars_(std::move(gaps)) {}

  const GapPolynomial& get(const Partition& kappa) {
    auto it = cache_.find(kappa);
    if (it != cache_.end()) return it->second;
    GapPolynomial s(gaps_, max_weight_);
    for (const auto& m : gap_compositions(gaps_, partition_size(kappa))) {
      Integer c = chars_.chi(kappa, m);
      if (c == 0) continue;
      Integer den = 1;
      for (int k : m) den *= factorial(k);
      s.add(m, MuPolynomial(make_rational(c, den)));
    }
    return cache_.emplace(kappa, std::move(s)).first->second;
  }

 private:
  std::vector<int> gaps_;
  int max_weight_;
  CharacterTable chars_;
  std::map<Partition, GapPolynomial> cache_;
};

// p_0, ..., p_count: exp(sum_w U_w T^w) = sum_j p_j T^j, U_w = 0 off the gaps.
inline std::vector<GapPolynomial> schur_p(const std::vector<int>& gaps, int count) {
  std::vector<GapPolynomial> out;
  for (int j = 0; j <= count; ++j) {
    GapPolynomial p(gaps, count);
    for (const auto& m : gap_compositions(gaps, j)) {
      Integer den = 1;
      for (int k : m) den *= factorial(k);
      p.add(m, MuPolynomial(make_rational(Integer(1), den)));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace eqsigma
