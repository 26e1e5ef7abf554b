#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eqsigma/algebra/rational.hpp"
#include "eqsigma/errors.hpp"

namespace eqsigma {

// Exponent vector over mu_1 .. mu_kMaxMu. Curves with e*q > kMaxMu are
// rejected by build_curve.
struct Monomial {
  static constexpr int kMaxMu = 32;
  std::array<std::uint8_t, kMaxMu> exp{};

  int exponent(int j) const { return exp[j - 1]; }

  // Sum of j * exp_j, i.e. minus the weight.
  int degree() const {
    int d = 0;
    for (int j = 0; j < kMaxMu; ++j) d += (j + 1) * exp[j];
    return d;
  }

  bool is_one() const {
    for (auto v : exp)
      if (v) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int j = 0; j < kMaxMu; ++j) {
      int v = exp[j] + o.exp[j];
      if (v > 255) throw Error(ErrorCode::TooLarge, "mu exponent overflow");
      r.exp[j] = static_cast<std::uint8_t>(v);
    }
    return r;
  }

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool operator!=(const Monomial& o) const { return exp != o.exp; }
};

// Canonical order: weight descending (degree ascending), then higher powers of
// lower-indexed mu first.
inline bool canonical_less(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (int j = 0; j < Monomial::kMaxMu; ++j)
    if (a.exp[j] != b.exp[j]) return a.exp[j] > b.exp[j];
  return false;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t words[Monomial::kMaxMu / 8];
    std::memcpy(words, m.exp.data(), sizeof(words));
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class MuPolynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  MuPolynomial() = default;
  MuPolynomial(long c) {  // NOLINT: implicit from integer constants is convenient
    if (c != 0) terms_.push_back({Monomial{}, Rational(c)});
  }
  MuPolynomial(const Rational& c) {  // NOLINT
    if (c != 0) terms_.push_back({Monomial{}, c});
  }

  static MuPolynomial mu(int j, int power = 1) {
    if (j < 1 || j > Monomial::kMaxMu) throw Error(ErrorCode::TooLarge, "mu index out of range");
    MuPolynomial p;
    Monomial m;
    m.exp[j - 1] = static_cast<std::uint8_t>(power);
    p.terms_.push_back({m, Rational(1)});
    return p;
  }

  static MuPolynomial from_terms(std::vector<Term> terms) {
    MuPolynomial p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

  Rational constant_term() const {
    if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
    return Rational(0);
  }

  Rational coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return canonical_less(t.first, k); });
    if (it != terms_.end() && it->first == m) return it->second;
    return Rational(0);
  }

  // Common weight of all terms; wt(mu_j) = -j.
  int weight() const {
    if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "weight of zero polynomial");
    int d = terms_.front().first.degree();
    if (terms_.back().first.degree() != d) throw Error(ErrorCode::Inhomogeneous, to_string());
    return -d;
  }

  std::optional<int> homogeneous_weight() const {
    if (terms_.empty() || terms_.front().first.degree() != terms_.back().first.degree()) return std::nullopt;
    return -terms_.front().first.degree();
  }

  // Zero counts as homogeneous of every weight.
  bool has_weight(int w) const {
    if (terms_.empty()) return true;
    return terms_.front().first.degree() == -w && terms_.back().first.degree() == -w;
  }

  int max_degree() const { return terms_.empty() ? 0 : terms_.back().first.degree(); }

  MuPolynomial operator-() const {
    MuPolynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  MuPolynomial& operator+=(const MuPolynomial& o) { return *this = merge(*this, o, false); }
  MuPolynomial& operator-=(const MuPolynomial& o) { return *this = merge(*this, o, true); }
  MuPolynomial& operator*=(const MuPolynomial& o) { return *this = *this * o; }

  friend MuPolynomial operator+(const MuPolynomial& a, const MuPolynomial& b) { return merge(a, b, false); }
  friend MuPolynomial operator-(const MuPolynomial& a, const MuPolynomial& b) { return merge(a, b, true); }

  friend MuPolynomial operator*(const MuPolynomial& a, const MuPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return MuPolynomial();
    if (a.terms_.size() == 1) return scale_by_term(b, a.terms_[0]);
    if (b.terms_.size() == 1) return scale_by_term(a, b.terms_[0]);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    Rational tmp;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
        auto [it, fresh] = acc.try_emplace(ma * mb, tmp);
        if (!fresh) it->second += tmp;
      }
    }
    MuPolynomial r;
    r.terms_.reserve(acc.size());
    for (auto& kv : acc)
      if (kv.second != 0) r.terms_.push_back({kv.first, std::move(kv.second)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return canonical_less(x.first, y.first); });
    return r;
  }

  friend MuPolynomial operator*(const MuPolynomial& a, const Rational& c) {
    if (c == 0) return MuPolynomial();
    MuPolynomial r = a;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }
  friend MuPolynomial operator*(const Rational& c, const MuPolynomial& a) { return a * c; }
  friend MuPolynomial operator*(const MuPolynomial& a, long c) { return a * Rational(c); }
  friend MuPolynomial operator*(long c, const MuPolynomial& a) { return a * Rational(c); }

  friend bool operator==(const MuPolynomial& a, const MuPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MuPolynomial& a, const MuPolynomial& b) { return !(a == b); }

  // Only mu indices actually present.
  std::set<int> variables() const {
    std::set<int> v;
    for (const auto& t : terms_)
      for (int j = 0; j < Monomial::kMaxMu; ++j)
        if (t.first.exp[j]) v.insert(j + 1);
    return v;
  }

  MuPolynomial substitute(const std::map<int, MuPolynomial>& assignment) const {
    std::map<int, std::vector<MuPolynomial>> powers;
    for (int j : variables()) {
      auto it = assignment.find(j);
      if (it == assignment.end())
        throw Error(ErrorCode::MissingAssignment, "no value for mu" + std::to_string(j));
      powers[j] = {MuPolynomial(1)};
    }
    MuPolynomial out;
    for (const auto& [m, c] : terms_) {
      MuPolynomial prod(c);
      for (int j = 0; j < Monomial::kMaxMu; ++j) {
        int k = m.exp[j];
        if (!k) continue;
        auto& pw = powers[j + 1];
        while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * assignment.at(j + 1));
        prod = prod * pw[k];
      }
      out += prod;
    }
    return out;
  }

  // Like substitute, but variables without an entry stay as they are.
  MuPolynomial substitute_partial(const std::map<int, MuPolynomial>& assignment) const {
    std::map<int, MuPolynomial> full = assignment;
    for (int j : variables())
      if (!full.count(j)) full[j] = mu(j);
    return substitute(full);
  }

  std::set<Integer> denominator_primes() const {
    std::set<Integer> out;
    for (const auto& t : terms_) {
      auto f = prime_factors(Integer(t.second.get_den()));
      out.insert(f.begin(), f.end());
    }
    return out;
  }

  bool is_integral() const {
    for (const auto& t : terms_)
      if (t.second.get_den() != 1) return false;
    return true;
  }

  // Minimum over terms of the 2-adic valuation of the coefficient; the
  // zero polynomial reports LONG_MAX.
  long two_adic_valuation() const {
    long v = std::numeric_limits<long>::max();
    for (const auto& t : terms_) v = std::min(v, valuation(t.second, 2));
    return v;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = c;
      if (first) {
        if (a < 0) {
          s += "-";
          a = -a;
        }
      } else {
        s += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
      }
      first = false;
      s += a.get_str(10);
      for (int j = 0; j < Monomial::kMaxMu; ++j) {
        if (!m.exp[j]) continue;
        s += "*mu" + std::to_string(j + 1);
        if (m.exp[j] > 1) s += "^" + std::to_string(m.exp[j]);
      }
    }
    return s;
  }

  static MuPolynomial parse(std::string_view text);

 private:
  std::vector<Term> terms_;

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return canonical_less(x.first, y.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second == 0; }), out.end());
    terms_ = std::move(out);
  }

  static MuPolynomial scale_by_term(const MuPolynomial& a, const Term& t) {
    MuPolynomial r;
    r.terms_.reserve(a.terms_.size());
    for (const auto& [m, c] : a.terms_) r.terms_.push_back({m * t.first, c * t.second});
    return r;
  }

  static MuPolynomial merge(const MuPolynomial& a, const MuPolynomial& b, bool subtract) {
    MuPolynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && canonical_less(a.terms_[i].first, b.terms_[j].first))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || canonical_less(b.terms_[j].first, a.terms_[i].first)) {
        r.terms_.push_back({b.terms_[j].first, subtract ? Rational(-b.terms_[j].second) : b.terms_[j].second});
        ++j;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].second - b.terms_[j].second)
                              : Rational(a.terms_[i].second + b.terms_[j].second);
        if (c != 0) r.terms_.push_back({a.terms_[i].first, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }
};

inline MuPolynomial pow(const MuPolynomial& p, int n) {
  MuPolynomial r(1), b = p;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

// Grammar: sum of signed terms, term = coef ("*" "mu" index ("^" exp)?)*.
// Whitespace is ignored; a leading '+' is accepted.
inline MuPolynomial MuPolynomial::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty polynomial");
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos) + " in '" + s + "'");
  };
  auto read_uint = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return s.substr(start, pos - start);
  };
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected sign");
    }
    first = false;
    std::string coef = read_uint();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      coef += "/" + read_uint();
    }
    Rational c = parse_rational(coef);
    if (sign < 0) c = -c;
    Monomial m;
    while (pos < s.size() && s[pos] == '*') {
      ++pos;
      if (s.compare(pos, 2, "mu") != 0) fail("expected mu");
      pos += 2;
      int j = std::stoi(read_uint());
      if (j < 1 || j > Monomial::kMaxMu) fail("mu index out of range");
      int k = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        k = std::stoi(read_uint());
      }
      if (m.exp[j - 1] + k > 255) fail("exponent too large");
      m.exp[j - 1] = static_cast<std::uint8_t>(m.exp[j - 1] + k);
    }
    terms.push_back({m, c});
  }
  return from_terms(std::move(terms));
}

}  // namespace eqsigma
