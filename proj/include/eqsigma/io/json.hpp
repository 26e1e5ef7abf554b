#pragma once

#include <string>

#include <json.hpp>

#include "eqsigma/integrality.hpp"

namespace eqsigma {

using Json = nlohmann::ordered_json;

// u_exponents keys are gap values, largest gap first; zero exponents omitted.
inline Json expansion_to_json(const SigmaExpansion& s) {
  Json j;
  j["e"] = s.e;
  j["q"] = s.q;
  j["sigma_weight"] = s.sigma_weight;
  j["max_u_weight"] = s.max_u_weight;
  j["gaps"] = s.gaps;
  Json terms = Json::array();
  for (const auto& [k, a] : s.terms.ordered_terms()) {
    Json ex = Json::object();
    for (std::size_t i = s.gaps.size(); i-- > 0;)
      if (k[i]) ex[std::to_string(s.gaps[i])] = k[i];
    terms.push_back({{"u_exponents", ex}, {"hurwitz_coefficient", a.to_string()}});
  }
  j["terms"] = terms;
  j["metadata"] = {{"q_sign_convention", s.q_sign_convention}, {"truncation_N", s.truncation_N}};
  return j;
}

inline std::string expansion_to_json_string(const SigmaExpansion& s) { return expansion_to_json(s).dump(2) + "\n"; }

inline SigmaExpansion expansion_from_json(const Json& j) {
  try {
    SigmaExpansion s;
    s.e = j.at("e").get<int>();
    s.q = j.at("q").get<int>();
    s.sigma_weight = j.at("sigma_weight").get<int>();
    s.max_u_weight = j.at("max_u_weight").get<int>();
    s.gaps = j.at("gaps").get<std::vector<int>>();
    s.terms = GapPolynomial(s.gaps, s.max_u_weight);
    for (const auto& t : j.at("terms")) {
      GapPolynomial::Exponents k(s.gaps.size(), 0);
      for (const auto& [key, val] : t.at("u_exponents").items()) {
        int w = std::stoi(key);
        auto it = std::find(s.gaps.begin(), s.gaps.end(), w);
        if (it == s.gaps.end()) throw Error(ErrorCode::ParseError, "u_" + key + " is not a gap variable");
        k[it - s.gaps.begin()] = val.get<int>();
      }
      s.terms.add(k, MuPolynomial::parse(t.at("hurwitz_coefficient").get<std::string>()));
    }
    const Json& md = j.at("metadata");
    s.q_sign_convention = md.at("q_sign_convention").get<std::string>();
    s.truncation_N = md.at("truncation_N").get<int>();
    return s;
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

inline SigmaExpansion expansion_from_json_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
  return expansion_from_json(j);
}

inline Json report_to_json(const IntegralityReport& r, const SigmaExpansion& s) {
  Json j;
  j["ring"] = ring_name(r.ring);
  j["weight_bound"] = r.weight_bound;
  j["verdict"] = r.verdict;
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json ex = Json::object();
    for (std::size_t i = s.gaps.size(); i-- > 0;)
      if (v.exponents[i]) ex[std::to_string(s.gaps[i])] = v.exponents[i];
    Json primes = Json::array();
    for (const auto& p : v.primes) primes.push_back(p.get_str());
    vs.push_back({{"u_exponents", ex}, {"primes", primes}, {"coefficient", v.coefficient.to_string()}});
  }
  j["violations"] = vs;
  return j;
}

}  // namespace eqsigma
