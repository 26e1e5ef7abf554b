#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqsigma/io/json.hpp"
#include "eqsigma/io/text.hpp"

using namespace eqsigma;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUnstable = 3;
constexpr int kExitViolation = 4;

struct RunConfig {
  std::string command;
  int e = 0, q = 0;
  int max_u_weight = -1;
  int order = 10;
  std::string format = "text";
  std::vector<std::string> mu;
  std::string output;
  std::string ring = "z-mu-prime";
  bool assert_theorem = false;
};

std::map<int, MuPolynomial> parse_mu(const std::vector<std::string>& items, const CurveModel& curve) {
  std::map<int, MuPolynomial> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidConfig, "--mu expects j=value, got '" + item + "'");
    int j = 0;
    try {
      j = std::stoi(item.substr(0, eq));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "bad mu index in '" + item + "'");
    }
    if (std::find(curve.mu.begin(), curve.mu.end(), j) == curve.mu.end())
      throw Error(ErrorCode::InvalidConfig, "mu" + std::to_string(j) + " does not occur in f");
    out[j] = MuPolynomial(parse_rational(item.substr(eq + 1)));
  }
  return out;
}

std::string series_line(const std::string& name, const LaurentSeries& s) { return name + " = " + s.to_string() + "\n"; }

std::string matrix_text(const PolyMatrix& m) {
  std::string s;
  for (const auto& row : m) {
    s += "  [";
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? ", " : "") + row[j].to_string();
    s += "]\n";
  }
  return s;
}

Json matrix_json(const PolyMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    a.push_back(r);
  }
  return a;
}

std::string run_curve(const RunConfig& cfg, const CurveModel& curve) {
  CurveExpansion ex = expand_curve(curve, cfg.order);
  const auto& p = curve.abcd;
  if (cfg.format == "json") {
    Json j;
    j["e"] = curve.e;
    j["q"] = curve.q;
    j["genus"] = curve.genus;
    j["gaps"] = curve.gaps;
    j["sigma_weight"] = sigma_weight(curve.e, curve.q);
    j["local_parameter"] = {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}};
    j["f"] = curve.f.to_string("x", "y");
    j["f_tilde"] = tilde_f(curve).to_string("t", "s");
    j["s"] = ex.s.to_string();
    j["x"] = ex.x.to_string();
    j["y"] = ex.y.to_string();
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "(e,q) = (" << curve.e << "," << curve.q << ")  genus " << curve.genus << "  wt(sigma) "
      << sigma_weight(curve.e, curve.q) << "\n";
  out << "gaps:";
  for (int w : curve.gaps) out << " " << w;
  out << "\n";
  out << "t = x^" << -p.a << " y^" << p.b << "  (a,b,c,d) = (" << p.a << "," << p.b << "," << p.c << "," << p.d
      << ")\n";
  out << "f(x,y) = " << curve.f.to_string("x", "y") << "\n";
  out << "f~(t,s) = " << tilde_f(curve).to_string("t", "s") << "\n";
  out << series_line("s(t)", ex.s) << series_line("x(t)", ex.x) << series_line("y(t)", ex.y);
  return out.str();
}

std::string run_forms(const RunConfig& cfg, const CurveModel& curve) {
  FormsContext ctx = first_kind_forms(curve, cfg.order + 2 * curve.genus);
  std::vector<std::pair<std::string, LaurentSeries>> rows;
  rows.push_back({"dx/f_y", ctx.dxfy});
  for (int i = curve.genus; i-- > 0;) rows.push_back({"omega_" + std::to_string(curve.gaps[i]), ctx.omega[i].series});
  for (const auto& bm : monomial_basis(curve, 4 * curve.genus - 2)) {
    if (bm.pole <= 2 * curve.genus - 2) continue;
    std::string name = "x^" + std::to_string(bm.m) + " y^" + std::to_string(bm.n) + " dx/f_y";
    rows.push_back({name, second_kind_form(curve, ctx.expansion, ctx.dxfy, bm.m, bm.n)});
  }
  if (cfg.format == "json") {
    Json j = Json::object();
    for (const auto& [name, s] : rows) j[name] = s.to_string();
    return j.dump(2) + "\n";
  }
  std::string out;
  for (const auto& [name, s] : rows) out += series_line(name, s);
  return out;
}

std::string run_klein(const RunConfig& cfg, const CurveModel& curve) {
  KleinData kd = build_klein(curve);
  auto cs = c_coefficients(kd.ctx.omega.back().series, curve.genus, curve.gaps.back());
  BMatrices bm = b_matrices(kd.ctx, curve.gaps.back());
  int g = curve.genus;
  if (cfg.format == "json") {
    Json j;
    j["M"] = matrix_json(kd.M);
    j["det_M"] = kd.M_det.to_string();
    Json sol = Json::array();
    for (const auto& x : kd.solution) sol.push_back(x.to_string());
    j["solution"] = sol;
    Json eta = Json::object();
    for (int i = 0; i < g; ++i) eta["eta_-" + std::to_string(curve.gaps[i])] = kd.eta[i].series.to_string();
    j["eta"] = eta;
    j["correction"] = matrix_json(kd.correction);
    j["q"] = matrix_json(kd.q_matrix);
    Json c = Json::object();
    for (int w : curve.gaps) c[std::to_string(w)] = cs[w].to_string();
    j["c"] = c;
    j["B0_inverse"] = matrix_json(bm.B0inv);
    j["q_sign_convention"] = kQSignConvention;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "M (det " << kd.M_det.to_string() << "):\n" << matrix_text(kd.M);
  out << "solution:";
  for (const auto& x : kd.solution) out << " [" << x.to_string() << "]";
  out << "\n";
  for (int i = 0; i < g; ++i) out << series_line("eta_-" + std::to_string(curve.gaps[i]), kd.eta[i].series);
  out << "symmetrizing correction a_ij:\n" << matrix_text(kd.correction);
  out << "q_ij (gap order):\n" << matrix_text(kd.q_matrix);
  for (int w : curve.gaps) out << "c_" << w << " = " << cs[w].to_string() << "\n";
  out << "B0^-1 (U = B0^-1 u):\n" << matrix_text(bm.B0inv);
  out << "q sign: " << kQSignConvention << "\n";
  return out.str();
}

int require_weight(const RunConfig& cfg, const CurveModel& curve) {
  int wt = sigma_weight(curve.e, curve.q);
  int W = cfg.max_u_weight < 0 ? wt + 4 : cfg.max_u_weight;
  if (W < wt)
    throw Error(ErrorCode::InvalidConfig,
                "--max-u-weight " + std::to_string(W) + " is below wt(sigma) = " + std::to_string(wt));
  return W;
}

int run(const RunConfig& cfg, std::string& doc) {
  CurveModel curve = build_curve(cfg.e, cfg.q);
  auto values = parse_mu(cfg.mu, curve);
  if (!values.empty()) curve = specialize(curve, values);

  if (cfg.command == "curve") {
    doc = run_curve(cfg, curve);
    return kExitOk;
  }
  if (cfg.command == "forms") {
    doc = run_forms(cfg, curve);
    return kExitOk;
  }
  if (cfg.command == "klein") {
    doc = run_klein(cfg, curve);
    return kExitOk;
  }
  int W = require_weight(cfg, curve);
  SigmaExpansion s = sigma_expansion(curve, W);
  if (cfg.command == "expand") {
    doc = cfg.format == "json" ? expansion_to_json_string(s) : expansion_to_text(s);
    return kExitOk;
  }
  if (cfg.command == "square") {
    SigmaExpansion sq = sigma_square(s);
    doc = cfg.format == "json" ? expansion_to_json_string(sq) : expansion_to_text(sq, "sigma^2");
    return kExitOk;
  }
  // check-integrality
  Ring ring = cfg.ring == "z-mu" ? Ring::ZMu : Ring::ZMuPrime;
  IntegralityReport rep = check_hurwitz(s, ring);
  IntegralityReport sq = check_sigma_square(s);
  std::set<int> odd = odd_odd_mu_set(curve.e, curve.q);
  // With numeric mu the odd-odd structure is gone; only the square check applies then.
  bool theorem_ok = sq.verdict;
  if (curve.graded) theorem_ok = theorem_ok && (ring == Ring::ZMuPrime ? rep.verdict : violations_explained(rep, odd));
  if (cfg.format == "json") {
    Json j;
    j["e"] = curve.e;
    j["q"] = curve.q;
    j["max_u_weight"] = W;
    j["odd_odd_mu"] = odd;
    j["report"] = report_to_json(rep, s);
    j["sigma_square"] = report_to_json(sq, s);
    j["theorem_consistent"] = theorem_ok;
    doc = j.dump(2) + "\n";
  } else {
    std::ostringstream out;
    out << "(e,q) = (" << curve.e << "," << curve.q << ")  max u-weight " << W << "\nodd-odd mu:";
    for (int j : odd) out << " mu" << j;
    out << "\nsigma: " << report_to_text(rep, s) << "sigma^2: " << report_to_text(sq, s)
        << "theorem consistent: " << (theorem_ok ? "true" : "false") << "\n";
    doc = out.str();
  }
  return cfg.assert_theorem && !theorem_ok ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sigma function expansions for (e,q)-curves"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool weighted) {
    sub->add_option("--e", cfg.e, "first exponent e")->required();
    sub->add_option("--q", cfg.q, "second exponent q")->required();
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--mu", cfg.mu, "specialize mu_j, as j=value (repeatable)");
    sub->add_option("--output", cfg.output, "write the document to this file");
    if (weighted)
      sub->add_option("--max-u-weight", cfg.max_u_weight, "keep terms of u-weight up to this bound");
    else
      sub->add_option("--order", cfg.order, "series order");
  };
  common(app.add_subcommand("curve", "local expansion of the curve"), false);
  common(app.add_subcommand("forms", "first and second kind differentials"), false);
  common(app.add_subcommand("klein", "Klein 2-form data, c_j and q_ij"), false);
  common(app.add_subcommand("expand", "Hurwitz-normalized sigma expansion"), true);
  common(app.add_subcommand("square", "Hurwitz-normalized sigma^2"), true);
  auto* chk = app.add_subcommand("check-integrality", "Hurwitz integrality verdicts");
  common(chk, true);
  chk->add_option("--ring", cfg.ring, "z-mu or z-mu-prime")->check(CLI::IsMember({"z-mu", "z-mu-prime"}));
  chk->add_flag("--assert-theorem", cfg.assert_theorem, "exit 4 when the verdicts contradict the main theorem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  std::string doc;
  int code = kExitOk;
  try {
    code = run(cfg, doc);
  } catch (const Error& err) {
    std::cerr << err.what() << "\n";
    switch (err.code()) {
      case ErrorCode::NotCoprime:
      case ErrorCode::BadOrder:
      case ErrorCode::TooLarge:
      case ErrorCode::ParseError:
      case ErrorCode::InvalidConfig:
        return kExitConfig;
      case ErrorCode::Unstable:
        return kExitUnstable;
      default:
        return kExitInternal;
    }
  }
  if (cfg.output.empty()) {
    std::cout << doc;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << cfg.output << "\n";
      return kExitConfig;
    }
    f << doc;
  }
  return code;
}
