#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nnt/examples.hpp"
#include "nnt/parse.hpp"

namespace nnt {

using Json = nlohmann::json;

namespace detail {

inline void need(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline const Json& field(const Json& j, const char* key, const char* what) {
  need(j.is_object(), std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  need(it != j.end(), std::string(what) + " is missing the '" + key + "' field");
  return *it;
}

inline long long int_value(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(j.get<std::string>(), &used);
      if (used == j.get<std::string>().size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument(what + " must be an integer");
}

inline int int_field(const Json& j, const char* key, const char* what) {
  return static_cast<int>(int_value(field(j, key, what), std::string(what) + "." + key));
}

}  // namespace detail

// --- Rationals and matrices -------------------------------------------

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw std::invalid_argument("expected a rational as a \"p/q\" string or an integer");
}

inline Json mat_to_json(const Mat& a) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(rat_str(a.at(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

inline Mat mat_from_json(const Json& j) {
  long long r = detail::int_value(detail::field(j, "rows", "matrix"), "matrix.rows");
  long long c = detail::int_value(detail::field(j, "cols", "matrix"), "matrix.cols");
  detail::need(r >= 0 && c >= 0, "matrix dimensions must be nonnegative");
  const Json& entries = detail::field(j, "entries", "matrix");
  detail::need(entries.is_array() && entries.size() == static_cast<std::size_t>(r),
               "matrix entries must be an array of 'rows' rows");
  Mat a(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Json& row = entries[i];
    detail::need(row.is_array() && row.size() == a.cols(),
                 "matrix row " + std::to_string(i + 1) + " must have 'cols' entries");
    for (std::size_t k = 0; k < a.cols(); ++k) a.at(i, k) = rational_from_json(row[k]);
  }
  return a;
}

// --- Orientation signs ------------------------------------------------

inline std::string eps_to_json(int eps) { return eps == 1 ? "+" : "-"; }

inline int eps_from_string(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return 1;
  if (s == "-" || s == "-1") return -1;
  throw std::invalid_argument("eps must be '+' or '-'");
}

inline int eps_from_json(const Json& j) {
  if (j.is_string()) return eps_from_string(j.get<std::string>());
  if (j.is_number_integer()) {
    long long v = j.get<long long>();
    if (v == 1 || v == -1) return static_cast<int>(v);
  }
  throw std::invalid_argument("eps must be '+' or '-'");
}

// --- Exterior elements ------------------------------------------------

inline Json graded_to_json(const GradedElement& g) {
  Json terms = Json::array();
  for (const auto& [idx, c] : g.terms())
    terms.push_back({{"idx", idx}, {"coeff", rat_str(c)}});
  return {{"degree", g.degree()}, {"terms", std::move(terms)}};
}

inline GradedElement graded_from_json(const Json& j, int dim) {
  int degree = detail::int_field(j, "degree", "exterior element");
  const Json& terms = detail::field(j, "terms", "exterior element");
  detail::need(terms.is_array(), "exterior terms must be an array");
  GradedElement g(dim, degree);
  for (const Json& t : terms) {
    const Json& idx = detail::field(t, "idx", "exterior term");
    detail::need(idx.is_array(), "exterior term idx must be an array");
    std::vector<int> tuple;
    for (const Json& i : idx)
      tuple.push_back(static_cast<int>(detail::int_value(i, "exterior index")));
    g.add(std::move(tuple), rational_from_json(detail::field(t, "coeff", "exterior term")));
  }
  return g;
}

// --- Function ring and forms ------------------------------------------

inline Json exppoly_to_json(const ExpPoly& f) {
  Json terms = Json::array();
  for (const auto& [key, c] : f.terms()) {
    Json lam = Json::array();
    for (const Rational& l : key.second) lam.push_back(rat_str(l));
    terms.push_back({{"mono", key.first}, {"exp", std::move(lam)}, {"coeff", rat_str(c)}});
  }
  return {{"m", f.vars()}, {"terms", std::move(terms)}};
}

inline ExpPoly exppoly_from_json(const Json& j) {
  int m = detail::int_field(j, "m", "function");
  const Json& terms = detail::field(j, "terms", "function");
  detail::need(terms.is_array(), "function terms must be an array");
  ExpPoly f = ExpPoly::constant(m, 0);
  for (const Json& t : terms) {
    const Json& mono = detail::field(t, "mono", "function term");
    const Json& lam = detail::field(t, "exp", "function term");
    detail::need(mono.is_array() && lam.is_array(),
                 "function term mono and exp must be arrays");
    std::vector<long> alpha;
    for (const Json& e : mono)
      alpha.push_back(static_cast<long>(detail::int_value(e, "monomial exponent")));
    std::vector<Rational> weights;
    for (const Json& l : lam) weights.push_back(rational_from_json(l));
    f += ExpPoly::term(m, rational_from_json(detail::field(t, "coeff", "function term")),
                       std::move(alpha), std::move(weights));
  }
  return f;
}

inline Json kform_to_json(const KForm& w) {
  Json coeffs = Json::array();
  for (const auto& [idx, poly] : w.terms())
    coeffs.push_back({{"idx", idx}, {"poly", exppoly_to_json(poly)}});
  return {{"degree", w.degree()}, {"coeffs", std::move(coeffs)}};
}

inline KForm kform_from_json(const Json& j, int m) {
  int degree = detail::int_field(j, "degree", "form");
  const Json& coeffs = detail::field(j, "coeffs", "form");
  detail::need(coeffs.is_array(), "form coeffs must be an array");
  KForm w(m, degree);
  for (const Json& t : coeffs) {
    const Json& idx = detail::field(t, "idx", "form term");
    detail::need(idx.is_array(), "form term idx must be an array");
    std::vector<int> tuple;
    for (const Json& i : idx)
      tuple.push_back(static_cast<int>(detail::int_value(i, "form index")));
    w.add(std::move(tuple),
          detail::over(exppoly_from_json(detail::field(t, "poly", "form term")), m));
  }
  return w;
}

// --- Connection gauges ------------------------------------------------

inline Json gauge_to_json(const ConnectionGauge& cg) {
  Json grid = Json::array();
  for (std::size_t i = 0; i < cg.omega.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cg.omega.cols(); ++j)
      row.push_back(kform_to_json(cg.omega.at(i, j)));
    grid.push_back(std::move(row));
  }
  return {{"n", cg.n}, {"eps", eps_to_json(cg.eps)}, {"m", cg.vars()},
          {"omega", std::move(grid)}};
}

inline ConnectionGauge gauge_from_json(const Json& j) {
  int n = detail::int_field(j, "n", "connection gauge");
  int eps = eps_from_json(detail::field(j, "eps", "connection gauge"));
  int m = detail::int_field(j, "m", "connection gauge");
  detail::need(n >= 1 && m >= 1, "connection gauge needs n >= 1 and m >= 1");
  const Json& grid = detail::field(j, "omega", "connection gauge");
  std::size_t d = 4 * static_cast<std::size_t>(n);
  detail::need(grid.is_array() && grid.size() == d, "omega must be a 4n x 4n grid");
  FormMat w(d, d, m, 1);
  for (std::size_t i = 0; i < d; ++i) {
    const Json& row = grid[i];
    detail::need(row.is_array() && row.size() == d, "omega must be a 4n x 4n grid");
    for (std::size_t k = 0; k < d; ++k) {
      KForm entry = kform_from_json(row[k], m);
      detail::need(entry.degree() == 1, "omega entries must be 1-forms");
      w.at(i, k) = std::move(entry);
    }
  }
  return ConnectionGauge(n, eps, std::move(w));
}

// --- Structure records and reports ------------------------------------

inline Json record_to_json(const NilpotentStructure& s) {
  return {{"n", s.n}, {"eps", eps_to_json(s.eps)}, {"N", mat_to_json(s.N)},
          {"frame", mat_to_json(s.frame)}};
}

inline Json split_to_json(const SplitTriple& t) {
  return {{"n", t.n},          {"eps", eps_to_json(t.eps)}, {"frame", mat_to_json(t.frame)},
          {"I", mat_to_json(t.I)}, {"J1", mat_to_json(t.J1)},   {"J2", mat_to_json(t.J2)}};
}

inline Json report_to_json(const ExampleReport& r) {
  Json params = Json::object();
  for (const auto& [key, value] : r.params) params[key] = value;
  Json checks = Json::array();
  for (const ExampleCheck& c : r.checks) {
    Json entry = {{"claim", c.claim}, {"rule", c.rule}, {"verdict", c.pass ? "pass" : "fail"}};
    if (!c.witness.empty()) entry["witness"] = c.witness;
    checks.push_back(std::move(entry));
  }
  return {{"name", r.name}, {"params", std::move(params)}, {"checks", std::move(checks)},
          {"all_pass", r.all_pass()}};
}

// --- Report dispatch with JSON parameters ------------------------------

namespace detail {

inline void known_keys(const Json& p, const std::string& name,
                       std::initializer_list<const char*> allowed) {
  if (!p.is_object()) return;
  for (const auto& [key, value] : p.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    need(ok, "unknown param '" + key + "' for example '" + name + "'");
  }
}

inline bool has_param(const Json& p, const char* key) {
  return p.is_object() && p.contains(key);
}

inline int int_param(const Json& p, const char* key, int def) {
  if (!has_param(p, key)) return def;
  return static_cast<int>(int_value(p.at(key), std::string("param ") + key));
}

inline std::uint64_t seed_param(const Json& p, const char* key, std::uint64_t def) {
  if (!has_param(p, key)) return def;
  long long v = int_value(p.at(key), std::string("param ") + key);
  need(v >= 0, "param seed must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

inline ExpPoly poly_param(const Json& p, const char* key, const char* def, int m) {
  if (!has_param(p, key)) return parse_exppoly(def, m);
  const Json& j = p.at(key);
  need(j.is_string(), std::string("param ") + key + " must be an expression string");
  return parse_exppoly(j.get<std::string>(), m);
}

inline std::vector<ExpPoly> poly_list_param(const Json& p, const char* key,
                                            std::vector<std::string> def, int m) {
  std::vector<ExpPoly> out;
  if (!has_param(p, key)) {
    for (const std::string& s : def) out.push_back(parse_exppoly(s, m));
    return out;
  }
  const Json& j = p.at(key);
  need(j.is_array(), std::string("param ") + key + " must be an array of expression strings");
  for (const Json& e : j) {
    need(e.is_string(), std::string("param ") + key + " must be an array of expression strings");
    out.push_back(parse_exppoly(e.get<std::string>(), m));
  }
  return out;
}

}  // namespace detail

// Same dispatch as run_example but with JSON parameters; seed and sample
// overrides come from the command line flags.
inline ExampleReport run_report(const std::string& name, const Json& params,
                                std::optional<std::uint64_t> seed = {},
                                std::optional<int> samples = {}) {
  const Json& p = params;
  detail::need(p.is_null() || p.is_object(), "params must be a JSON object");

  if (name == "wnp") {
    detail::known_keys(p, name, {"n", "m", "a1", "b1", "a2", "b2"});
    int n = detail::int_param(p, "n", 2);
    int m = detail::int_param(p, "m", 2);
    return report_wnp(n, m, detail::poly_param(p, "a1", "x1", m),
                      detail::poly_param(p, "b1", "x1 * x2", m),
                      detail::poly_param(p, "a2", "x2", m),
                      detail::poly_param(p, "b2", "x1 + x2", m));
  }
  if (name == "wnp_n1") {
    detail::known_keys(p, name, {"m", "a1", "a2"});
    int m = detail::int_param(p, "m", 2);
    return report_wnp_n1(m, detail::poly_param(p, "a1", "x1", m),
                         detail::poly_param(p, "a2", "x2", m));
  }
  if (name == "gen_n1") {
    detail::known_keys(p, name, {"m", "a", "c", "phi", "psi", "b"});
    int m = detail::int_param(p, "m", 2);
    Rational b = 0;
    if (detail::has_param(p, "b")) b = rational_from_json(p.at("b"));
    return report_gen_n1(m, detail::poly_param(p, "a", "x1", m),
                         detail::poly_param(p, "c", "x2", m),
                         detail::poly_param(p, "phi", "x1 + x2", m),
                         detail::poly_param(p, "psi", "(x1 + x2)^2", m), b);
  }
  if (name == "diag") {
    detail::known_keys(p, name, {"n", "m", "a", "b"});
    int m = detail::int_param(p, "m", 2);
    std::vector<ExpPoly> a = detail::poly_list_param(p, "a", {"x1", "x2"}, m);
    std::vector<ExpPoly> b = detail::poly_list_param(p, "b", {"x2", "x1"}, m);
    int n = detail::int_param(p, "n", static_cast<int>(a.size()));
    return report_diag(n, m, a, b);
  }
  if (name == "dF") {
    detail::known_keys(p, name, {"n", "m", "f", "F"});
    int m = detail::int_param(p, "m", 2);
    detail::need(!(detail::has_param(p, "f") && detail::has_param(p, "F")),
                 "params f and F are mutually exclusive");
    if (detail::has_param(p, "F")) {
      const Json& grid = p.at("F");
      detail::need(grid.is_array() && !grid.empty(), "param F must be a square array");
      int n = detail::int_param(p, "n", static_cast<int>(grid.size()));
      detail::need(n == static_cast<int>(grid.size()), "param F must have n rows");
      FormMat f(n, n, m, 0);
      for (int i = 0; i < n; ++i) {
        const Json& row = grid[i];
        detail::need(row.is_array() && static_cast<int>(row.size()) == n,
                     "param F must be a square array");
        for (int j = 0; j < n; ++j) {
          detail::need(row[j].is_string(), "param F entries must be expression strings");
          f.at(i, j).add({}, parse_exppoly(row[j].get<std::string>(), m));
        }
      }
      return report_df(n, m, f);
    }
    int n = detail::int_param(p, "n", 1);
    ExpPoly half = detail::poly_param(p, "f", "x1", m) * rat(1, 2);
    FormMat f(n, n, m, 0);
    for (int i = 0; i < n; ++i) f.at(i, i).add({}, half);
    return report_df(n, m, f);
  }

  const bool suite = name == "theorem_onetoone" || name == "theorem_nh" ||
                     name == "theorem_dual" || name == "prop_wcond" || name == "prop_g2";
  if (suite) {
    detail::known_keys(p, name, {"n", "seed", "samples"});
    int n = detail::int_param(p, "n", 1);
    std::uint64_t sd = seed ? *seed : detail::seed_param(p, "seed", 1);
    int k = samples ? *samples : detail::int_param(p, "samples", 50);
    detail::need(k >= 1, "samples must be at least 1");
    if (name == "theorem_onetoone") return report_theorem_onetoone(n, sd, k);
    if (name == "theorem_nh") return report_theorem_nh(n, sd, k);
    if (name == "theorem_dual") return report_theorem_dual(n, sd, k);
    if (name == "prop_wcond") return report_prop_wcond(n, sd, k);
    return report_prop_g2(n, sd, k);
  }
  throw std::invalid_argument("unknown example: " + name);
}

}  // namespace nnt
