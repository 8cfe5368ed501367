#include "json_io.hpp"

#include <cmath>

#include "smalelab/errors.hpp"

namespace smalelab::io {

namespace {

// JSON has no encoding for non-finite numbers; reports must never carry one.
double finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::runtime_error(std::string("non-finite value in report field ") + what);
  return x;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kLessEq: return "<=";
    case Relation::kGreaterEq: return ">=";
    case Relation::kGreater: return ">";
  }
  return "?";
}

std::vector<Scalar> scalar_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of [re, im] pairs");
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Scalar scalar_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(field + ": expected [re, im] pair of numbers");
  }
  const Scalar z{j[0].get<double>(), j[1].get<double>()};
  if (!is_finite(z)) throw InputError(field + ": value is not finite");
  return z;
}

json to_json(Scalar z) { return json::array({finite(z.real(), "re"), finite(z.imag(), "im")}); }

Poly poly_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field + ": expected an object with \"coeffs\" or \"roots\"");
  const bool has_coeffs = j.contains("coeffs");
  const bool has_roots = j.contains("roots");
  if (has_coeffs == has_roots) throw InputError(field + ": give exactly one of \"coeffs\" or \"roots\"");
  try {
    if (has_roots) {
      const auto roots = scalar_list(j["roots"], field + ".roots");
      if (roots.empty()) throw InputError(field + ".roots: must not be empty");
      return from_roots(roots);
    }
    const auto coeffs = scalar_list(j["coeffs"], field + ".coeffs");
    if (coeffs.empty()) throw InputError(field + ".coeffs: must not be empty");
    return Poly(coeffs);
  } catch (const DomainError& e) {
    throw InputError(field + ": " + e.what());
  }
}

Poly parse_poly(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("poly: invalid JSON: ") + e.what());
  }
  return poly_from_json(j);
}

json to_json(const Poly& p) {
  json j;
  j["degree"] = p.degree();
  j["coeffs"] = json::array();
  for (const auto& c : p.coeffs()) j["coeffs"].push_back(to_json(c));
  if (p.roots()) {
    j["roots"] = json::array();
    for (const auto& r : *p.roots()) j["roots"].push_back(to_json(r));
  }
  return j;
}

CStarElement element_from_json(const json& j, const std::string& field) {
  const auto coords = scalar_list(j, field);
  if (coords.empty()) throw InputError(field + ": element needs at least one coordinate");
  return CStarElement(coords);
}

json to_json(const CStarElement& x) {
  json j = json::array();
  for (const auto& c : x.coords()) j.push_back(to_json(c));
  return j;
}

json to_json(const CStarPoly& p) {
  json j;
  j["degree"] = p.degree();
  j["dim"] = p.dim();
  j["roots"] = json::array();
  for (const auto& r : p.roots()) j["roots"].push_back(to_json(r));
  j["lead"] = to_json(p.lead());
  return j;
}

CStarPoly cstar_poly_from_json(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("roots") || !j["roots"].is_array()) {
    throw InputError(field + ": expected an object with a \"roots\" array");
  }
  std::vector<CStarElement> roots;
  for (std::size_t i = 0; i < j["roots"].size(); ++i) {
    roots.push_back(element_from_json(j["roots"][i], field + ".roots[" + std::to_string(i) + "]"));
  }
  try {
    if (j.contains("lead")) return CStarPoly(std::move(roots), element_from_json(j["lead"], field + ".lead"));
    return CStarPoly(std::move(roots));
  } catch (const DomainError& e) {
    throw InputError(field + ": " + e.what());
  }
}

json to_json(const QuotientWitness& w) {
  return {{"w", to_json(w.w)},
          {"index", w.index},
          {"quotient", finite(w.quotient, "quotient")},
          {"ratio", finite(w.ratio, "ratio")}};
}

json to_json(const Estimate& e, const char* kind) {
  return {{"value", finite(e.value, "estimate")},
          {"kind", kind},
          {"z", to_json(e.z)},
          {"witness", to_json(e.witness)},
          {"evaluations", e.evaluations}};
}

json to_json(const BoundCheck& c) {
  return {{"name", c.name},
          {"relation", relation_name(c.relation)},
          {"bound", finite(c.bound, "bound")},
          {"observed", finite(c.observed, "observed")},
          {"pass", c.pass}};
}

json to_json(const ScalarReport& r) {
  json j;
  j["degree"] = r.degree;
  j["normalized"] = r.normalized;
  if (r.s0) j["s0"] = to_json(*r.s0);
  if (r.ds0) j["ds0"] = to_json(*r.ds0);
  j["s_estimate"] = to_json(r.s_estimate, "lower bound estimate");
  j["ds_estimate"] = to_json(r.ds_estimate, "upper bound estimate");
  j["witnesses"] = json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(to_json(w));
  j["bound_checks"] = json::array();
  for (const auto& c : r.bound_checks) j["bound_checks"].push_back(to_json(c));
  j["all_pass"] = r.all_pass();
  return j;
}

json to_json(const OrbitResult& o) {
  json j{{"w0", to_json(o.w0)},
         {"ratio", finite(o.ratio, "orbit ratio")},
         {"trajectory_len", o.trajectory_len},
         {"verdict", std::string(to_string(o.verdict))},
         {"final_modulus", finite(o.final_modulus, "final_modulus")},
         {"parabolic_capture", o.parabolic_capture}};
  if (o.verdict == OrbitVerdict::kCycled) j["cycle_period"] = o.cycle_period;
  return j;
}

json to_json(const CStarVerdict& v) {
  json j{{"z", to_json(v.z)},
         {"best_witness", to_json(v.best_witness)},
         {"worst_witness", to_json(v.worst_witness)},
         {"min_ratio", finite(v.min_ratio, "min_ratio")},
         {"max_ratio", finite(v.max_ratio, "max_ratio")},
         {"critical_count", v.critical_count},
         {"weak_pass", v.weak_pass},
         {"sharp_pass", v.sharp_pass},
         {"dual_pass", v.dual_pass}};
  if (v.strong_checked) {
    j["strong_weak_pass"] = v.strong_weak_pass;
    j["strong_smale_pass"] = v.strong_smale_pass;
    j["strong_dual_pass"] = v.strong_dual_pass;
    j["strong_smale_margin"] = finite(v.strong_smale_margin, "strong_smale_margin");
    j["strong_dual_margin"] = finite(v.strong_dual_margin, "strong_dual_margin");
  }
  return j;
}

json to_json(const Certificate& c) {
  return {{"poly", to_json(c.poly)},
          {"z", to_json(c.z)},
          {"verdict", to_json(c.verdict)},
          {"violated", c.violated},
          {"recheck_min_ratio", finite(c.recheck_min_ratio, "recheck_min_ratio")},
          {"recheck_max_ratio", finite(c.recheck_max_ratio, "recheck_max_ratio")},
          {"confirmed", c.confirmed}};
}

json to_json(const HuntSummary& s) {
  json j{{"degree", s.degree},
         {"dim", s.dim},
         {"trials", s.trials},
         {"max_min_ratio", finite(s.max_min_ratio, "max_min_ratio")},
         {"min_max_ratio", finite(s.min_max_ratio, "min_max_ratio")},
         {"sharp_bound", static_cast<double>(s.degree - 1) / s.degree},
         {"dual_bound", 1.0 / s.degree},
         {"weak_failures", s.weak_failures},
         {"sharp_failures", s.sharp_failures},
         {"dual_failures", s.dual_failures},
         {"strong_weak_failures", s.strong_weak_failures},
         {"strong_smale_failures", s.strong_smale_failures},
         {"strong_dual_failures", s.strong_dual_failures},
         {"strong_implies_sharp_violations", s.strong_implies_sharp_violations},
         {"unconfirmed", s.unconfirmed}};
  j["certificates"] = json::array();
  for (const auto& c : s.certificates) j["certificates"].push_back(to_json(c));
  return j;
}

json to_json(const SearchState& s) {
  json j;
  j["objective"] = finite(s.objective, "objective");
  j["params"] = s.params;
  j["restarts_done"] = s.restarts_done;
  j["best_poly"] = to_json(s.best_poly);
  j["critical_points"] = json::array();
  for (const auto& c : critical_points_from_params(s.params)) j["critical_points"].push_back(to_json(c));
  j["table"] = json::array();
  for (const auto& row : s.table) {
    j["table"].push_back({{"restart", row.restart},
                          {"objective", finite(row.objective, "restart objective")},
                          {"best_so_far", finite(row.best_so_far, "best_so_far")}});
  }
  return j;
}

}  // namespace smalelab::io
