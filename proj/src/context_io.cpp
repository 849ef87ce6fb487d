#include "cliff/context_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cliff/errors.hpp"

namespace cliff {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InvalidInput(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(where + " must be finite");
  return v;
}

RealVector4 vector4(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw InvalidInput(where + " must be an array of 4 numbers");
  RealVector4 v;
  for (int i = 0; i < 4; ++i) v[i] = number(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

Signature signature(const json& j) {
  if (j.is_string()) return Signature::parse(j.get<std::string>());
  if (j.is_array() && j.size() == 4) {
    std::array<int, 4> s{};
    for (int i = 0; i < 4; ++i) {
      if (!j[i].is_number_integer()) throw InvalidInput("signature entries must be +1 or -1");
      s[i] = j[i].get<int>();
    }
    return Signature(s);
  }
  throw InvalidInput("signature must be a string like \"-+++\" or an array of 4 signs");
}

Metric4 metric(const json& j, const json& top) {
  if (!j.is_object()) throw InvalidInput("metric must be an object");
  std::optional<Signature> sig;
  if (j.contains("signature")) {
    sig = signature(j["signature"]);
  } else if (top.contains("signature")) {
    sig = signature(top["signature"]);
  }
  if (!j.contains("components")) return Metric4::diagonal(sig.value_or(Signature{}));
  const json& c = j["components"];
  if (!c.is_array() || c.size() != 4) throw InvalidInput("metric.components must be 4 rows");
  RealMatrix4 g;
  for (int r = 0; r < 4; ++r) {
    g.row(r) = vector4(c[r], "metric.components[" + std::to_string(r) + "]").transpose();
  }
  return sig ? Metric4::from_components(g, *sig) : Metric4::from_components(g);
}

}  // namespace

EvalContext ContextFile::build(std::optional<RepId> rep_override) const {
  return EvalContext(metric, forms, y, rep_override.value_or(rep.value_or(RepId::dirac)),
                     tol_null);
}

ContextFile parse_context(const json& j) {
  if (!j.is_object()) throw InvalidInput("context must be a JSON object");
  ContextFile f;
  if (j.contains("metric")) {
    f.metric = metric(j["metric"], j);
    f.explicit_components = j["metric"].contains("components");
  } else if (j.contains("signature")) {
    f.metric = Metric4::diagonal(signature(j["signature"]));
  }
  if (j.contains("forms")) {
    const json& forms = j["forms"];
    if (!forms.is_object()) throw InvalidInput("forms must be an object of name -> 4 numbers");
    for (const auto& [name, value] : forms.items()) {
      f.forms.emplace(name, OneForm(vector4(value, "forms." + name), name));
    }
  }
  if (!j.contains("y")) throw InvalidInput("context needs a tangent vector y");
  f.y = Tangent(vector4(j["y"], "y"));
  if (j.contains("rep")) {
    if (!j["rep"].is_string()) throw InvalidInput("rep must be a string");
    f.rep = parse_rep_id(j["rep"].get<std::string>());
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw InvalidInput("tolerances must be an object");
    if (t.contains("null")) {
      f.tol_null = number(t["null"], "tolerances.null");
      if (f.tol_null < 0.0) throw InvalidInput("tolerances.null must be >= 0");
    }
  }
  return f;
}

ContextFile parse_context_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("context is not valid JSON: ") + e.what());
  }
  return parse_context(j);
}

ContextFile load_context(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open context file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_context_text(ss.str());
}

std::optional<RepId> rep_from_env() {
  const char* v = std::getenv("CF_REP");
  if (!v || !*v) return std::nullopt;
  return parse_rep_id(v);
}

RepId resolve_rep(std::optional<RepId> cli, const ContextFile& file) {
  if (cli) return *cli;
  if (auto env = rep_from_env()) return *env;
  return file.rep.value_or(RepId::dirac);
}

json to_json(const complex& c) { return json::array({c.real(), c.imag()}); }

json to_json(const ComplexMatrix4& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const RealMatrix4& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) rows.push_back(to_json(RealVector4(m.row(r).transpose())));
  return rows;
}

json to_json(const RealVector4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

json to_json(const GammaRep& rep) {
  json gammas = json::array();
  for (int i = 0; i < 4; ++i) gammas.push_back(to_json(rep[i]));
  return {{"rep", std::string(to_string(rep.rep_id()))},
          {"signature", rep.signature().to_string()},
          {"clifford_residual", rep.clifford_residual()},
          {"gammas", gammas}};
}

json to_json(const TraceReport& r) {
  json j{{"expression", r.expression}, {"numeric", to_json(r.numeric)}, {"residual", r.residual}};
  j["symbolic"] = r.symbolic ? to_json(*r.symbolic) : json(nullptr);
  return j;
}

json to_json(const IdentityAuditEntry& e) {
  return {{"identity_id", e.identity_id},
          {"lhs", e.lhs},
          {"rhs", e.rhs},
          {"residual", e.residual},
          {"tolerance", e.tolerance},
          {"holds", e.holds},
          {"applicable", e.applicable},
          {"expectation", e.expectation == Expectation::holds ? "holds" : "documented_discrepancy"},
          {"evaluated_at", e.evaluated_at},
          {"convention_note", e.convention_note}};
}

json to_json(const AngularTensorReport& r) {
  json j{{"tensor", to_json(r.tensor.components)},
         {"closed_form", to_json(r.closed_form)},
         {"max_deviation", r.max_deviation},
         {"regular", r.tensor.regular},
         {"step", r.tensor.step},
         {"step_halving_change", r.tensor.step_halving_change},
         {"asymmetry", r.tensor.asymmetry},
         {"dual_norm_condition", r.dual_norm_condition},
         {"printed_y_condition_value", r.printed_y_condition_value}};
  j["condition_value"] = r.tensor.condition_value ? json(*r.tensor.condition_value) : json(nullptr);
  return j;
}

json to_json(const ConvergenceReport& r) {
  return {{"order_estimate", r.order_estimate},
          {"max_errors", r.max_errors},
          {"symbol_residual", r.symbol_residual},
          {"extents", r.extents},
          {"steps", r.steps},
          {"orders", r.orders}};
}

}  // namespace cliff
