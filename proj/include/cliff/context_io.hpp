#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "cliff/algebra.hpp"
#include "cliff/diracop.hpp"
#include "cliff/finsler.hpp"
#include "cliff/trace.hpp"

namespace cliff {

/// Parsed context file; rep selection is resolved separately.
struct ContextFile {
  Metric4 metric = Metric4::diagonal(Signature{});
  bool explicit_components = false;  // metric.components was given
  std::map<std::string, OneForm> forms;
  Tangent y;
  std::optional<RepId> rep;
  double tol_null = kDefaultNullTolerance;

  /// `rep` overrides whatever the file selected.
  EvalContext build(std::optional<RepId> rep_override = std::nullopt) const;
};

/// Schema:
///   {"metric": {"signature": "-+++" | [-1,1,1,1], "components": [[..4]..4]},
///    "forms": {"A": [a1,a2,a3,a4]}, "y": [y1,y2,y3,y4], "rep": "dirac",
///    "tolerances": {"null": 1e-12}}
/// Every key is optional except y. Throws InvalidInput.
ContextFile parse_context(const nlohmann::json& j);
ContextFile parse_context_text(const std::string& text);
ContextFile load_context(const std::filesystem::path& path);

/// Value of CF_REP, if set. Throws InvalidInput for unknown names.
std::optional<RepId> rep_from_env();

/// Command-line choice, then CF_REP, then the file, then dirac.
RepId resolve_rep(std::optional<RepId> cli, const ContextFile& file);

nlohmann::json to_json(const complex& c);
nlohmann::json to_json(const ComplexMatrix4& m);
nlohmann::json to_json(const RealMatrix4& m);
nlohmann::json to_json(const RealVector4& v);
nlohmann::json to_json(const GammaRep& rep);
nlohmann::json to_json(const TraceReport& r);
nlohmann::json to_json(const IdentityAuditEntry& e);
nlohmann::json to_json(const AngularTensorReport& r);
nlohmann::json to_json(const ConvergenceReport& r);

}  // namespace cliff
