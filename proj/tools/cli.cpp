#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliff/context_io.hpp"
#include "cliff/diracop.hpp"
#include "cliff/dsl.hpp"
#include "cliff/errors.hpp"
#include "cliff/finsler.hpp"
#include "cliff/format.hpp"
#include "cliff/trace.hpp"

namespace cliff::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::string rep;
  std::string signature;
  bool json = false;
};

std::optional<RepId> cli_rep(const Globals& g) {
  if (g.rep.empty()) return std::nullopt;
  return parse_rep_id(g.rep);
}

Signature cli_signature(const Globals& g) {
  return g.signature.empty() ? Signature{} : Signature::parse(g.signature);
}

ContextFile context_for(const std::string& path, const Globals& g) {
  ContextFile f = load_context(path);
  if (!g.signature.empty()) {
    if (f.explicit_components) {
      throw InvalidInput("--signature conflicts with explicit metric components in " + path);
    }
    f.metric = Metric4::diagonal(Signature::parse(g.signature));
  }
  return f;
}

RealVector4 vec4(const std::vector<double>& v, const char* what) {
  if (v.size() != 4) throw InvalidInput(std::string(what) + " needs exactly 4 values");
  return RealVector4(v[0], v[1], v[2], v[3]);
}

std::string matrix_text(const ComplexMatrix4& m) {
  std::string s;
  for (int r = 0; r < 4; ++r) {
    s += "  [";
    for (int c = 0; c < 4; ++c) {
      if (c) s += ", ";
      s += format_complex(m(r, c));
    }
    s += "]\n";
  }
  return s;
}

std::string real_matrix_text(const RealMatrix4& m) {
  std::string s;
  for (int r = 0; r < 4; ++r) {
    s += "  [";
    for (int c = 0; c < 4; ++c) {
      if (c) s += ", ";
      s += format_double(m(r, c));
    }
    s += "]\n";
  }
  return s;
}

int cmd_eval(const std::string& source, const std::string& ctx_path, const Globals& g,
             std::ostream& out) {
  const ContextFile file = context_for(ctx_path, g);
  const EvalContext ctx = file.build(resolve_rep(cli_rep(g), file));
  const dsl::ExprPtr e = dsl::parse(source);
  const dsl::Value v = dsl::eval_expr(*e, ctx);
  const std::string canonical = dsl::print_canonical(*e);
  if (g.json) {
    json j{{"expression", canonical}, {"rep", std::string(to_string(ctx.rep().rep_id()))}};
    if (const auto* c = std::get_if<complex>(&v)) {
      j["kind"] = "scalar";
      j["value"] = to_json(*c);
    } else {
      j["kind"] = "matrix";
      j["value"] = to_json(std::get<ComplexMatrix4>(v));
    }
    out << j.dump() << "\n";
  } else if (const auto* c = std::get_if<complex>(&v)) {
    out << canonical << " = " << format_complex(*c) << "\n";
  } else {
    out << canonical << " =\n" << matrix_text(std::get<ComplexMatrix4>(v));
  }
  return kExitOk;
}

std::string status_of(const IdentityAuditEntry& e) {
  if (!e.applicable) return e.holds ? "n/a" : "ERROR";
  if (e.holds) return "ok";
  return e.expectation == Expectation::documented_discrepancy ? "documented" : "FAIL";
}

int cmd_verify(const std::string& ctx_path, const AuditOptions& opts, const Globals& g,
               std::ostream& out) {
  const ContextFile file = context_for(ctx_path, g);
  const EvalContext ctx = file.build(resolve_rep(cli_rep(g), file));
  const auto entries = audit_identities(ctx, opts);
  const bool passed = audit_passed(entries);
  if (g.json) {
    for (const auto& e : entries) out << to_json(e).dump() << "\n";
    out << json{{"summary", {{"entries", entries.size()}, {"passed", passed}}}}.dump() << "\n";
  } else {
    for (const auto& e : entries) {
      out << std::left << std::setw(36) << e.identity_id << std::setw(12) << status_of(e)
          << "residual=" << format_double(e.residual) << " tol=" << format_double(e.tolerance)
          << "\n";
      if (!e.holds && !e.convention_note.empty()) out << "    note: " << e.convention_note << "\n";
    }
    out << (passed ? "audit passed" : "audit FAILED") << " (" << entries.size()
        << " entries)\n";
  }
  return passed ? kExitOk : kExitAuditFailure;
}

int cmd_hessian(const std::string& ctx_path, const std::string& form, bool plus,
                const Globals& g, std::ostream& out) {
  const ContextFile file = context_for(ctx_path, g);
  const auto it = file.forms.find(form);
  if (it == file.forms.end()) throw UnknownForm(form);
  const RandersData data(file.metric, it->second);
  FinslerOptions opts;
  opts.rep = resolve_rep(cli_rep(g), file);
  opts.tol_null = file.tol_null;
  const AngularTensorReport r = angular_fundamental_tensor(data, file.y, opts, plus);
  if (g.json) {
    out << to_json(r).dump() << "\n";
  } else {
    out << "fundamental tensor (central differences, h=" << format_double(r.tensor.step)
        << "):\n"
        << real_matrix_text(r.tensor.components) << "closed form:\n"
        << real_matrix_text(r.closed_form) << "max deviation " << format_double(r.max_deviation)
        << ", step-halving change " << format_double(r.tensor.step_halving_change) << "\n"
        << "regular: " << (r.tensor.regular ? "yes" : "no");
    if (r.tensor.condition_value) {
      out << " (g*(A,A) = " << format_double(*r.tensor.condition_value) << ")";
    }
    out << "\n";
  }
  return kExitOk;
}

struct DiracArgs {
  std::string kind = "dirac_mass";
  double m = 1.0;
  std::vector<double> p{1.0, 0.0, 1.0, -1.0};
  std::vector<double> a;
  int levels = 3;
  int base_extent = 8;
};

int cmd_dirac(const DiracArgs& args, const Globals& g, std::ostream& out) {
  if (args.levels < 2 || args.levels > 3) {
    throw InvalidInput("--h-levels must be 2 or 3 (a fourth level needs 64^4 sites)");
  }
  FlatOperator op{parse_operator_kind(args.kind), args.m, std::nullopt};
  if (!args.a.empty()) op.A = OneForm(vec4(args.a, "--A"), "A");
  const GammaRep rep = build_representation(cli_rep(g).value_or(RepId::dirac), cli_signature(g));
  const PlaneWave w{vec4(args.p, "--p"), ComplexVector4(1.0, 0.5, -0.25, 0.75)};
  const ConvergenceReport r = convergence_study(op, w, rep, args.levels, args.base_extent);
  if (g.json) {
    out << to_json(r).dump() << "\n";
  } else {
    for (std::size_t l = 0; l < r.extents.size(); ++l) {
      out << "extent " << r.extents[l] << "  h=" << format_double(r.steps[l])
          << "  max error " << format_double(r.max_errors[l]) << "\n";
    }
    out << "order estimate " << format_double(r.order_estimate) << "\n"
        << "symbol residual " << format_double(r.symbol_residual) << "\n";
  }
  return kExitOk;
}

int cmd_trace_table(const std::vector<int>& indices, const Globals& g, std::ostream& out) {
  const GammaWord w(indices);
  const Signature eta = cli_signature(g);
  const double sym = symbolic_trace(w, eta);
  std::vector<RepId> reps;
  if (auto r = cli_rep(g)) {
    reps.push_back(*r);
  } else {
    reps.assign(kAllReps.begin(), kAllReps.end());
  }
  const std::string formula = w.size() <= 8 ? trace_formula(w.size()) : std::string();
  json numeric = json::object();
  double worst = 0.0;
  for (RepId id : reps) {
    const complex n = numeric_trace(word_matrix(w, build_representation(id, eta)));
    worst = std::max(worst, std::abs(n - complex(sym, 0.0)));
    numeric[std::string(to_string(id))] = to_json(n);
  }
  if (g.json) {
    json j{{"word", w.to_string()},
           {"signature", eta.to_string()},
           {"symbolic", sym},
           {"numeric", numeric},
           {"residual", worst}};
    if (!formula.empty()) j["formula"] = formula;
    out << j.dump() << "\n";
  } else {
    out << "Tr(" << w.to_string() << ") with eta = " << eta.to_string() << "\n";
    if (!formula.empty()) out << "  generic: " << formula << "\n";
    out << "  symbolic: " << format_double(sym) << "\n";
    for (const auto& [name, v] : numeric.items()) {
      out << "  " << name << ": " << format_complex(complex(v[0].get<double>(), v[1].get<double>()))
          << "\n";
    }
    out << "  max residual: " << format_double(worst) << "\n";
  }
  return kExitOk;
}

void report(std::ostream& err, const std::string& kind, const std::string& what,
            const Globals& g) {
  if (g.json) {
    err << json{{"error", kind}, {"message", what}}.dump() << "\n";
  } else {
    err << "cliff: " << kind << ": " << what << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace-algebra toolkit: expression evaluation and identity checks", "cliff"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--rep", g.rep, "gamma representation: dirac, weyl or majorana")
      ->check(CLI::IsMember({"dirac", "weyl", "majorana"}));
  app.add_option("--signature", g.signature, "diagonal metric signature, e.g. -+++");

  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", g.json, "machine-readable output"); };

  std::string expr_src, ctx_path;
  auto* eval = app.add_subcommand("eval", "evaluate an expression at a context");
  eval->add_option("expression", expr_src, "expression, e.g. \"Tr(M*Ft[A])\"")->required();
  eval->add_option("-c,--context", ctx_path, "context JSON file")->required();
  json_flag(eval);

  AuditOptions audit;
  auto* verify = app.add_subcommand("verify", "audit every registered identity");
  verify->add_option("-c,--context", ctx_path, "context JSON file")->required();
  verify->add_option("--form", audit.form_name, "one-form playing the role of A");
  verify->add_option("--mass", audit.mass, "m in the Gamma element")->check(CLI::PositiveNumber);
  verify->add_option("--sequence-length", audit.sequence_len, "null-limit sequence length")
      ->check(CLI::Range(4, 64));
  json_flag(verify);

  std::string form = "A";
  bool plus = false;
  auto* hessian = app.add_subcommand("hessian", "fundamental tensor of the angular Lagrangian");
  hessian->add_option("-c,--context", ctx_path, "context JSON file")->required();
  hessian->add_option("--form", form, "one-form name");
  hessian->add_flag("--plus", plus, "use g + (A.y)^2 instead of g - (A.y)^2");
  json_flag(hessian);

  DiracArgs dirac;
  auto* dcheck = app.add_subcommand("dirac-check", "finite-difference check of a flat operator");
  dcheck->add_option("--kind", dirac.kind, "dirac_mass, dirac_A or u1_covariant");
  dcheck->add_option("--m", dirac.m, "mass");
  dcheck->add_option("--p", dirac.p, "momentum covector (4 integers for a periodic wave)")
      ->expected(4);
  dcheck->add_option("--A", dirac.a, "one-form components")->expected(4);
  dcheck->add_option("--h-levels", dirac.levels, "number of lattice refinements");
  dcheck->add_option("--base-extent", dirac.base_extent, "points per axis on the coarsest lattice");
  json_flag(dcheck);

  std::vector<int> word;
  auto* table = app.add_subcommand("trace-table", "symbolic and numeric trace of a gamma word");
  table->add_option("indices", word, "indices in 1..4")->required();
  json_flag(table);

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(expr_src, ctx_path, g, out);
    if (verify->parsed()) return cmd_verify(ctx_path, audit, g, out);
    if (hessian->parsed()) return cmd_hessian(ctx_path, form, plus, g, out);
    if (dcheck->parsed()) return cmd_dirac(dirac, g, out);
    if (table->parsed()) return cmd_trace_table(word, g, out);
  } catch (const SyntaxError& e) {
    report(err, "SyntaxError", e.what(), g);
    return kExitUsage;
  } catch (const EvalError& e) {
    report(err, e.kind(), e.what(), g);
    return e.kind() == "NumericalBreakdown" ? kExitBreakdown : kExitUsage;
  } catch (const NumericalBreakdown& e) {
    report(err, "NumericalBreakdown", e.what(), g);
    return kExitBreakdown;
  } catch (const Error& e) {
    report(err, "Error", e.what(), g);
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cliff::cli
