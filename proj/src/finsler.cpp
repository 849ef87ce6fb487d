#include "cliff/finsler.hpp"

#include <algorithm>
#include <cmath>

#include "cliff/errors.hpp"
#include "cliff/format.hpp"
#include "cliff/trace.hpp"

namespace cliff {

RandersData::RandersData(const Metric4& metric, const OneForm& a)
    : metric_(metric), form_(a) {
  if (!metric_.signature().is_lorentzian()) {
    throw InvalidInput("Randers data needs a Lorentzian metric, got signature " +
                       metric_.signature().to_string());
  }
  if (!form_.components.allFinite()) throw InvalidInput("one-form is not finite");
  if (form_.name.empty()) form_.name = "A";
}

EvalContext make_context(const RandersData& d, const Tangent& y,
                         const FinslerOptions& opts) {
  return EvalContext(d.metric(), {{d.form().name, d.form()}}, y, opts.rep, opts.tol_null);
}

namespace {

double real_trace(const AlgebraElement& a, const EvalContext& ctx) {
  return numeric_trace(evaluate(a, ctx)).real();
}

AlgebraElement m_gen(bool tilde) {
  return AlgebraElement(tilde ? Generator::Mt() : Generator::M());
}

AlgebraElement f_gen(bool tilde, const std::string& form) {
  return AlgebraElement(tilde ? Generator::Ft({form}) : Generator::F({form}));
}

AlgebraElement pairing_element(const TracePairing& p, const std::string& form) {
  return m_gen(p.m_tilde) * f_gen(p.f_tilde, form);
}

const TracePairing& branch_pairing(CausalCharacter c) {
  return c == CausalCharacter::timelike ? kTimelikePairing : kSpacelikePairing;
}

}  // namespace

double randers_direct(const RandersData& d, const Tangent& y, double tol_null) {
  const double g = norm_squared(d.metric(), y);
  const double ay = pair(d.form(), y);
  if (std::abs(g) <= tol_null) return ay;
  return std::sqrt(std::abs(g)) + ay;
}

PathComparison randers_norm(const RandersData& d, const Tangent& y,
                            const FinslerOptions& opts) {
  PathComparison out;
  out.branch = causal_character(d.metric(), y, opts.tol_null);
  out.reference = randers_direct(d, y, opts.tol_null);
  if (out.branch == CausalCharacter::null) {
    out.value = pair(d.form(), y);
  } else {
    const EvalContext ctx = make_context(d, y, opts);
    const TracePairing& p = branch_pairing(out.branch);
    out.value = p.prefactor * real_trace(pairing_element(p, d.form().name), ctx);
  }
  out.residual = std::abs(out.value - out.reference);
  return out;
}

PathComparison angular_lagrangian(const RandersData& d, const Tangent& y,
                                  const FinslerOptions& opts, bool plus) {
  PathComparison out;
  out.branch = causal_character(d.metric(), y, opts.tol_null);
  const EvalContext ctx = make_context(d, y, opts);
  const std::string& name = d.form().name;
  out.value = 0.25 * real_trace(f_gen(false, name) * f_gen(!plus, name), ctx);
  const double ay = pair(d.form(), y);
  out.reference = norm_squared(d.metric(), y) + (plus ? ay * ay : -ay * ay);
  out.residual = std::abs(out.value - out.reference);
  return out;
}

namespace {

// The trace approaches its limit like |g|^(1/2) ~ eps^(1/2), so the last step
// sits a few ulps above the null vector.
double approach_step(int n, int sequence_len) {
  return std::pow(10.0, -3.0 - 12.0 * n / sequence_len);
}

}  // namespace

std::vector<Tangent> null_approach_sequence(const Metric4& m, const Tangent& y_null,
                                            int sequence_len, int side) {
  RealVector4 v = dual_metric(m).components() * y_null.components;
  const double yscale = y_null.components.cwiseAbs().maxCoeff();
  const double vscale = v.cwiseAbs().maxCoeff();
  if (vscale > 0.0) v *= yscale / vscale;
  std::vector<Tangent> seq;
  seq.reserve(static_cast<std::size_t>(sequence_len));
  for (int n = 1; n <= sequence_len; ++n) {
    const double eps = approach_step(n, sequence_len);
    seq.emplace_back(y_null.components + side * eps * v);
  }
  return seq;
}

SecondOrderReport second_order_lagrangian(const RandersData& d, const Tangent& y,
                                          const FinslerOptions& opts) {
  SecondOrderReport out;
  out.branch = causal_character(d.metric(), y, opts.tol_null);
  const double ay = pair(d.form(), y);
  const double g = norm_squared(d.metric(), y);

  Tangent at = y;
  CausalCharacter trace_branch = out.branch;
  FinslerOptions trace_opts = opts;
  if (out.branch == CausalCharacter::null) {
    out.direct = ay * ay;
    at = null_approach_sequence(d.metric(), y, 12, -1).back();
    trace_branch = CausalCharacter::timelike;
    trace_opts.tol_null = 0.0;
  } else {
    const double s = std::sqrt(std::abs(g)) + ay;
    out.direct = s * s;
  }

  const EvalContext ctx = make_context(d, at, trace_opts);
  const TracePairing& p = branch_pairing(trace_branch);
  const AlgebraElement factor = f_gen(p.f_tilde, d.form().name);
  const AlgebraElement m = m_gen(p.m_tilde);
  const double tr = real_trace(m * factor, ctx);
  out.squared_trace = tr * tr / 16.0;
  out.quartic_trace = 0.25 * real_trace(m * m * factor * factor, ctx);
  return out;
}

NullLimitReport null_limit_check(const RandersData& d, const Tangent& y_null,
                                 int sequence_len, const FinslerOptions& opts) {
  if (sequence_len < 4) throw InvalidInput("null-limit sequences need at least 4 terms");
  const double g = norm_squared(d.metric(), y_null);
  if (std::abs(g) > opts.tol_null) {
    throw NotNull("vector is not null: g(y,y) = " + format_double(g));
  }
  if (y_null.components.cwiseAbs().maxCoeff() == 0.0) {
    throw NotNull("the zero vector has no approaching sequence");
  }

  NullLimitReport r;
  const double ay = pair(d.form(), y_null);
  r.expected_trace_limit = 4.0 * ay;
  r.randers_at_null = ay;

  FinslerOptions strict = opts;
  strict.tol_null = 0.0;
  const std::string& name = d.form().name;
  const AlgebraElement m_f = m_gen(false) * f_gen(false, name);
  const AlgebraElement m_ft = m_gen(false) * f_gen(true, name);

  for (int n = 1; n <= sequence_len; ++n) {
    r.steps.push_back(approach_step(n, sequence_len));
  }
  for (int side : {-1, +1}) {
    auto& traces = side < 0 ? r.timelike_traces : r.spacelike_traces;
    auto& tilde = side < 0 ? r.timelike_tilde : r.spacelike_tilde;
    auto& glued = side < 0 ? r.timelike_randers : r.spacelike_randers;
    for (const Tangent& yn : null_approach_sequence(d.metric(), y_null, sequence_len, side)) {
      const EvalContext ctx = make_context(d, yn, strict);
      traces.push_back(real_trace(m_f, ctx));
      tilde.push_back(real_trace(m_ft, ctx));
      glued.push_back(randers_norm(d, yn, strict).value);
    }
  }
  r.timelike_limit = r.timelike_traces.back();
  r.spacelike_limit = r.spacelike_traces.back();

  auto tail_ok = [&](const std::vector<double>& traces) {
    const std::size_t n = traces.size();
    for (std::size_t i = n - 3; i < n; ++i) {
      if (!(std::abs(traces[i] - r.expected_trace_limit) <
            std::abs(traces[i - 1] - r.expected_trace_limit))) {
        return false;
      }
    }
    return true;
  };
  r.tail_decreasing = tail_ok(r.timelike_traces) && tail_ok(r.spacelike_traces);
  r.final_residual = std::max(std::abs(r.timelike_limit - r.expected_trace_limit),
                              std::abs(r.spacelike_limit - r.expected_trace_limit));
  r.continuity_residual = std::max(std::abs(r.timelike_randers.back() - ay),
                                   std::abs(r.spacelike_randers.back() - ay));
  return r;
}

namespace {

// Returns (1/2) d^2 L. Off-diagonal entries nest a central first derivative
// (step h/2) inside an outer central difference (step h), so H_ij and H_ji use
// different stencils and agree only where the mixed partials commute.
RealMatrix4 central_hessian(const ScalarFunction& L, const RealVector4& y0, double h,
                            double& asymmetry) {
  RealMatrix4 hess = RealMatrix4::Zero();
  const double l0 = L(Tangent(y0));
  auto shifted = [&](RealVector4 p, int i, double by) {
    p[i] += by;
    return p;
  };
  auto inner = [&](const RealVector4& p, int j) {
    return (L(Tangent(shifted(p, j, 0.5 * h))) - L(Tangent(shifted(p, j, -0.5 * h)))) / h;
  };
  for (int i = 0; i < 4; ++i) {
    hess(i, i) = 0.5 * (L(Tangent(shifted(y0, i, h))) - 2.0 * l0 + L(Tangent(shifted(y0, i, -h)))) /
                 (h * h);
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      hess(i, j) = 0.5 * (inner(shifted(y0, i, h), j) - inner(shifted(y0, i, -h), j)) / (2.0 * h);
    }
  }
  asymmetry = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double diff = std::abs(hess(i, j) - hess(j, i));
      asymmetry = std::isnan(diff) ? diff : std::max(asymmetry, diff);
    }
  }
  return 0.5 * (hess + hess.transpose());
}

}  // namespace

FundamentalTensor fundamental_tensor(const ScalarFunction& lagrangian, const Tangent& y0,
                                     const FdOptions& opts) {
  FundamentalTensor out;
  out.step = opts.relative_step * std::max(1.0, y0.components.cwiseAbs().maxCoeff());
  double asym_h = 0.0, asym_half = 0.0;
  out.components = central_hessian(lagrangian, y0.components, out.step, asym_h);
  const RealMatrix4 half = central_hessian(lagrangian, y0.components, 0.5 * out.step, asym_half);
  out.asymmetry = std::max(asym_h, asym_half);
  if (!(out.asymmetry <= opts.asymmetry_limit) || !out.components.allFinite()) {
    throw NumericalBreakdown("finite-difference Hessian is not symmetric (asymmetry " +
                             format_double(out.asymmetry) + ")");
  }
  out.step_halving_change = (out.components - half).cwiseAbs().maxCoeff();
  out.regular = !is_degenerate(out.components);
  return out;
}

AngularTensorReport angular_fundamental_tensor(const RandersData& d, const Tangent& y0,
                                               const FinslerOptions& opts, bool plus,
                                               const FdOptions& fd) {
  AngularTensorReport r;
  auto lagrangian = [&](const Tangent& y) {
    return angular_lagrangian(d, y, opts, plus).value;
  };
  r.tensor = fundamental_tensor(lagrangian, y0, fd);
  const RealVector4& a = d.form().components;
  r.closed_form = d.metric().components() +
                  (plus ? 1.0 : -1.0) * (a * a.transpose());
  r.max_deviation = (r.tensor.components - r.closed_form).cwiseAbs().maxCoeff();
  const double cond = dual_norm_squared(d.metric(), d.form());
  r.tensor.condition_value = cond;
  r.dual_norm_condition = std::abs(cond) < 1.0;
  r.printed_y_condition_value = std::abs(norm_squared(d.metric(), y0));
  return r;
}

}  // namespace cliff
