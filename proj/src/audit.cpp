#include <cmath>
#include <functional>
#include <optional>

#include <Eigen/LU>

#include "cliff/diracop.hpp"
#include "cliff/errors.hpp"
#include "cliff/finsler.hpp"
#include "cliff/format.hpp"
#include "cliff/trace.hpp"

namespace cliff {

namespace {

constexpr double kAlgebraicTol = 1e-10;
constexpr double kHessianTol = 1e-9;
constexpr double kLimitTol = 1e-6;

struct Points {
  std::optional<Tangent> timelike, spacelike, null, nonnull;
};

std::string describe(const Tangent& y) {
  std::string s = "y=(";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ',';
    s += format_double(y[i]);
  }
  return s + ")";
}

// Points of each causal character: the context's own y where it fits,
// otherwise fixed combinations of frame vectors.
Points sample_points(const EvalContext& ctx) {
  Points p;
  const Frame4& f = ctx.frame();
  int neg = -1, pos = -1;
  for (int a = 0; a < 4; ++a) {
    if (f.eta[a] < 0 && neg < 0) neg = a;
    if (f.eta[a] > 0 && pos < 0) pos = a;
  }
  auto from_frame = [&](double tn, double sp) {
    RealVector4 c = RealVector4::Zero();
    c[neg] = tn;
    c[pos] = sp;
    return Tangent(f.basis * c);
  };
  if (neg >= 0 && pos >= 0) {
    p.timelike = from_frame(1.3, 0.4);
    p.spacelike = from_frame(0.4, 1.3);
    p.null = from_frame(1.0, 1.0);
  } else if (neg >= 0) {
    RealVector4 c = RealVector4::Zero();
    c[neg] = 1.0;
    p.timelike = Tangent(f.basis * c);
  } else {
    RealVector4 c = RealVector4::Zero();
    c[pos] = 1.0;
    p.spacelike = Tangent(f.basis * c);
  }
  switch (causal_character(ctx.metric(), ctx.y(), ctx.tol_null())) {
    case CausalCharacter::timelike: p.timelike = ctx.y(); break;
    case CausalCharacter::spacelike: p.spacelike = ctx.y(); break;
    case CausalCharacter::null: p.null = ctx.y(); break;
  }
  if (causal_character(ctx.metric(), ctx.y(), ctx.tol_null()) != CausalCharacter::null) {
    p.nonnull = ctx.y();
  } else {
    p.nonnull = p.timelike ? p.timelike : p.spacelike;
  }
  return p;
}

class Auditor {
 public:
  Auditor(const EvalContext& ctx, const AuditOptions& opts)
      : ctx_(ctx), opts_(opts), points_(sample_points(ctx)) {}

  std::vector<IdentityAuditEntry> run();

 private:
  using Body = std::function<void(IdentityAuditEntry&)>;

  void add(std::string id, Expectation exp, double tol, const std::optional<Tangent>& at,
           std::string note, const Body& body);

  double tr(const AlgebraElement& a, const Tangent& y, double tol_null) const {
    return numeric_trace(evaluate(a, ctx_.with_y(y).with_tol_null(tol_null))).real();
  }
  double tr(const AlgebraElement& a, const Tangent& y) const {
    return tr(a, y, ctx_.tol_null());
  }
  double g(const Tangent& y) const { return norm_squared(ctx_.metric(), y); }
  double ay(const Tangent& y) const { return pair(ctx_.form(opts_.form_name), y); }
  double sign(const Tangent& y) const { return g(y) < 0.0 ? -1.0 : 1.0; }

  const EvalContext& ctx_;
  const AuditOptions& opts_;
  Points points_;
  std::vector<IdentityAuditEntry> out_;
};

void Auditor::add(std::string id, Expectation exp, double tol,
                  const std::optional<Tangent>& at, std::string note, const Body& body) {
  IdentityAuditEntry e;
  e.identity_id = std::move(id);
  e.expectation = exp;
  e.tolerance = tol;
  e.convention_note = std::move(note);
  if (!at) {
    e.applicable = false;
    e.holds = true;
    e.evaluated_at = "n/a";
    e.convention_note += " [not applicable: signature has no vector of the required type]";
    out_.push_back(std::move(e));
    return;
  }
  e.evaluated_at = describe(*at);
  try {
    body(e);
    e.residual = std::abs(e.lhs - e.rhs);
    e.holds = e.residual <= e.tolerance * std::max(1.0, std::abs(e.rhs));
  } catch (const Error& err) {
    e.applicable = false;
    e.holds = false;
    e.convention_note += std::string(" [evaluation failed: ") + err.what() + "]";
  }
  out_.push_back(std::move(e));
}

std::vector<IdentityAuditEntry> Auditor::run() {
  const std::string& a = opts_.form_name;
  const AlgebraElement M(Generator::M()), Mt(Generator::Mt());
  const AlgebraElement F(Generator::F({a})), Ft(Generator::Ft({a}));
  const GammaRep& rep = ctx_.rep();
  const Signature& eta = ctx_.frame().eta;
  const auto& H = Expectation::holds;
  const auto& D = Expectation::documented_discrepancy;
  const std::optional<Tangent> any = ctx_.y();

  // Dirac trace rules in the frame.
  add("trace.rank1", H, kAlgebraicTol, any, "Tr(gamma_i) = 0", [&](auto& e) {
    for (int i = 0; i < 4; ++i) e.lhs = std::max(e.lhs, std::abs(numeric_trace(rep[i])));
  });
  add("trace.rank2", H, kAlgebraicTol, any, "Tr(gamma_i gamma_j) = 4 eta_ij, max deviation",
      [&](auto& e) {
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            const double want = i == j ? 4.0 * eta[i] : 0.0;
            e.lhs = std::max(e.lhs, std::abs(numeric_trace(rep[i] * rep[j]) - want));
          }
      });
  add("trace.rank3", H, kAlgebraicTol, any, "Tr(gamma_i gamma_j gamma_k) = 0", [&](auto& e) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          e.lhs = std::max(e.lhs, std::abs(numeric_trace(rep[i] * rep[j] * rep[k])));
  });
  add("trace.rank4", H, kAlgebraicTol, any,
      "Tr(g_i g_j g_k g_l) = 4(eta_ij eta_kl - eta_ik eta_jl + eta_il eta_jk), max deviation",
      [&](auto& e) {
        auto et = [&](int x, int y) { return x == y ? double(eta[x]) : 0.0; };
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
              for (int l = 0; l < 4; ++l) {
                const double want =
                    4.0 * (et(i, j) * et(k, l) - et(i, k) * et(j, l) + et(i, l) * et(j, k));
                const complex got = numeric_trace(rep[i] * rep[j] * rep[k] * rep[l]);
                e.lhs = std::max(e.lhs, std::abs(got - want));
              }
      });

  // Norms from M.
  auto unit = [&](const std::optional<Tangent>& y) -> std::optional<Tangent> {
    if (!y) return y;
    return Tangent(y->components / std::sqrt(std::abs(g(*y))));
  };
  const auto& nn = points_.nonnull;
  add("norm.mm_tilde.unit_shell", H, kAlgebraicTol, unit(nn),
      "Tr(M Mt) + 4 = -+4|g(y,y)|^{1/2}, minus for timelike; evaluated at y/|g(y,y)|^{1/2}",
      [&](auto& e) {
        const Tangent y = *unit(nn);
        e.lhs = tr(M * Mt, y) + 4.0;
        e.rhs = sign(y) * 4.0 * std::sqrt(std::abs(g(y)));
      });
  add("norm.mm_tilde.raw", D, kAlgebraicTol, nn,
      "Tr(M Mt) + 4 is 0-homogeneous in y while 4|g|^{1/2} is 1-homogeneous; equal only "
      "on the unit shell |g(y,y)| = 1",
      [&](auto& e) {
        e.lhs = tr(M * Mt, *nn) + 4.0;
        e.rhs = sign(*nn) * 4.0 * std::sqrt(std::abs(g(*nn)));
      });
  add("norm.mm.unit_shell", H, kAlgebraicTol, unit(nn),
      "Tr(M M) - 4 = -+4|g(y,y)|^{1/2}, minus for timelike; evaluated at y/|g(y,y)|^{1/2}",
      [&](auto& e) {
        const Tangent y = *unit(nn);
        e.lhs = tr(M * M, y) - 4.0;
        e.rhs = sign(y) * 4.0 * std::sqrt(std::abs(g(y)));
      });
  add("norm.mm.raw", D, kAlgebraicTol, nn,
      "Tr(M M) - 4 is 0-homogeneous; equal to -+4|g|^{1/2} only on the unit shell",
      [&](auto& e) {
        e.lhs = tr(M * M, *nn) - 4.0;
        e.rhs = sign(*nn) * 4.0 * std::sqrt(std::abs(g(*nn)));
      });

  const auto& nul = points_.null;
  auto side_points = [&](int side) {
    return null_approach_sequence(ctx_.metric(), *nul, opts_.sequence_len, side);
  };
  add("norm.null_limit.mm", D, kLimitTol, nul,
      "1/2 Tr(M M) - 1 -> 0 printed; actual one-sided limits are -1 (timelike side) and 3 "
      "(spacelike side); lhs is the timelike side",
      [&](auto& e) {
        e.lhs = 0.5 * tr(M * M, side_points(-1).back(), 0.0) - 1.0;
        const double other = 0.5 * tr(M * M, side_points(+1).back(), 0.0) - 1.0;
        e.convention_note += "; spacelike side " + format_double(other);
        e.rhs = 0.0;
      });
  add("norm.null_limit.mm_tilde", D, kLimitTol, nul,
      "1/2 Tr(M Mt) - 1 -> 0 printed; actual one-sided limits are -5 (timelike side) and -1 "
      "(spacelike side); lhs is the timelike side",
      [&](auto& e) {
        e.lhs = 0.5 * tr(M * Mt, side_points(-1).back(), 0.0) - 1.0;
        const double other = 0.5 * tr(M * Mt, side_points(+1).back(), 0.0) - 1.0;
        e.convention_note += "; spacelike side " + format_double(other);
        e.rhs = 0.0;
      });

  // Trace pairings.
  add("pairing.m_f", H, kAlgebraicTol, nn,
      "Tr(M F[A]) = 4(-+|g(y,y)|^{1/2} + A.y), minus for timelike; holds as stated",
      [&](auto& e) {
        e.lhs = tr(M * F, *nn);
        e.rhs = 4.0 * (sign(*nn) * std::sqrt(std::abs(g(*nn))) + ay(*nn));
      });
  add("pairing.m_ft", H, kAlgebraicTol, nn,
      "Tr(M Ft[A]) = 4(-+|g(y,y)|^{1/2} - A.y); stated for g<0, holds on both sides",
      [&](auto& e) {
        e.lhs = tr(M * Ft, *nn);
        e.rhs = 4.0 * (sign(*nn) * std::sqrt(std::abs(g(*nn))) - ay(*nn));
      });
  add("pairing.proof_first_factor", D, kAlgebraicTol, nn,
      "derivation writes the first factor as slash(y)/|g|^{1/2} + I, i.e. Mt; Tr(Mt F[A]) "
      "= 4(-+|g|^{1/2} - A.y) differs from the stated 4(-+|g|^{1/2} + A.y) by the sign of A.y",
      [&](auto& e) {
        e.lhs = tr(Mt * F, *nn);
        e.rhs = 4.0 * (sign(*nn) * std::sqrt(std::abs(g(*nn))) + ay(*nn));
      });

  // Angular metric structure.
  add("angular.minus", H, kAlgebraicTol, any, "Tr(F[A] Ft[A]) = 4(g(y,y) - (A.y)^2)",
      [&](auto& e) {
        e.lhs = tr(F * Ft, ctx_.y(), 0.0);
        e.rhs = 4.0 * (g(ctx_.y()) - ay(ctx_.y()) * ay(ctx_.y()));
      });
  add("angular.plus", H, kAlgebraicTol, any, "Tr(F[A] F[A]) = 4(g(y,y) + (A.y)^2)",
      [&](auto& e) {
        e.lhs = tr(F * F, ctx_.y(), 0.0);
        e.rhs = 4.0 * (g(ctx_.y()) + ay(ctx_.y()) * ay(ctx_.y()));
      });
  add("angular.fundamental_tensor", H, kHessianTol, any,
      "1/2 Hessian of 1/4 Tr(F[A] Ft[A]) = g_ij - A_i A_j; lhs is the max entry deviation",
      [&](auto& e) {
        auto L = [&](const Tangent& y) { return 0.25 * tr(F * Ft, y, 0.0); };
        const FundamentalTensor t = fundamental_tensor(L, ctx_.y());
        const RealVector4& A = ctx_.form(a).components;
        const RealMatrix4 closed = ctx_.metric().components() - A * A.transpose();
        e.lhs = (t.components - closed).cwiseAbs().maxCoeff();
        e.rhs = 0.0;
      });
  add("angular.regularity", H, kAlgebraicTol, any,
      "det(g - A A^T)/det(g) = 1 - g*(A,A): |g*(A,A)| < 1 keeps the tensor regular; the "
      "printed condition |g(y,y)| < 1 constrains y, not A, and is reported only",
      [&](auto& e) {
        const RealVector4& A = ctx_.form(a).components;
        const RealMatrix4 G = ctx_.metric().components();
        e.lhs = (G - A * A.transpose()).determinant() / G.determinant();
        e.rhs = 1.0 - dual_norm_squared(ctx_.metric(), ctx_.form(a));
        e.convention_note += "; g*(A,A) = " + format_double(1.0 - e.rhs) +
                             ", |g(y,y)| = " + format_double(std::abs(g(ctx_.y())));
      });

  // Randers structure.
  const auto& tl = points_.timelike;
  const auto& sl = points_.spacelike;
  add("randers.spinor_form.timelike", D, kAlgebraicTol, tl,
      "-1/4 Tr(M F[A]) = (-g(y,y))^{1/2} + A.y printed; actual value (-g)^{1/2} - A.y",
      [&](auto& e) {
        e.lhs = -0.25 * tr(M * F, *tl);
        e.rhs = std::sqrt(-g(*tl)) + ay(*tl);
      });
  add("randers.spinor_form.spacelike", D, kAlgebraicTol, sl,
      "1/4 Tr(M Ft[A]) = F_A printed for g>0; actual value |g|^{1/2} - A.y",
      [&](auto& e) {
        e.lhs = 0.25 * tr(M * Ft, *sl);
        e.rhs = std::sqrt(g(*sl)) + ay(*sl);
      });
  add("randers.pairing.timelike", H, kAlgebraicTol, tl,
      "frozen oracle pairing -1/4 Tr(M Ft[A]) = (-g(y,y))^{1/2} + A.y", [&](auto& e) {
        e.lhs = -0.25 * tr(M * Ft, *tl);
        e.rhs = std::sqrt(-g(*tl)) + ay(*tl);
      });
  add("randers.pairing.spacelike", H, kAlgebraicTol, sl,
      "frozen oracle pairing 1/4 Tr(M F[A]) = g(y,y)^{1/2} + A.y", [&](auto& e) {
        e.lhs = 0.25 * tr(M * F, *sl);
        e.rhs = std::sqrt(g(*sl)) + ay(*sl);
      });
  add("randers.null_limit.printed", D, kLimitTol, nul,
      "-lim 1/4 Tr(M F[A]) = lim 1/4 Tr(M Ft[A]) = A.y printed; both limits equal -A.y",
      [&](auto& e) {
        e.lhs = -0.25 * tr(M * F, side_points(-1).back(), 0.0);
        e.rhs = ay(*nul);
      });
  add("randers.null_limit.pairings_equal", D, kLimitTol, nul,
      "lim Tr(M F[A]) = lim Tr(M Ft[A]) printed; limits are 4 A.y and -4 A.y",
      [&](auto& e) {
        const Tangent yn = side_points(-1).back();
        e.lhs = tr(M * F, yn, 0.0);
        e.rhs = tr(M * Ft, yn, 0.0);
      });
  const std::optional<Tangent> lorentz_null =
      ctx_.metric().signature().is_lorentzian() ? nul : std::nullopt;
  add("randers.null_branch", H, kLimitTol, lorentz_null,
      "glued F is continuous at the null cone: F(y_n) -> A.y from the timelike side",
      [&](auto& e) {
        const RandersData d(ctx_.metric(), ctx_.form(a));
        e.lhs = randers_norm(d, side_points(-1).back(), {ctx_.rep().rep_id(), 0.0}).value;
        e.rhs = ay(*nul);
      });

  add("second_order.squared_trace", H, kAlgebraicTol, nn,
      "(|g|^{1/2} + A.y)^2 = Tr^2/16 of M Ft[A] (timelike) or M F[A] (spacelike)",
      [&](auto& e) {
        const double t = tr(M * (g(*nn) < 0 ? Ft : F), *nn);
        e.lhs = t * t / 16.0;
        const double s = std::sqrt(std::abs(g(*nn))) + ay(*nn);
        e.rhs = s * s;
      });
  add("second_order.tr2_identity.f", D, kAlgebraicTol, nn,
      "Tr^2(M F[A]) = 4 Tr(M M F[A] F[A]) printed; with X = c0 I + c1 slash(y)/|g|^{1/2}, "
      "Tr(X)^2 - 4 Tr(X^2) = -16 sgn(g) c1^2, zero only when A.y = -|g|^{1/2}",
      [&](auto& e) {
        const double t = tr(M * F, *nn);
        e.lhs = t * t;
        e.rhs = 4.0 * tr(M * M * F * F, *nn);
      });
  add("second_order.tr2_identity.ft", D, kAlgebraicTol, nn,
      "Tr^2(M Ft[A]) = 4 Tr(M M Ft[A] Ft[A]) printed; fails unless A.y = |g|^{1/2}",
      [&](auto& e) {
        const double t = tr(M * Ft, *nn);
        e.lhs = t * t;
        e.rhs = 4.0 * tr(M * M * Ft * Ft, *nn);
      });
  add("second_order.quartic_trace", D, kAlgebraicTol, nn,
      "1/4 Tr(M M Ft[A] Ft[A]) = (|g|^{1/2} + A.y)^2 printed for every branch; inherits the "
      "Tr^2 identity failure",
      [&](auto& e) {
        e.lhs = 0.25 * tr(M * M * Ft * Ft, *nn);
        const double s = std::sqrt(std::abs(g(*nn))) + ay(*nn);
        e.rhs = s * s;
      });

  // First-order operator correspondence.
  add("gamma_trace.printed", D, kAlgebraicTol, nn,
      "Tr(M Gamma_{A,m}) = |g|^{1/2} - y_i A^j/|g|^{1/2} printed: omits the factor 4 and "
      "the sign of the timelike branch",
      [&](auto& e) {
        const GammaNormTrace r = gamma_norm_trace(ctx_.with_y(*nn), ctx_.form(a), opts_.mass);
        e.lhs = 4.0 * r.value;
        const double n = std::sqrt(std::abs(g(*nn)));
        e.rhs = n - ay(*nn) / n;
      });
  add("gamma_trace.computed", H, kAlgebraicTol, nn,
      "1/4 Tr(M Gamma_{A,m}) = -+|g|^{1/2} - m A.y/|g|^{1/2}: 1-homogeneous plus "
      "0-homogeneous part",
      [&](auto& e) {
        const GammaNormTrace r = gamma_norm_trace(ctx_.with_y(*nn), ctx_.form(a), opts_.mass);
        e.lhs = r.value;
        const double n = std::sqrt(std::abs(g(*nn)));
        e.rhs = sign(*nn) * n - opts_.mass * ay(*nn) / n;
      });

  return std::move(out_);
}

}  // namespace

std::vector<IdentityAuditEntry> audit_identities(const EvalContext& ctx,
                                                 const AuditOptions& opts) {
  if (!ctx.has_form(opts.form_name)) throw UnknownForm(opts.form_name);
  Auditor auditor(ctx, opts);
  return auditor.run();
}

std::vector<std::string> registered_identities() {
  const Metric4 m = Metric4::diagonal(Signature());
  const EvalContext ctx(m, {{"A", OneForm(RealVector4(0.1, 0.0, 0.0, 0.0), "A")}},
                        Tangent(1.0, 0.0, 0.0, 0.0));
  std::vector<std::string> ids;
  for (const auto& e : audit_identities(ctx)) ids.push_back(e.identity_id);
  return ids;
}

bool audit_passed(const std::vector<IdentityAuditEntry>& entries) {
  for (const auto& e : entries) {
    if (e.expectation == Expectation::holds && !e.holds) return false;
  }
  return true;
}

}  // namespace cliff
