#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cliff/algebra.hpp"
#include "cliff/metric.hpp"
#include "cliff/pairing.hpp"

namespace cliff {

/// Lorentzian metric plus the one-form A of a Randers-type structure.
class RandersData {
 public:
  RandersData(const Metric4& metric, const OneForm& a);

  const Metric4& metric() const noexcept { return metric_; }
  const OneForm& form() const noexcept { return form_; }

 private:
  Metric4 metric_;
  OneForm form_;
};

struct FinslerOptions {
  RepId rep = RepId::dirac;
  double tol_null = kDefaultNullTolerance;
};

/// Evaluation context with the structure's one-form bound under its name.
EvalContext make_context(const RandersData& d, const Tangent& y,
                         const FinslerOptions& opts = {});

/// A quantity computed through traces of algebra elements next to its closed form.
struct PathComparison {
  double value = 0.0;      // trace path
  double reference = 0.0;  // closed form
  double residual = 0.0;   // |value - reference|
  CausalCharacter branch = CausalCharacter::spacelike;
};

/// -1/4 Tr or +1/4 Tr of the frozen pairing for non-null y, A.y on the null cone.
/// The reference is |g(y,y)|^{1/2} + A.y (A.y on the null cone).
PathComparison randers_norm(const RandersData& d, const Tangent& y,
                            const FinslerOptions& opts = {});

/// Closed form |g(y,y)|^{1/2} + A.y, with A.y on the null cone.
double randers_direct(const RandersData& d, const Tangent& y,
                      double tol_null = kDefaultNullTolerance);

/// 1/4 Tr(F[A] Ft[A]) against g(y,y) - (A.y)^2; with `plus`, 1/4 Tr(F[A] F[A])
/// against g(y,y) + (A.y)^2.
PathComparison angular_lagrangian(const RandersData& d, const Tangent& y,
                                  const FinslerOptions& opts = {}, bool plus = false);

struct SecondOrderReport {
  double direct = 0.0;       // (|g(y,y)|^{1/2} + A.y)^2
  double squared_trace = 0.0;  // (1/16) Tr^2 of the branch pairing
  double quartic_trace = 0.0;  // (1/4) Tr(M M P P), P the branch's F-type factor
  CausalCharacter branch = CausalCharacter::spacelike;

  double value() const { return squared_trace; }
};

/// Second-order homogeneous Randers Lagrangian. On the null cone the trace
/// paths are evaluated at the end of an approaching sequence.
SecondOrderReport second_order_lagrangian(const RandersData& d, const Tangent& y,
                                          const FinslerOptions& opts = {});

struct NullLimitReport {
  std::vector<double> steps;             // epsilon_n, decreasing
  std::vector<double> timelike_traces;   // Tr(M F[A]) at y - eps_n v
  std::vector<double> spacelike_traces;  // Tr(M F[A]) at y + eps_n v
  std::vector<double> timelike_tilde;    // Tr(M Ft[A]) along the same points
  std::vector<double> spacelike_tilde;
  std::vector<double> timelike_randers;  // glued F along the sequence
  std::vector<double> spacelike_randers;
  double expected_trace_limit = 0.0;  // 4 A.y
  double randers_at_null = 0.0;       // A.y
  double timelike_limit = 0.0;
  double spacelike_limit = 0.0;
  bool tail_decreasing = false;  // last four residuals strictly decreasing, both sides
  double final_residual = 0.0;   // max |Tr - 4 A.y| at the last step
  double continuity_residual = 0.0;  // max |F(y_n) - F(y_null)| at the last step
};

/// Approaches a null vector from both sides along y +- eps_n v with v = g^{-1} y
/// (so that g(y, v) > 0) and eps_n = 10^{-3 - 12 n / len}.
NullLimitReport null_limit_check(const RandersData& d, const Tangent& y_null,
                                 int sequence_len, const FinslerOptions& opts = {});

/// Points y_null +- eps v used by null_limit_check.
std::vector<Tangent> null_approach_sequence(const Metric4& m, const Tangent& y_null,
                                            int sequence_len, int side);

using ScalarFunction = std::function<double(const Tangent&)>;

struct FdOptions {
  double relative_step = 1e-2;  // h = relative_step * max(1, |y0|_inf)
  double asymmetry_limit = 1e-6;
};

struct FundamentalTensor {
  RealMatrix4 components = RealMatrix4::Zero();
  bool regular = false;  // |det| > 1e-12 * scale^4
  std::optional<double> condition_value;  // g*(A, A) when the structure is known
  double step = 0.0;
  double step_halving_change = 0.0;  // max entry change when h -> h/2
  double asymmetry = 0.0;
};

/// g_ij = 1/2 d^2 L / dy^i dy^j by central differences at y0. Throws
/// NumericalBreakdown when the two mixed-difference orderings disagree by more
/// than opts.asymmetry_limit.
FundamentalTensor fundamental_tensor(const ScalarFunction& lagrangian, const Tangent& y0,
                                     const FdOptions& opts = {});

struct AngularTensorReport {
  FundamentalTensor tensor;
  RealMatrix4 closed_form = RealMatrix4::Zero();  // g -+ A (x) A
  double max_deviation = 0.0;
  bool dual_norm_condition = false;  // |g*(A,A)| < 1, gates the recommendation
  double printed_y_condition_value = 0.0;  // |g(y0,y0)|, reported only
};

/// Fundamental tensor of the trace-path angular Lagrangian with its regularity
/// report.
AngularTensorReport angular_fundamental_tensor(const RandersData& d, const Tangent& y0,
                                               const FinslerOptions& opts = {},
                                               bool plus = false,
                                               const FdOptions& fd = {});

enum class Expectation { holds, documented_discrepancy };

struct IdentityAuditEntry {
  std::string identity_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool holds = false;
  bool applicable = true;
  Expectation expectation = Expectation::holds;
  std::string evaluated_at;
  std::string convention_note;
};

struct AuditOptions {
  std::string form_name = "A";
  double mass = 1.0;         // m in Gamma_{A,m}
  int sequence_len = 12;     // null-limit sequences
};

/// Evaluates both sides of every registered identity at the context's point
/// (or at a point of the required causal character derived from its frame).
/// Never throws for non-null contexts; inapplicable entries are flagged.
std::vector<IdentityAuditEntry> audit_identities(const EvalContext& ctx,
                                                 const AuditOptions& opts = {});

/// Identifiers registered by audit_identities, in output order.
std::vector<std::string> registered_identities();

/// True if every entry expected to hold does hold.
bool audit_passed(const std::vector<IdentityAuditEntry>& entries);

}  // namespace cliff
