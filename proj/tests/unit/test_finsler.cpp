#include <doctest.h>

#include <set>

#include "cliff/errors.hpp"
#include "cliff/finsler.hpp"
#include "sampling.hpp"

using namespace cliff;

TEST_SUITE("finsler") {

TEST_CASE("randers data needs a Lorentzian metric") {
  CHECK_THROWS_AS(RandersData(Metric4::diagonal(Signature({1, 1, 1, 1})), OneForm()), InvalidInput);
  CHECK_THROWS_AS(RandersData(Metric4::diagonal(Signature({-1, -1, 1, 1})), OneForm()), InvalidInput);
  CHECK_NOTHROW(RandersData(Metric4::diagonal(Signature({1, -1, -1, -1})), OneForm()));
}

TEST_CASE("randers trace path on all branches") {
  sampling::Sampler s(41);
  for (int i = 0; i < 100; ++i) {
    const Metric4 m = s.metric();
    const RandersData d(m, s.form("A"));
    const Tangent y = s.non_null(m);
    const PathComparison r = randers_norm(d, y);
    CHECK(r.residual <= 1e-10 * std::max(1.0, std::abs(r.reference)));
    CHECK(r.reference == doctest::Approx(randers_direct(d, y)));
    const Tangent n = s.null_vector(m);
    CHECK(std::abs(norm_squared(m, n)) < 1e-12);
    const PathComparison rn = randers_norm(d, n);
    CHECK(rn.branch == CausalCharacter::null);
    CHECK(rn.value == pair(d.form(), n));
  }
}

TEST_CASE("randers norm is positively homogeneous") {
  sampling::Sampler s(42);
  const Metric4 m = s.curved_metric();
  const RandersData d(m, s.form("A"));
  const Tangent y = s.non_null(m);
  for (double l : {0.5, 2.0, 7.0}) {
    CHECK(randers_norm(d, Tangent(l * y.components)).value ==
          doctest::Approx(l * randers_norm(d, y).value).epsilon(1e-12));
  }
}

TEST_CASE("angular lagrangian both signs") {
  sampling::Sampler s(43);
  for (int i = 0; i < 50; ++i) {
    const Metric4 m = s.metric();
    const RandersData d(m, s.form("A"));
    const Tangent y(s.vector(2.0));
    for (bool plus : {false, true}) {
      const PathComparison r = angular_lagrangian(d, y, {}, plus);
      CHECK(r.residual <= 1e-10 * std::max(1.0, std::abs(r.reference)));
    }
  }
}

TEST_CASE("second order lagrangian equals the squared randers norm") {
  sampling::Sampler s(44);
  for (int i = 0; i < 50; ++i) {
    const Metric4 m = s.metric();
    const RandersData d(m, s.form("A"));
    const Tangent y = s.non_null(m);
    const SecondOrderReport r = second_order_lagrangian(d, y);
    const double f = randers_direct(d, y);
    CHECK(r.direct == doctest::Approx(f * f).epsilon(1e-12));
    CHECK(std::abs(r.squared_trace - r.direct) <= 1e-10 * std::max(1.0, r.direct));
  }
}

TEST_CASE("quartic trace path differs from the squared norm") {
  // Tr(X)^2 - 4 Tr(X^2) = -16 s c1^2 for X = c0 + c1 a; nonzero already at A = 0.
  const RandersData d(Metric4::diagonal(Signature{}), OneForm(RealVector4::Zero(), "A"));
  const SecondOrderReport r = second_order_lagrangian(d, Tangent(1, 0, 0, 0));
  CHECK(r.direct == doctest::Approx(1.0));
  CHECK(r.squared_trace == doctest::Approx(1.0));
  CHECK(std::abs(r.quartic_trace - r.direct) > 0.5);
}

TEST_CASE("null limit converges from both sides") {
  sampling::Sampler s(45);
  for (int i = 0; i < 10; ++i) {
    const Metric4 m = s.metric();
    const RandersData d(m, s.form("A"));
    const Tangent n = s.null_vector(m);
    const NullLimitReport r = null_limit_check(d, n, 12);
    CHECK(r.steps.size() == 12);
    CHECK(r.expected_trace_limit == doctest::Approx(4.0 * pair(d.form(), n)));
    CHECK(r.final_residual <= 1e-6);
    CHECK(r.continuity_residual <= 1e-6);
    CHECK(r.tail_decreasing);
    const auto left = null_approach_sequence(m, n, 12, -1);
    const auto right = null_approach_sequence(m, n, 12, +1);
    CHECK(norm_squared(m, left.front()) < 0.0);
    CHECK(norm_squared(m, right.front()) > 0.0);
  }
  const RandersData d(Metric4::diagonal(Signature{}), OneForm(RealVector4(0.1, 0, 0, 0)));
  CHECK_THROWS_AS(null_limit_check(d, Tangent(1, 0, 0, 0), 12), NotNull);
  CHECK_THROWS_AS(null_limit_check(d, Tangent(1, 1, 0, 0), 3), InvalidInput);
  CHECK_THROWS_AS(null_limit_check(d, Tangent(0, 0, 0, 0), 12), NotNull);
}

TEST_CASE("fundamental tensor of a quadratic form") {
  sampling::Sampler s(46);
  for (int i = 0; i < 10; ++i) {
    const Metric4 m = s.curved_metric();
    const OneForm a = s.form("A");
    const RealMatrix4 g = m.components();
    const auto lag = [&](const Tangent& y) {
      return norm_squared(m, y) - pair(a, y) * pair(a, y);
    };
    const FundamentalTensor t = fundamental_tensor(lag, Tangent(s.vector(2.0)));
    const RealMatrix4 want = g - a.components * a.components.transpose();
    CHECK(max_norm(RealMatrix4(t.components - want)) <= 1e-9);
    CHECK(t.step_halving_change <= 1e-9);
    CHECK(t.regular);
  }
}

TEST_CASE("asymmetric finite differences break down") {
  const auto lag = [](const Tangent& y) {
    const auto& c = y.components;
    const double r2 = c[0] * c[0] + c[1] * c[1];
    return r2 == 0.0 ? 0.0 : c[0] * c[1] * (c[0] * c[0] - c[1] * c[1]) / r2;
  };
  // The mixed partials at the origin are -1 and +1.
  CHECK_THROWS_AS(fundamental_tensor(lag, Tangent(0, 0, 0, 0)), NumericalBreakdown);
}

TEST_CASE("angular tensor report and regularity") {
  const Metric4 m = Metric4::diagonal(Signature{});
  const RandersData d(m, OneForm(RealVector4(0.1, 0.2, 0.0, 0.0), "A"));
  const AngularTensorReport r = angular_fundamental_tensor(d, Tangent(1.2, 0.3, 0.1, 0.0));
  CHECK(r.max_deviation <= 1e-9);
  CHECK(r.dual_norm_condition);
  REQUIRE(r.tensor.condition_value.has_value());
  CHECK(*r.tensor.condition_value == doctest::Approx(-0.01 + 0.04));
  const double det_ratio = r.tensor.components.determinant() / m.components().determinant();
  CHECK(det_ratio == doctest::Approx(1.0 - *r.tensor.condition_value));

  // A with g*(A,A) = 1 makes g - A (x) A singular
  const RandersData bad(m, OneForm(RealVector4(0.0, 1.0, 0.0, 0.0), "A"));
  const AngularTensorReport rb = angular_fundamental_tensor(bad, Tangent(1.2, 0.3, 0.1, 0.0));
  CHECK_FALSE(rb.tensor.regular);
  CHECK_FALSE(rb.dual_norm_condition);
}

TEST_CASE("audit covers every registered identity and flags only undocumented failures") {
  const auto ids = registered_identities();
  const std::set<std::string> unique(ids.begin(), ids.end());
  CHECK(unique.size() == ids.size());
  for (const char* required :
       {"norm.mm.raw", "norm.mm_tilde.raw", "randers.null_limit.printed", "pairing.proof_first_factor",
        "gamma_trace.printed", "second_order.tr2_identity.f", "second_order.tr2_identity.ft"}) {
    CHECK(unique.count(required) == 1);
  }
  sampling::Sampler s(47);
  for (int i = 0; i < 6; ++i) {
    const Metric4 m = s.metric();
    const Tangent y = i % 3 == 2 ? s.null_vector(m) : s.non_null(m);
    const EvalContext ctx(m, {{"A", s.form("A")}}, y);
    const auto entries = audit_identities(ctx);
    CHECK(entries.size() == ids.size());
    CHECK(audit_passed(entries));
    for (const auto& e : entries) {
      CAPTURE(e.identity_id);
      if (e.expectation == Expectation::documented_discrepancy) CHECK_FALSE(e.convention_note.empty());
      CHECK(std::isfinite(e.residual));
    }
  }
  std::vector<IdentityAuditEntry> fake(1);
  fake[0].holds = false;
  CHECK_FALSE(audit_passed(fake));
  fake[0].expectation = Expectation::documented_discrepancy;
  CHECK(audit_passed(fake));
}

TEST_CASE("audit on a non-Lorentzian metric marks randers entries inapplicable") {
  const EvalContext ctx(Metric4::diagonal(Signature({-1, -1, 1, 1})),
                        {{"A", OneForm(RealVector4(0.1, 0.2, 0.0, 0.1), "A")}}, Tangent(1.3, 0.2, 0.4, 0.1));
  const auto entries = audit_identities(ctx);
  CHECK(audit_passed(entries));
  bool some_inapplicable = false;
  for (const auto& e : entries) some_inapplicable |= !e.applicable;
  CHECK(some_inapplicable);
}

}
