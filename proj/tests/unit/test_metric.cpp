#include <doctest.h>

#include "cliff/errors.hpp"
#include "cliff/metric.hpp"
#include "sampling.hpp"

using namespace cliff;

TEST_SUITE("metric") {

TEST_CASE("signature parsing accepts both spellings") {
  CHECK(Signature::parse("-1,1,1,1") == Signature{});
  CHECK(Signature::parse("-+++") == Signature{});
  CHECK(Signature::parse("+---") == Signature({1, -1, -1, -1}));
  CHECK(Signature::parse(" -1, 1, 1, 1 ") == Signature{});
  CHECK(Signature{}.is_lorentzian());
  CHECK_FALSE(Signature({1, 1, 1, 1}).is_lorentzian());
  CHECK(Signature({-1, -1, 1, 1}).negatives() == 2);
  CHECK_THROWS_AS(Signature::parse("-++"), InvalidInput);
  CHECK_THROWS_AS(Signature::parse("-1,2,1,1"), InvalidInput);
  CHECK_THROWS_AS(Signature({0, 1, 1, 1}), InvalidInput);
  CHECK(Signature::parse(Signature({1, -1, 1, -1}).to_string()) == Signature({1, -1, 1, -1}));
}

TEST_CASE("causal character follows the timelike-negative convention") {
  const Metric4 m = Metric4::diagonal(Signature{});
  CHECK(causal_character(m, Tangent(1, 0, 0, 0)) == CausalCharacter::timelike);
  CHECK(causal_character(m, Tangent(0, 1, 0, 0)) == CausalCharacter::spacelike);
  CHECK(causal_character(m, Tangent(1, 1, 0, 0)) == CausalCharacter::null);
  CHECK(causal_character(m, Tangent(1, 1.0 + 1e-6, 0, 0), 0.0) == CausalCharacter::spacelike);
  CHECK(norm_squared(m, Tangent(2, 1, 0, 0)) == doctest::Approx(-3.0));
  CHECK_THROWS_AS(causal_character(m, Tangent(1, 0, 0, 0), -1.0), InvalidInput);
}

TEST_CASE("degenerate and non-finite metrics are rejected") {
  RealMatrix4 g = Signature{}.as_matrix();
  g(3, 3) = 0.0;
  CHECK_THROWS_AS(Metric4::from_components(g), DegenerateMetric);
  g(3, 3) = std::nan("");
  CHECK_THROWS_AS(Metric4::from_components(g), InvalidInput);
  CHECK_THROWS_AS(Metric4::from_components(Signature{}.as_matrix(), Signature({1, 1, 1, 1})),
                  InvalidInput);
}

TEST_CASE("only the symmetric part is stored") {
  RealMatrix4 g = Signature{}.as_matrix();
  g(0, 1) = 0.2;
  const Metric4 m = Metric4::from_components(g);
  CHECK(m.components()(0, 1) == doctest::Approx(0.1));
  CHECK(m.components()(1, 0) == m.components()(0, 1));
}

TEST_CASE("norm_bilinear is exactly symmetric") {
  sampling::Sampler s(11);
  for (int i = 0; i < 50; ++i) {
    const Metric4 m = s.curved_metric();
    const Tangent y(s.vector()), z(s.vector());
    CHECK(norm_bilinear(m, y, z) == norm_bilinear(m, z, y));
  }
}

TEST_CASE("orthonormal frame diagonalizes random Lorentzian metrics") {
  sampling::Sampler s(12);
  for (const Signature& eta : {Signature{}, Signature({1, -1, -1, -1})}) {
    for (int i = 0; i < 40; ++i) {
      const Metric4 m = s.curved_metric(eta);
      const Frame4 f = orthonormal_frame(m);
      CHECK(f.eta == eta);
      const RealMatrix4 d = f.basis.transpose() * m.components() * f.basis;
      CHECK(max_norm(RealMatrix4(d - eta.as_matrix())) < 1e-12);
      const Tangent y(s.vector());
      const RealVector4 yf = f.to_frame(y);
      double eta_yy = 0.0;
      for (int a = 0; a < 4; ++a) eta_yy += eta[a] * yf[a] * yf[a];
      CHECK(eta_yy == doctest::Approx(norm_squared(m, y)).epsilon(1e-12));
      const OneForm A(s.vector(), "A");
      CHECK(f.to_frame(A).dot(yf) == doctest::Approx(pair(A, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("diagonal metrics use the identity frame") {
  const Frame4 f = orthonormal_frame(Metric4::diagonal(Signature({1, -1, -1, -1})));
  CHECK(f.basis == RealMatrix4::Identity());
}

TEST_CASE("raise and lower are inverse") {
  sampling::Sampler s(13);
  for (int i = 0; i < 20; ++i) {
    const Metric4 m = s.curved_metric();
    const OneForm a(s.vector(), "A");
    const OneForm back = lower(m, raise(m, a));
    CHECK(max_norm(RealVector4(back.components - a.components)) < 1e-12);
    const RealMatrix4 id = dual_metric(m).components() * m.components();
    CHECK(max_norm(RealMatrix4(id - RealMatrix4::Identity())) < 1e-12);
    CHECK(dual_norm_squared(m, a) ==
          doctest::Approx(norm_squared(m, raise(m, a))).epsilon(1e-12));
  }
}

}
