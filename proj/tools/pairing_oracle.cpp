// Determines which trace pairing reproduces the Randers function
// F(y) = |g(y,y)|^{1/2} + A.y on timelike and on spacelike vectors, using the
// explicit-matrix oracle only. The transcript it prints is committed as
// data/pairing_oracle_transcript.txt and its outcome is frozen in
// include/cliff/pairing.hpp.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dirac_oracle.hpp"

namespace {

struct Sample {
  oracle::Vec y;
  oracle::Vec A;
};

struct Candidate {
  const char* name;
  bool m_tilde;
  bool f_tilde;
};

}  // namespace

int main() {
  const oracle::Eta eta{-1, 1, 1, 1};
  const std::vector<Sample> timelike{
      {{1.0, 0.0, 0.0, 0.0}, {0.1, 0.0, 0.0, 0.0}},
      {{2.0, 0.5, -0.3, 0.1}, {0.2, -0.1, 0.05, 0.3}},
      {{1.5, -0.2, 0.7, 0.4}, {-0.3, 0.25, 0.1, -0.05}},
  };
  const std::vector<Sample> spacelike{
      {{0.0, 1.0, 0.0, 0.0}, {0.0, 0.5, 0.0, 0.0}},
      {{0.3, 1.2, -0.4, 0.9}, {0.2, -0.1, 0.05, 0.3}},
      {{-0.5, 0.1, 2.0, -0.6}, {-0.3, 0.25, 0.1, -0.05}},
  };
  const Candidate candidates[] = {
      {"Tr(M*F[A])", false, false},
      {"Tr(M*Ft[A])", false, true},
      {"Tr(Mt*F[A])", true, false},
  };
  const double prefactors[] = {-0.25, 0.25};

  std::printf("# Randers pairing oracle (explicit Dirac-representation matrices)\n");
  std::printf("# eta = diag(-1,1,1,1); target F(y) = |eta(y,y)|^{1/2} + A.y\n");

  for (int branch = 0; branch < 2; ++branch) {
    const auto& samples = branch == 0 ? timelike : spacelike;
    std::printf("\n[%s]\n", branch == 0 ? "timelike" : "spacelike");
    std::string selected;
    for (const Candidate& c : candidates) {
      for (double pre : prefactors) {
        double worst = 0.0;
        for (const Sample& s : samples) {
          const auto m = oracle::M(s.y, eta, c.m_tilde);
          const auto f = oracle::F(s.y, s.A, eta, c.f_tilde);
          const double value = pre * oracle::trace(oracle::mul(m, f)).real();
          const double target = std::sqrt(std::abs(oracle::eta_norm(s.y, eta))) +
                                oracle::dot(s.A, s.y);
          worst = std::max(worst, std::abs(value - target));
        }
        const bool match = worst <= 1e-12;
        std::printf("%+.2f * %-12s max|value - F| = %.3e  %s\n", pre, c.name, worst,
                    match ? "MATCH" : "-");
        if (match && selected.empty()) {
          selected = std::string(pre < 0 ? "-1/4 * " : "+1/4 * ") + c.name;
        }
      }
    }
    std::printf("selected: %s\n", selected.empty() ? "none" : selected.c_str());
  }
  return 0;
}
