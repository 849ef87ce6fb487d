#include "cliff/gamma.hpp"

#include <cmath>

#include "cliff/errors.hpp"

namespace cliff {

namespace {

constexpr std::array<int, 4> kBaseSigns{1, -1, -1, -1};
constexpr double kConstructionTolerance = 1e-12;

using Block = Eigen::Matrix2cd;

Block pauli(int k) {
  const complex i(0.0, 1.0);
  Block s;
  switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: s = Block::Identity(); break;
  }
  return s;
}

ComplexMatrix4 blocks(const Block& a, const Block& b, const Block& c, const Block& d) {
  ComplexMatrix4 m;
  m << a, b, c, d;
  return m;
}

std::array<ComplexMatrix4, 4> base_set(RepId id) {
  const Block zero = Block::Zero();
  const Block one = Block::Identity();
  const complex i(0.0, 1.0);
  std::array<ComplexMatrix4, 4> g;
  switch (id) {
    case RepId::dirac:
      g[0] = blocks(one, zero, zero, -one);
      for (int k = 1; k <= 3; ++k) g[k] = blocks(zero, pauli(k), -pauli(k), zero);
      break;
    case RepId::weyl:
      g[0] = blocks(zero, one, one, zero);
      for (int k = 1; k <= 3; ++k) g[k] = blocks(zero, pauli(k), -pauli(k), zero);
      break;
    case RepId::majorana:
      // all entries purely imaginary
      g[0] = blocks(zero, pauli(2), pauli(2), zero);
      g[1] = blocks(i * pauli(3), zero, zero, i * pauli(3));
      g[2] = blocks(zero, -pauli(2), pauli(2), zero);
      g[3] = blocks(-i * pauli(1), zero, zero, -i * pauli(1));
      break;
  }
  return g;
}

}  // namespace

std::string_view to_string(RepId id) {
  switch (id) {
    case RepId::dirac: return "dirac";
    case RepId::weyl: return "weyl";
    case RepId::majorana: return "majorana";
  }
  return "?";
}

RepId parse_rep_id(std::string_view text) {
  if (text == "dirac") return RepId::dirac;
  if (text == "weyl") return RepId::weyl;
  if (text == "majorana") return RepId::majorana;
  throw InvalidInput("unknown representation '" + std::string(text) +
                     "' (expected dirac, weyl or majorana)");
}

double GammaRep::clifford_residual() const {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double eta = a == b ? signature_[a] : 0.0;
      const ComplexMatrix4 r = (*this)[a] * (*this)[b] + (*this)[b] * (*this)[a] -
                               2.0 * eta * ComplexMatrix4::Identity();
      worst = std::max(worst, max_norm(r));
    }
  }
  return worst;
}

GammaRep build_representation(RepId rep_id, const Signature& signature) {
  GammaRep rep;
  rep.rep_id_ = rep_id;
  rep.signature_ = signature;
  rep.gammas_ = base_set(rep_id);
  const complex i(0.0, 1.0);
  for (int a = 0; a < 4; ++a) {
    if (signature[a] != kBaseSigns[static_cast<std::size_t>(a)]) {
      rep.gammas_[static_cast<std::size_t>(a)] *= i;
    }
  }
  if (rep.clifford_residual() > kConstructionTolerance) {
    throw NumericalBreakdown("gamma representation violates the Clifford relation");
  }
  for (const auto& g : rep.gammas_) {
    if (std::abs(g.trace()) > kConstructionTolerance) {
      throw NumericalBreakdown("gamma representation is not traceless");
    }
  }
  return rep;
}

ComplexMatrix4 slash(const GammaRep& rep, const RealVector4& v) {
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (int a = 0; a < 4; ++a) out += v[a] * rep[a];
  return out;
}

}  // namespace cliff
