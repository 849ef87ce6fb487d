#pragma once

// Frozen outcome of tools/pairing_oracle (transcript in
// data/pairing_oracle_transcript.txt): the trace pairing that reproduces
// F(y) = |g(y,y)|^{1/2} + A.y on each side of the null cone.

#include <string_view>

namespace cliff {

struct TracePairing {
  bool m_tilde;       // Mt instead of M
  bool f_tilde;       // Ft[A] instead of F[A]
  double prefactor;   // multiplies Tr(...)
  std::string_view text;
};

inline constexpr TracePairing kTimelikePairing{false, true, -0.25, "-1/4 * Tr(M*Ft[A])"};
inline constexpr TracePairing kSpacelikePairing{false, false, 0.25, "+1/4 * Tr(M*F[A])"};

}  // namespace cliff
