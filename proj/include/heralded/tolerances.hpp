#pragma once

#include <cstddef>

namespace heralded::tol {

inline constexpr double kNorm = 1e-10;   // normalization, hermiticity, filter identities
inline constexpr double kPsd = 1e-8;     // smallest admissible eigenvalue is -kPsd
inline constexpr double kDeriv = 1e-6;   // monotonicity slack for finite differences
inline constexpr double kTail = 1e-8;    // tail mass allowed in the last Fock levels
inline constexpr double kPhys = 1e-9;    // margin below the Gaussian amplifiability bound
inline constexpr double kQ = 1e-12;      // smallest admissible Q value is -kQ
inline constexpr double kQNorm = 1e-6;   // Riemann mass deficit that flags a too-small grid
inline constexpr double kHerald = 1e-12; // vacuum-projection probability floor
inline constexpr double kNearZeroInput = 1e-3;

inline constexpr std::size_t kTailLevels = 5;      // K_TAIL
inline constexpr std::size_t kDefaultCutoff = 30;
inline constexpr std::size_t kDefaultModeCutoff = 20;

}  // namespace heralded::tol
