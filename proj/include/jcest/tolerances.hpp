#pragma once

// Numerical tolerances used across the library. These are fixed constants,
// not user-configurable knobs: every check in the test suite pins against
// the same values.

namespace jcest {

inline constexpr double kHermitianTol = 1e-12;      // max|A - A^dag| for predicates
inline constexpr double kEigInputTol = 1e-10;       // hermiticity required by eig_hermitian
inline constexpr double kUnitaryTol = 1e-10;        // max|U^dag U - 1|
inline constexpr double kTraceOneTol = 1e-12;       // |tr(rho) - 1|
inline constexpr double kDensityEigFloor = -1e-10;  // smallest admissible eigenvalue of rho
inline constexpr double kStateNormTol = 1e-12;      // | ||psi||^2 - 1 | for physical states
inline constexpr double kProbClamp = -1e-14;        // probabilities above this are clamped to 0
inline constexpr double kProbSumTol = 1e-12;        // |sum p - 1| and |sum dp|
inline constexpr double kProbFloor = 1e-12;         // outcomes below this are skipped in the FI sum
inline constexpr double kSpectralPairFloor = 1e-10; // eigenvalue-pair cutoff lambda_k + lambda_l
inline constexpr double kSupportLeakTol = 1e-9;     // max |<phi_k|drho|phi_l>| allowed on excluded pairs
inline constexpr double kZeroFisherTol = 1e-9;      // Fisher information at or below this is "no information"

}  // namespace jcest
