#pragma once

// Numeric constants shared across modules.

namespace effdim::constants {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Leading factor of the confidence constant C_eta = 96 * log^2(6 / eta).
inline constexpr double kConfidenceFactor = 96.0;

// Numerator inside the logarithm of C_eta.
inline constexpr double kConfidenceLogNumerator = 6.0;

// Default absolute tolerance for the exact effective dimension.
inline constexpr double kDefaultEffDimTol = 1e-9;

// Defaults for the synthetic prior-family member.
inline constexpr double kDefaultTailMargin = 0.1;
inline constexpr int kDefaultModes = 512;

}  // namespace effdim::constants
