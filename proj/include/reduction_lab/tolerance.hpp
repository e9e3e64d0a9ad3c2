#pragma once

namespace rlab {

// Absolute tolerances on normalized quantities.
inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kVerifyTol = 1e-9;
inline constexpr double kDegeneracyTol = 1e-9;
inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kTraceTol = 1e-12;

}  // namespace rlab
