#pragma once

// Universal mathematical constants used throughout the moment formulas.
// zeta(3) and zeta(5) are stored as fixed 16+ digit literals; they enter the
// third/fourth log-moment expressions and have no runtime dependence.

namespace linml::constants {

inline constexpr double pi          = 3.141592653589793238462643383279503;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402; // C = -psi(1)
inline constexpr double zeta3       = 1.202056903159594285399738161511450; // zeta(3) = -psi''(1)/2
inline constexpr double zeta5       = 1.036927755143369926331365486457034; // zeta(5) = -psi''''(1)/24

} // namespace linml::constants
