#ifndef MOVINGSLAB_CONSTANTS_HPP
#define MOVINGSLAB_CONSTANTS_HPP

namespace movingslab {

// Unit system used throughout: cm, ns, keV.
namespace constants {

/// Speed of light in cm/ns.
inline constexpr double c = 29.9792458;

inline constexpr double pi = 3.14159265358979323846;

/// exp(-x) for x beyond this is treated as exactly zero.
inline constexpr double exp_underflow = 700.0;

}  // namespace constants
}  // namespace movingslab

#endif  // MOVINGSLAB_CONSTANTS_HPP
