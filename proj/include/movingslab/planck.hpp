#ifndef MOVINGSLAB_PLANCK_HPP
#define MOVINGSLAB_PLANCK_HPP

#include <cmath>
#include <stdexcept>

#include "movingslab/constants.hpp"

namespace movingslab {

/// Planck spectral radiance in photon-energy form, prefactor * e^3 / (exp(e/T) - 1),
/// with e and T in keV. The default prefactor of 1 gives the normalized spectral
/// shape; pass a physical constant to get absolute units.
///
/// Returns exactly zero once e/T exceeds the exponential underflow threshold.
template <typename Scalar>
Scalar planck(Scalar energy, Scalar temperature, Scalar prefactor = Scalar(1))
{
   if (!(energy > Scalar(0)) || !(temperature > Scalar(0)))
      throw std::domain_error("planck requires positive energy and temperature");
   using std::expm1;
   const Scalar x = energy / temperature;
   if (x > Scalar(constants::exp_underflow))
      return Scalar(0);
   return prefactor * energy * energy * energy / expm1(x);
}

}  // namespace movingslab

#endif  // MOVINGSLAB_PLANCK_HPP
