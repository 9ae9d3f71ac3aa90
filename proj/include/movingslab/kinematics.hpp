#ifndef MOVINGSLAB_KINEMATICS_HPP
#define MOVINGSLAB_KINEMATICS_HPP

// Special-relativistic photon kinematics for a slab moving along +z toward an
// observer. Everything here is a pure function of its arguments and is
// templated on the scalar type so it can be evaluated in extended precision
// by test oracles.

#include <cmath>
#include <stdexcept>
#include <string>

#include "movingslab/constants.hpp"

namespace movingslab {

namespace detail {

template <typename Scalar>
void check_speed(Scalar v, Scalar c)
{
   if (!(c > Scalar(0)))
      throw std::domain_error("speed of light must be positive");
   if (!(v >= Scalar(0)) || !(v < c))
      throw std::domain_error("slab speed must satisfy 0 <= v < c, got v = " +
                              std::to_string(static_cast<double>(v)));
}

template <typename Scalar>
void check_direction(Scalar mu)
{
   if (!(mu >= Scalar(-1)) || !(mu <= Scalar(1)))
      throw std::domain_error("direction cosine must lie in [-1, 1], got mu = " +
                              std::to_string(static_cast<double>(mu)));
}

template <typename Scalar>
constexpr Scalar positive_part(Scalar x)
{
   return x > Scalar(0) ? x : Scalar(0);
}

}  // namespace detail

/// Lorentz factor 1/sqrt(1 - (v/c)^2).
template <typename Scalar>
Scalar lorentz_gamma(Scalar v, Scalar c = Scalar(constants::c))
{
   detail::check_speed(v, c);
   using std::sqrt;
   const Scalar beta = v / c;
   return Scalar(1) / sqrt(Scalar(1) - beta * beta);
}

/// Lab-frame Doppler factor D = 1 - mu v / c. The comoving photon energy is
/// gamma * D times the lab energy.
template <typename Scalar>
Scalar doppler_factor(Scalar mu, Scalar v, Scalar c = Scalar(constants::c))
{
   detail::check_direction(mu);
   detail::check_speed(v, c);
   return Scalar(1) - mu * (v / c);
}

template <typename Scalar>
struct DopplerState
{
   Scalar beta;
   Scalar gamma;
   Scalar d_lab;
   /// gamma * d_lab: maps lab photon energy to comoving photon energy.
   Scalar shift;
};

template <typename Scalar>
DopplerState<Scalar> make_doppler_state(Scalar mu, Scalar v, Scalar c = Scalar(constants::c))
{
   DopplerState<Scalar> state;
   state.beta = v / c;
   state.gamma = lorentz_gamma(v, c);
   state.d_lab = doppler_factor(mu, v, c);
   state.shift = state.gamma * state.d_lab;
   return state;
}

/// Lab times at which a photon that arrives at the observer at t_Z left the
/// back and the front of the slab. Both are zero when the photon cannot have
/// come from the slab.
template <typename Scalar>
struct EmissionWindow
{
   Scalar t_back{0};
   Scalar t_front{0};
};

template <typename Scalar>
struct RayGeometry
{
   Scalar mu{0};
   Scalar t_back{0};
   Scalar t_front{0};
   /// Length of the ray inside the slab, cm.
   Scalar path_length{0};
};

/// Emission window for a ray with direction cosine `mu` reaching z = Z at
/// time t_Z. The slab occupies [v t, L + v t].
///
/// Rays with mu c <= v never leave the slab toward the observer; they get the
/// empty window (0, 0).
template <typename Scalar>
EmissionWindow<Scalar> emission_window(Scalar mu, Scalar length, Scalar v, Scalar z_obs,
                                       Scalar t_obs, Scalar c = Scalar(constants::c))
{
   detail::check_direction(mu);
   detail::check_speed(v, c);
   const Scalar closing = mu * c - v;
   if (!(closing > Scalar(0)))
      return {};
   const Scalar reach = mu * c * t_obs;
   EmissionWindow<Scalar> window;
   window.t_back = detail::positive_part((reach - z_obs) / closing);
   window.t_front = detail::positive_part((length + reach - z_obs) / closing);
   return window;
}

/// Ray length inside the slab for emission times t_back <= t_front.
template <typename Scalar>
Scalar path_length(Scalar t_back, Scalar t_front, Scalar c = Scalar(constants::c))
{
   if (!(t_front >= t_back))
      throw std::domain_error("path_length requires t_back <= t_front");
   return c * (t_front - t_back);
}

template <typename Scalar>
RayGeometry<Scalar> ray_geometry(Scalar mu, Scalar length, Scalar v, Scalar z_obs, Scalar t_obs,
                                 Scalar c = Scalar(constants::c))
{
   const auto window = emission_window(mu, length, v, z_obs, t_obs, c);
   return {mu, window.t_back, window.t_front, path_length(window.t_back, window.t_front, c)};
}

}  // namespace movingslab

#endif  // MOVINGSLAB_KINEMATICS_HPP
