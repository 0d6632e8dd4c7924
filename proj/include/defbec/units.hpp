#pragma once

#include <complex>

namespace defbec {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double eps0 = 8.8541878128e-12;     // F/m
inline constexpr double c0 = 299792458.0;            // m/s
inline constexpr double kb = 1.380649e-23;           // J/K
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;
}  // namespace constants

// Configuration values are given as "/2pi" frequencies in Hz; everything
// internal is angular (rad/s).
inline constexpr double angular_from_hz(double f_hz) { return constants::two_pi * f_hz; }
inline constexpr double hz_from_angular(double w) { return w / constants::two_pi; }

}  // namespace defbec
