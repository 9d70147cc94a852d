#ifndef ROTOR_SPECIAL_HPP
#define ROTOR_SPECIAL_HPP

namespace rotor {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Spherical Bessel j0(x) = sin(x)/x with j0(0) = 1. Uses a Taylor series
/// below |x| < 1e-4.
double sinc_j0(double x);

/// j0(pi * t), with sin(pi * t) reduced exactly so that integer t != 0
/// yields exactly 0.
double sinc_pi(double t);

/// sin(pi * t) with exact zeros at integers.
double sin_pi(double t);

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

} // namespace rotor

#endif
