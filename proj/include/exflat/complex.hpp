#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace exflat {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Reduces an angle into [0, 2pi).
inline double wrap_angle(double theta) {
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

/// Unit complex number at `degrees`, exact at multiples of 90 degrees.
inline cplx unit_from_degrees(double degrees) {
  double d = std::fmod(degrees, 360.0);
  if (d < 0.0) d += 360.0;
  if (d == 0.0) return {1.0, 0.0};
  if (d == 90.0) return {0.0, 1.0};
  if (d == 180.0) return {-1.0, 0.0};
  if (d == 270.0) return {0.0, -1.0};
  return std::polar(1.0, d * pi / 180.0);
}

/// Distance from p to the closed segment [a, b].
inline double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return std::abs(p - (a + t * ab));
}

}  // namespace exflat
