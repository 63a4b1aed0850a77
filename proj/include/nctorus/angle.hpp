#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace nct {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// 2*pi*(sqrt(5)-1)/2, the default rotation angle.
inline constexpr double kGoldenTheta = kTwoPi * (std::numbers::phi - 1.0);

/// An angle held as an unevaluated double-double sum hi + lo, reduced to
/// [-pi, pi]. Multiplying a reduced angle by a large integer stays accurate
/// to roughly |k| * 1e-32 instead of |k| * 1e-16.
struct Angle {
  double hi = 0.0;
  double lo = 0.0;

  double value() const { return hi + lo; }
  cplx phasor() const;
};

/// Reduce hi + lo modulo 2*pi.
Angle reduce(double hi, double lo = 0.0);

/// k * a, reduced. Large |k| is split into 20-bit limbs.
Angle times(const Angle& a, std::int64_t k);

/// k * theta for a raw (unreduced) radian value theta.
Angle times(double theta, std::int64_t k);

Angle operator+(const Angle& a, const Angle& b);
Angle operator-(const Angle& a, const Angle& b);
Angle operator-(const Angle& a);

/// e^{i k theta} with accurate range reduction of k * theta.
inline cplx phase(double theta, std::int64_t k) { return times(theta, k).phasor(); }

/// e^{i x} for a raw radian value.
inline cplx unit(double x) { return reduce(x).phasor(); }

}  // namespace nct
