#include "nctorus/angle.hpp"

#include <cmath>
#include <utility>

namespace nct {
namespace {

// 2*pi split into 24-bit pieces (Cody-Waite); n * kC[i] is exact for |n| < 2^29.
constexpr double kC[5] = {0x1.921fb40000000p+2, 0x1.4442d00000000p-22,
                          0x1.8469880000000p-46, 0x1.8cc5160000000p-70,
                          0x1.01b839a25204ap-94};

constexpr std::int64_t kLimb = std::int64_t{1} << 20;

std::pair<double, double> two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

std::pair<double, double> two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Normalise a double-double so |hi| carries the value.
Angle renorm(double hi, double lo) {
  auto [s, e] = two_sum(hi, lo);
  return {s, e};
}

}  // namespace

cplx Angle::phasor() const {
  // cos/sin of hi, then first-order correction for lo.
  const double c = std::cos(hi);
  const double s = std::sin(hi);
  return {c - s * lo, s + c * lo};
}

Angle reduce(double hi, double lo) {
  auto [h, l] = two_sum(hi, lo);
  const double n = std::nearbyint(h / kTwoPi);
  if (n == 0.0) {
    return {h, l};
  }
  if (std::fabs(n) >= 536870912.0) {
    // Outside the exact Cody-Waite range; only reachable from raw user
    // input since times() splits multipliers into limbs.
    const long double r = std::remainderl(static_cast<long double>(h) + l,
                                          2.0L * 3.141592653589793238462643383279502884L);
    const double rh = static_cast<double>(r);
    return {rh, static_cast<double>(r - rh)};
  }
  double acc_hi = h - n * kC[0];
  double acc_lo = l;
  for (int i = 1; i < 5; ++i) {
    auto [s, e] = two_sum(acc_hi, -n * kC[i]);
    acc_hi = s;
    acc_lo += e;
  }
  Angle out = renorm(acc_hi, acc_lo);
  // One more fold in case rounding left us just outside [-pi, pi].
  if (out.hi > kPi || out.hi < -kPi) {
    return reduce(out.hi, out.lo);
  }
  return out;
}

Angle times(const Angle& a, std::int64_t k) {
  if (k == 0) {
    return {};
  }
  if (k >= kLimb || k <= -kLimb) {
    const std::int64_t high = k / kLimb;
    const std::int64_t low = k - high * kLimb;
    const Angle scaled = reduce(a.hi * static_cast<double>(kLimb),
                                a.lo * static_cast<double>(kLimb));
    return times(scaled, high) + times(a, low);
  }
  const double kd = static_cast<double>(k);
  auto [p, e] = two_prod(kd, a.hi);
  return reduce(p, e + kd * a.lo);
}

Angle times(double theta, std::int64_t k) { return times(reduce(theta), k); }

Angle operator+(const Angle& a, const Angle& b) {
  auto [s, e] = two_sum(a.hi, b.hi);
  return reduce(s, e + a.lo + b.lo);
}

Angle operator-(const Angle& a) { return {-a.hi, -a.lo}; }

Angle operator-(const Angle& a, const Angle& b) { return a + (-b); }

}  // namespace nct
