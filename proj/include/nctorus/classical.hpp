#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "nctorus/anzai.hpp"
#include "nctorus/angle.hpp"

namespace nct {

/// Point (s, t) of the 2-torus. Coordinates accumulate unreduced as
/// double-double sums and are reduced only when a character is evaluated.
struct TorusPoint {
  double s = 0.0;
  double t = 0.0;
  double s_lo = 0.0;
  double t_lo = 0.0;

  Angle s_angle() const { return reduce(s, s_lo); }
  Angle t_angle() const { return reduce(t, t_lo); }
  /// e^{i(p s + q t)}.
  cplx character(std::int64_t p, std::int64_t q) const;
};

/// Real circle function h(s) in radians.
using CircleFunction = std::function<Angle(const Angle&)>;

/// h with f = e^{ih}: s -> w s + c + phase(s).
CircleFunction log_of(const WindingMap& f);

/// (s, t) -> (s + theta, t + h(s)).
TorusPoint anzai_step(double theta, const CircleFunction& h, const TorusPoint& p);
/// (s, t) -> (s - theta, t - h(s - theta)).
TorusPoint anzai_step_inverse(double theta, const CircleFunction& h, const TorusPoint& p);

struct BirkhoffResult {
  cplx average;
  std::vector<std::pair<std::int64_t, cplx>> checkpoints;  // dyadic N
};

/// (1/N) sum_{k<N} lambda^{-k} e^{i(p s_k + q t_k)} along the orbit of start.
BirkhoffResult birkhoff(double theta, const CircleFunction& h, TorusPoint start,
                        std::pair<std::int64_t, std::int64_t> character, cplx lambda,
                        std::int64_t N);

/// The same average for the function sum c_{m,n} e^{i(m s + n t)}.
cplx birkhoff(double theta, const CircleFunction& h, TorusPoint start, const NCPoly& a,
              cplx lambda, std::int64_t N);

/// Largest difference between the noncommutative average M_{a,1}(N) read as
/// a function on the torus and the classical Birkhoff average, over samples.
double crosscheck_alpha0(const AnzaiMap& A, const NCPoly& a, std::int64_t N,
                         std::span<const TorusPoint> samples, unsigned threads = 1);

/// Skew product (x, z) -> (T x, f(x) z) over an abstract base.
template <class Base>
struct ProcessSystem {
  std::function<Base(const Base&)> base_step;
  std::function<Base(std::mt19937_64&)> base_sampler;
  std::function<cplx(const Base&)> fiber;
};

template <class Base>
std::pair<Base, cplx> process_step(const ProcessSystem<Base>& P, const std::pair<Base, cplx>& state) {
  return {P.base_step(state.first), P.fiber(state.first) * state.second};
}

/// Rotation by theta on the circle.
ProcessSystem<Angle> rotation_process(double theta, std::function<cplx(const Angle&)> fiber);
/// Rotation by (theta1, theta2) on the 2-torus.
ProcessSystem<std::array<Angle, 2>> product_rotation_process(
    double theta1, double theta2, std::function<cplx(const std::array<Angle, 2>&)> fiber);

}  // namespace nct
