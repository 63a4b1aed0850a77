#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nctorus/anzai.hpp"
#include "nctorus/gns.hpp"

namespace nct {

inline constexpr double kLiouvilleThreshold = 2.5;

/// Default twist 2 pi (sqrt 2 - 1).
inline constexpr double kDefaultNu = kTwoPi * (std::numbers::sqrt2 - 1.0);

enum class Growth { Liouville, Golden };

struct GrowthSchedule {
  Growth kind = Growth::Liouville;
  /// First partial quotient of the Liouville schedule; later ones are q_k^2 + 1.
  std::int64_t seed = 3;
};

/// theta / 2 pi = [0; a_1, ..., a_N] = p_N / q_N.
struct LiouvilleAngle {
  std::vector<std::int64_t> partial_quotients;
  std::vector<std::pair<std::int64_t, std::int64_t>> convergents;  // (p_k, q_k), k = 1..N
  /// Denominator the schedule assigns to level N + 1 (may exceed 2^53).
  long double next_denominator = 0.0L;
  double theta = 0.0;
  /// 2 pi q_k |theta/2pi - p_k/q_k| in exact arithmetic, <= 2 pi / q_{k+1}.
  std::vector<long double> ideal_distance;
  /// ||q_k theta|| for the double theta actually used.
  std::vector<double> realized_distance;
  /// min_k log q_{k+1} / log q_k over levels with q_k > 1.
  double liouville_score = 0.0;

  int levels() const { return static_cast<int>(convergents.size()); }
  std::int64_t q(int k) const { return convergents.at(static_cast<std::size_t>(k - 1)).second; }
  bool is_liouville() const { return liouville_score >= kLiouvilleThreshold; }
};

/// Throws OverflowError once a denominator exceeds 2^53.
LiouvilleAngle liouville_theta(int levels, GrowthSchedule growth = {});

/// g_N(e^{it}) = exp(i sum_k a_k cos(q_k t)).
struct RoughSolution {
  std::vector<std::int64_t> freqs;
  std::vector<double> amps;

  int levels() const { return static_cast<int>(freqs.size()); }
  /// sum_k a_k cos(q_k t) as a real trig polynomial.
  TrigPoly log_phase() const;
  WindingMap map() const { return WindingMap(0, log_phase()); }
};

/// Levels 1..levels of the angle's denominators (all by default), a_k = 1/k
/// unless amplitudes are given.
RoughSolution rough_solution(const LiouvilleAngle& angle, std::optional<int> levels = std::nullopt,
                             std::optional<std::vector<double>> amps = std::nullopt);

struct FurstenbergMap {
  WindingMap f;        // g / (g o R_theta)
  WindingMap f_tilde;  // e^{i nu} f
  /// 2 a_N ||q_N theta||: sup-distance bound between levels N-1 and N.
  double tail_bound = 0.0;
};

FurstenbergMap furstenberg_f(double theta, const RoughSolution& g, double nu);

struct EigenvectorResult {
  GNSVector vector;
  cplx eigenvalue;
  double residual = 0.0;
};

/// g(U) V xi_tau for the map built on `theta`; the residual is measured for
/// the skew product with angle `map_theta` (theta unless given).
EigenvectorResult eigenvector(double theta, const RoughSolution& g, double nu, double alpha,
                              std::optional<double> map_theta = std::nullopt);

/// G_k = h(e^{ik theta} z) g(e^{ik theta} z)^{-1} g(z), computed through the
/// iterated skew product and through the formula. Throws ConsistencyError when
/// the two disagree beyond `tol`.
std::vector<TrigPoly> gk_functions(double theta, const RoughSolution& g, const TrigPoly& h,
                                   std::span<const std::int64_t> ks, double alpha = 0.0,
                                   double tol = 1e-9);

/// integral of h conj(g) over the circle.
cplx h_overlap(const TrigPoly& h, const RoughSolution& g);

struct OscillationResult {
  double osc = 0.0;
  std::vector<std::int64_t> ns;
  std::vector<double> points;
  std::vector<Eigen::VectorXcd> values;  // mode-1 average at the points, per N
};

/// Spread over dyadic N in [n_min, n_max] of the mode-1 coefficient of
/// M_{h(U)V, e^{i nu}}(N) at `points` equally spaced angles.
OscillationResult oscillation_stat(double theta, const WindingMap& f_tilde, const TrigPoly& h,
                                   double nu, std::int64_t n_min, std::int64_t n_max,
                                   int points = 32);

}  // namespace nct
