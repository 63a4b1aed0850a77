#include "nctorus/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "nctorus/errors.hpp"

namespace nct {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;
constexpr std::int64_t kExactLimit = std::int64_t{1} << 53;

}  // namespace

LiouvilleAngle liouville_theta(int levels, GrowthSchedule growth) {
  if (levels < 1) {
    throw PreconditionError("liouville_theta needs at least one level");
  }
  if (growth.kind == Growth::Liouville && growth.seed < 2) {
    throw PreconditionError("Liouville seed must be at least 2");
  }
  LiouvilleAngle out;
  // p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1.
  __int128 p2 = 1, q2 = 0, p1 = 0, q1 = 1;
  auto quotient = [&](int k) -> __int128 {
    if (growth.kind == Growth::Golden) {
      return 1;
    }
    return k == 1 ? growth.seed : q1 * q1 + 1;
  };
  for (int k = 1; k <= levels + 1; ++k) {
    if (k == levels + 1) {
      // Only needed approximately, and may overflow any integer type.
      const long double q1l = static_cast<long double>(q1);
      const long double a = growth.kind == Growth::Golden ? 1.0L : (k == 1 ? growth.seed : q1l * q1l + 1.0L);
      out.next_denominator = a * q1l + static_cast<long double>(q2);
      break;
    }
    const __int128 a = quotient(k);
    const __int128 p = a * p1 + p2;
    const __int128 q = a * q1 + q2;
    if (q > kExactLimit || a > kExactLimit) {
      throw OverflowError("level " + std::to_string(k) + " denominator exceeds 2^53");
    }
    out.partial_quotients.push_back(static_cast<std::int64_t>(a));
    out.convergents.emplace_back(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  }

  const auto [pN, qN] = out.convergents.back();
  out.theta = static_cast<double>(kTwoPiL * static_cast<long double>(pN) / static_cast<long double>(qN));

  // p_N/q_N - p_k/q_k = sum_{j=k}^{N-1} (-1)^j / (q_j q_{j+1}).
  const int N = levels;
  for (int k = 1; k <= N; ++k) {
    long double d = 0.0L;
    for (int j = k; j < N; ++j) {
      const long double term = 1.0L / (static_cast<long double>(out.q(j)) * out.q(j + 1));
      d += (j % 2 == 0) ? term : -term;
    }
    out.ideal_distance.push_back(kTwoPiL * out.q(k) * std::fabs(d));
    out.realized_distance.push_back(std::abs(times(out.theta, out.q(k)).value()));
  }

  out.liouville_score = INFINITY;
  std::vector<long double> qs;
  for (const auto& c : out.convergents) qs.push_back(static_cast<long double>(c.second));
  qs.push_back(out.next_denominator);
  for (std::size_t k = 0; k + 1 < qs.size(); ++k) {
    if (qs[k] > 1.0L) {
      out.liouville_score = std::min(out.liouville_score,
                                     static_cast<double>(std::log(qs[k + 1]) / std::log(qs[k])));
    }
  }
  return out;
}

TrigPoly RoughSolution::log_phase() const {
  TrigPoly p;
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    p.add(freqs[k], 0.5 * amps[k]);
    p.add(-freqs[k], 0.5 * amps[k]);
  }
  return p;
}

RoughSolution rough_solution(const LiouvilleAngle& angle, std::optional<int> levels,
                             std::optional<std::vector<double>> amps) {
  const int N = levels.value_or(angle.levels());
  if (N < 0 || N > angle.levels()) {
    throw PreconditionError("rough_solution: level out of range");
  }
  RoughSolution g;
  for (int k = 1; k <= N; ++k) {
    g.freqs.push_back(angle.q(k));
  }
  if (amps) {
    if (static_cast<int>(amps->size()) != N) {
      throw PreconditionError("rough_solution: need one amplitude per level");
    }
    g.amps = std::move(*amps);
  } else {
    for (int k = 1; k <= N; ++k) {
      g.amps.push_back(1.0 / k);
    }
  }
  return g;
}

FurstenbergMap furstenberg_f(double theta, const RoughSolution& g, double nu) {
  const WindingMap gm = g.map();
  FurstenbergMap out;
  out.f = gm * conj(rotate(gm, theta));
  out.f_tilde = WindingMap::constant(nu) * out.f;
  if (g.levels() > 0) {
    const std::size_t last = g.freqs.size() - 1;
    out.tail_bound = 2.0 * std::abs(g.amps[last]) * std::abs(times(theta, g.freqs[last]).value());
  }
  return out;
}

EigenvectorResult eigenvector(double theta, const RoughSolution& g, double nu, double alpha,
                              std::optional<double> map_theta) {
  const FurstenbergMap fm = furstenberg_f(theta, g, nu);
  const AnzaiMap A(map_theta.value_or(theta), alpha, fm.f_tilde);
  std::map<std::int64_t, TrigPoly> row;
  row.emplace(1, fourier(g.map(), A.options()));
  GNSVector v(from_modes(alpha, row));
  const cplx lambda = unit(nu);
  const double r = eigen_residual(A, v, lambda);
  return {std::move(v), lambda, r};
}

std::vector<TrigPoly> gk_functions(double theta, const RoughSolution& g, const TrigPoly& h,
                                   std::span<const std::int64_t> ks, double alpha, double tol) {
  const FurstenbergMap fm = furstenberg_f(theta, g, 0.0);
  const AnzaiMap A(theta, alpha, fm.f);
  const WindingMap gm = g.map();
  std::map<std::int64_t, TrigPoly> hv;
  hv.emplace(1, h);
  const NCPoly a = from_modes(alpha, hv);
  std::vector<TrigPoly> out;
  for (std::int64_t k : ks) {
    // (c(U) V) V^{-1} = c(U): the mode-1 coefficient is G_k itself.
    const TrigPoly via_map = coeff_fn(apply_iter(A, a, k), 1);
    const Angle shift = times(theta, k);
    const TrigPoly via_formula = rotate(h, shift) * fourier(gm * conj(rotate(gm, shift)), A.options());
    const double diff = max_coeff_diff(via_map, via_formula);
    if (diff > tol) {
      throw ConsistencyError("G_" + std::to_string(k) + " paths differ by " + std::to_string(diff));
    }
    out.push_back(via_map);
  }
  return out;
}

cplx h_overlap(const TrigPoly& h, const RoughSolution& g) {
  const TrigPoly gh = expand(g.map()).coeffs;
  cplx s{};
  for (const auto& [k, c] : h.coeffs()) {
    s += c * std::conj(gh.coeff(k));
  }
  return s;
}

OscillationResult oscillation_stat(double theta, const WindingMap& f_tilde, const TrigPoly& h,
                                   double nu, std::int64_t n_min, std::int64_t n_max, int points) {
  if (n_min < 1 || n_max < n_min || points < 1) {
    throw PreconditionError("oscillation_stat: bad window");
  }
  OscillationResult out;
  for (std::int64_t n = n_min; n <= n_max; n *= 2) {
    out.ns.push_back(n);
  }
  for (int j = 0; j < points; ++j) {
    out.points.push_back(GridFn::node(j, points));
  }
  const AnzaiMap A(theta, 0.0, f_tilde);
  std::map<std::int64_t, TrigPoly> hv;
  hv.emplace(1, h);
  const auto cps = cesaro_pointwise(A, from_modes(0.0, hv), unit(nu), out.points, out.ns);
  for (const auto& cp : cps) {
    out.values.push_back(cp.modes.at(1));
  }
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    for (std::size_t j = i + 1; j < out.values.size(); ++j) {
      out.osc = std::max(out.osc, (out.values[i] - out.values[j]).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

}  // namespace nct
