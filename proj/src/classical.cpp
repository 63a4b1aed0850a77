#include "nctorus/classical.hpp"

#include <cmath>
#include <future>

#include "nctorus/errors.hpp"

namespace nct {

namespace {

void add_to(double& hi, double& lo, double x) {
  const double s = hi + x;
  const double bp = s - hi;
  const double err = (hi - (s - bp)) + (x - bp);
  hi = s;
  lo += err;
}

void add_to(double& hi, double& lo, const Angle& a) {
  add_to(hi, lo, a.hi);
  add_to(hi, lo, a.lo);
}

// Kahan-compensated complex sum.
struct Compensated {
  cplx sum{};
  cplx carry{};

  void add(cplx x) {
    const cplx y = x - carry;
    const cplx t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

cplx TorusPoint::character(std::int64_t p, std::int64_t q) const {
  return (times(s_angle(), p) + times(t_angle(), q)).phasor();
}

CircleFunction log_of(const WindingMap& f) {
  return [f](const Angle& s) { return f.angle_at(s); };
}

TorusPoint anzai_step(double theta, const CircleFunction& h, const TorusPoint& p) {
  TorusPoint q = p;
  add_to(q.t, q.t_lo, h(p.s_angle()));
  add_to(q.s, q.s_lo, theta);
  return q;
}

TorusPoint anzai_step_inverse(double theta, const CircleFunction& h, const TorusPoint& p) {
  TorusPoint q = p;
  add_to(q.s, q.s_lo, -theta);
  add_to(q.t, q.t_lo, -h(q.s_angle()));
  return q;
}

BirkhoffResult birkhoff(double theta, const CircleFunction& h, TorusPoint start,
                        std::pair<std::int64_t, std::int64_t> character, cplx lambda,
                        std::int64_t N) {
  if (N < 1) {
    throw PreconditionError("birkhoff needs N >= 1");
  }
  const Angle lam = reduce(std::arg(lambda));
  BirkhoffResult out;
  Compensated acc;
  TorusPoint p = start;
  std::int64_t next = 1;
  for (std::int64_t k = 0; k < N; ++k) {
    acc.add(times(lam, -k).phasor() * p.character(character.first, character.second));
    if (k + 1 == next || k + 1 == N) {
      out.checkpoints.emplace_back(k + 1, acc.sum / static_cast<double>(k + 1));
      if (k + 1 == next) {
        next *= 2;
      }
    }
    p = anzai_step(theta, h, p);
  }
  out.average = acc.sum / static_cast<double>(N);
  return out;
}

cplx birkhoff(double theta, const CircleFunction& h, TorusPoint start, const NCPoly& a,
              cplx lambda, std::int64_t N) {
  if (N < 1) {
    throw PreconditionError("birkhoff needs N >= 1");
  }
  const Angle lam = reduce(std::arg(lambda));
  Compensated acc;
  TorusPoint p = start;
  for (std::int64_t k = 0; k < N; ++k) {
    cplx value{};
    for (const auto& [idx, c] : a.coeffs()) {
      value += c * p.character(idx.first, idx.second);
    }
    acc.add(times(lam, -k).phasor() * value);
    p = anzai_step(theta, h, p);
  }
  return acc.sum / static_cast<double>(N);
}

double crosscheck_alpha0(const AnzaiMap& A, const NCPoly& a, std::int64_t N,
                         std::span<const TorusPoint> samples, unsigned threads) {
  if (A.alpha() != 0.0 || a.alpha() != 0.0) {
    throw AlphaMismatch("crosscheck_alpha0 needs alpha = 0");
  }
  CesaroOptions opts;
  opts.norms = false;
  const std::int64_t schedule[] = {N};
  const NCPoly M = cesaro(A, a, 1.0, schedule, opts).checkpoints.front().average;
  const CircleFunction h = log_of(A.f());

  auto deviation = [&](const TorusPoint& p) {
    cplx nc{};
    for (const auto& [idx, c] : M.coeffs()) {
      nc += c * p.character(idx.first, idx.second);
    }
    return std::abs(nc - birkhoff(A.theta(), h, p, a, 1.0, N));
  };

  std::vector<double> devs(samples.size());
  const std::size_t workers = std::max(1u, threads);
  for (std::size_t start = 0; start < samples.size(); start += workers) {
    std::vector<std::future<double>> jobs;
    const std::size_t end = std::min(samples.size(), start + workers);
    for (std::size_t i = start; i < end; ++i) {
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                deviation, std::cref(samples[i])));
    }
    for (std::size_t i = start; i < end; ++i) {
      devs[i] = jobs[i - start].get();
    }
  }
  double worst = 0.0;
  for (double d : devs) {
    worst = std::max(worst, d);
  }
  return worst;
}

ProcessSystem<Angle> rotation_process(double theta, std::function<cplx(const Angle&)> fiber) {
  const Angle step = reduce(theta);
  return {
      [step](const Angle& x) { return x + step; },
      [](std::mt19937_64& rng) { return reduce(std::uniform_real_distribution<double>(-kPi, kPi)(rng)); },
      std::move(fiber),
  };
}

ProcessSystem<std::array<Angle, 2>> product_rotation_process(
    double theta1, double theta2, std::function<cplx(const std::array<Angle, 2>&)> fiber) {
  const Angle a = reduce(theta1), b = reduce(theta2);
  return {
      [a, b](const std::array<Angle, 2>& x) { return std::array<Angle, 2>{x[0] + a, x[1] + b}; },
      [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(-kPi, kPi);
        const double x = u(rng);
        return std::array<Angle, 2>{reduce(x), reduce(u(rng))};
      },
      std::move(fiber),
  };
}

}  // namespace nct
