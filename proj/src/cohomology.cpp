#include "nctorus/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <Eigen/SVD>
#include <Eigen/SparseCholesky>

#include "nctorus/errors.hpp"

namespace nct {

Eigen::SparseMatrix<cplx> TransferMatrix::fixed_equation() const {
  Eigen::SparseMatrix<cplx> id(op.rows(), op.cols());
  std::vector<Eigen::Triplet<cplx>> diag;
  for (std::int64_t k = -trunc; k <= trunc; ++k) {
    diag.emplace_back(row(k), col(k), 1.0);
  }
  id.setFromTriplets(diag.begin(), diag.end());
  return op - id;
}

Eigen::VectorXcd TransferMatrix::coefficients(const TrigPoly& g) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(op.cols());
  for (const auto& [k, c] : g.coeffs()) {
    if (std::abs(k) <= trunc) {
      v(col(k)) = c;
    }
  }
  return v;
}

TransferMatrix build_matrix(double theta, const TrigPoly& fn, std::int64_t trunc) {
  const std::int64_t b = fn.radius();
  if (4 * b > trunc) {
    throw TruncationError("f_n has support radius " + std::to_string(b) + " > K/4 with K = " +
                          std::to_string(trunc));
  }
  TransferMatrix T{theta, trunc, b, {}};
  const Eigen::Index rows = 2 * (trunc + b) + 1, cols = 2 * trunc + 1;
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(static_cast<std::size_t>(cols) * fn.size());
  for (std::int64_t k = -trunc; k <= trunc; ++k) {
    const cplx rot = phase(theta, k);
    for (const auto& [d, c] : fn.coeffs()) {
      entries.emplace_back(T.row(k + d), T.col(k), rot * c);
    }
  }
  T.op.resize(rows, cols);
  T.op.setFromTriplets(entries.begin(), entries.end());
  return T;
}

namespace {

TrigPoly as_trig(const TransferMatrix& T, const Eigen::VectorXcd& v) {
  TrigPoly g;
  for (std::int64_t k = -T.trunc; k <= T.trunc; ++k) {
    g.set(k, v(T.col(k)));
  }
  return g;
}

struct Smallest {
  double gap;
  Eigen::VectorXcd vector;
  bool converged;
};

// Smallest singular value of A by inverse iteration on A^* A. ||A x|| is an
// upper bound for the gap at every step and decreases monotonically.
Smallest smallest_singular_sparse(const Eigen::SparseMatrix<cplx>& A) {
  Eigen::SparseMatrix<cplx> N = A.adjoint() * A;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<cplx>> solver(N);
  if (solver.info() != Eigen::Success) {
    // Exactly singular normal matrix: shift by a negligible multiple of the scale.
    const double shift = 1e-14 * N.diagonal().real().maxCoeff();
    Eigen::SparseMatrix<cplx> I(N.rows(), N.cols());
    I.setIdentity();
    N += shift * I;
    solver.compute(N);
  }
  const Eigen::Index m = A.cols();
  Eigen::VectorXcd x(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    x(j) = std::polar(1.0 + 0.5 * std::sin(0.71 * static_cast<double>(j)), 0.37 * static_cast<double>(j));
  }
  x.normalize();
  double gap = (A * x).norm();
  for (int it = 0; it < 300; ++it) {
    Eigen::VectorXcd y = solver.solve(x);
    if (!y.allFinite() || y.norm() == 0.0) {
      break;
    }
    y.normalize();
    const double next = (A * y).norm();
    x = std::move(y);
    const double change = std::abs(next - gap);
    gap = next;
    if (it >= 3 && (change <= 1e-11 * gap || gap < 1e-15)) {
      return {gap, x, true};
    }
  }
  return {gap, x, false};
}

}  // namespace

KernelGap kernel_gap(const TransferMatrix& T, double kernel_threshold, Eigen::Index dense_limit) {
  const Eigen::SparseMatrix<cplx> A = T.fixed_equation();
  auto [gap, v, converged] = smallest_singular_sparse(A);
  if (!converged && A.cols() <= dense_limit) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(A), Eigen::ComputeThinV);
    const Eigen::Index last = svd.singularValues().size() - 1;
    gap = svd.singularValues()(last);
    v = svd.matrixV().col(last);
  }
  KernelGap out{gap, std::nullopt};
  if (gap < kernel_threshold) {
    out.near_kernel = as_trig(T, v);
  }
  return out;
}

CharacterVerdict character_decision(cplx z0, std::int64_t winding, double theta, double alpha,
                                    std::int64_t n, std::int64_t k_diag, double tol) {
  (void)alpha;  // constant maps have alpha-independent cocycles: f_n = z0^n
  if (n == 0) {
    throw PreconditionError("character_decision needs n != 0");
  }
  if (winding != 0) {
    return {};
  }
  const Angle base = times(std::arg(z0), n);
  const Angle th = reduce(theta);
  // Scan outward so the smallest |k| wins.
  for (std::int64_t r = 0; r <= k_diag; ++r) {
    for (std::int64_t k : {r, -r}) {
      if (std::abs((base + times(th, k)).value()) < tol) {
        return {true, k};
      }
      if (r == 0) {
        break;
      }
    }
  }
  return {};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ErgodicEvidence:
      return "ErgodicEvidence";
    case Verdict::ContinuousObstruction:
      return "ContinuousObstruction";
    case Verdict::RoughObstruction:
      return "RoughObstruction";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

double modulus_flatness(const TrigPoly& g, Eigen::Index grid) {
  const Eigen::ArrayXd mod = sample(g, grid).samples.cwiseAbs().array();
  const double mean = mod.mean();
  if (mean == 0.0) {
    return INFINITY;
  }
  const double var = (mod - mean).square().mean();
  return std::sqrt(var) / mean;
}

namespace {

ModeReport run_mode(const AnzaiMap& A, std::int64_t n, std::span<const std::int64_t> k_schedule,
                    const VerdictOptions& opts) {
  TrigPoly fn = fourier(A.alpha_cocycle(n), A.options());
  fn.prune(opts.coefficient_floor);
  ModeReport r;
  r.bandwidth = fn.radius();
  KernelGap last;
  std::int64_t last_k = 0;
  for (std::int64_t K : k_schedule) {
    last = kernel_gap(build_matrix(A.theta(), fn, K), opts.kernel_threshold);
    const bool stable = !r.gaps.empty() &&
                        std::abs(last.gap - r.gaps.back().second) <
                            opts.stabilization * std::max(r.gaps.back().second, 1e-300);
    const bool both_small = !r.gaps.empty() && last.near_kernel &&
                            r.gaps.back().second < opts.kernel_threshold;
    r.gaps.emplace_back(K, last.gap);
    last_k = K;
    if (stable || both_small) {
      break;
    }
  }
  r.gap = last.gap;
  r.near_kernel = last.near_kernel;
  if (r.near_kernel) {
    const TrigPoly& g = *r.near_kernel;
    double total = 0.0, tail = 0.0;
    for (const auto& [k, c] : g.coeffs()) {
      total += std::norm(c);
      if (2 * std::abs(k) > last_k) {
        tail += std::norm(c);
      }
    }
    r.tail_norm = std::sqrt(tail / total);
    r.modulus_flatness = modulus_flatness(g);
    if (*r.tail_norm < opts.tail_threshold) {
      r.verdict = Verdict::ContinuousObstruction;
    } else if (*r.modulus_flatness < opts.flatness_threshold) {
      r.verdict = Verdict::RoughObstruction;
    } else {
      r.verdict = Verdict::Inconclusive;
    }
  } else if (r.gap >= opts.gap_threshold ||
             static_cast<double>(2 * last_k + 1) * r.gap >= opts.scaled_gap_threshold) {
    r.verdict = Verdict::ErgodicEvidence;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

}  // namespace

ErgodicityReport verdict(double theta, double alpha, const WindingMap& f,
                         std::span<const std::int64_t> n_range,
                         std::span<const std::int64_t> k_schedule, const VerdictOptions& opts) {
  if (k_schedule.empty()) {
    throw PreconditionError("empty K schedule");
  }
  for (std::int64_t n : n_range) {
    if (n == 0) {
      throw PreconditionError("n_range must exclude 0");
    }
  }
  const AnzaiMap A(theta, alpha, f);
  std::vector<ModeReport> results(n_range.size());
  const std::size_t workers = std::max(1u, opts.threads);
  for (std::size_t start = 0; start < n_range.size(); start += workers) {
    std::vector<std::future<ModeReport>> jobs;
    const std::size_t end = std::min(n_range.size(), start + workers);
    for (std::size_t i = start; i < end; ++i) {
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                run_mode, std::cref(A), n_range[i], k_schedule, std::cref(opts)));
    }
    for (std::size_t i = start; i < end; ++i) {
      results[i] = jobs[i - start].get();
    }
  }

  ErgodicityReport report;
  bool all_evidence = true, continuous = false, rough = false;
  for (std::size_t i = 0; i < n_range.size(); ++i) {
    const Verdict v = results[i].verdict;
    continuous |= v == Verdict::ContinuousObstruction;
    rough |= v == Verdict::RoughObstruction;
    all_evidence &= v == Verdict::ErgodicEvidence;
    report.per_n.emplace(n_range[i], std::move(results[i]));
  }
  report.verdict = continuous     ? Verdict::ContinuousObstruction
                   : rough        ? Verdict::RoughObstruction
                   : all_evidence ? Verdict::ErgodicEvidence
                                  : Verdict::Inconclusive;
  return report;
}

}  // namespace nct
