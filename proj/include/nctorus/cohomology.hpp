#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "nctorus/anzai.hpp"
#include "nctorus/circle.hpp"

namespace nct {

/// Truncation of g -> (g o R_theta) f_n on Fourier coefficients. Columns are
/// the frequencies -K..K of g; rows -K-b..K+b hold the whole image, so
/// every row is exact (b = bandwidth of f_n).
struct TransferMatrix {
  double theta = 0.0;
  std::int64_t trunc = 0;
  std::int64_t bandwidth = 0;
  Eigen::SparseMatrix<cplx> op;

  Eigen::Index col(std::int64_t k) const { return k + trunc; }
  Eigen::Index row(std::int64_t k) const { return k + trunc + bandwidth; }
  /// T - I, with I the embedding of columns into rows.
  Eigen::SparseMatrix<cplx> fixed_equation() const;
  Eigen::VectorXcd coefficients(const TrigPoly& g) const;
};

/// Throws TruncationError when the support radius of fn exceeds K/4.
TransferMatrix build_matrix(double theta, const TrigPoly& fn, std::int64_t trunc);

struct KernelGap {
  double gap = 0.0;
  std::optional<TrigPoly> near_kernel;
};

/// Smallest singular value of T - I by inverse iteration on the banded
/// normal equations; a dense SVD takes over when the iteration stalls and
/// the matrix has at most `dense_limit` columns.
KernelGap kernel_gap(const TransferMatrix& T, double kernel_threshold = 1e-6,
                     Eigen::Index dense_limit = 1025);

/// Exact answer for characters f(z) = z0 z^w.
struct CharacterVerdict {
  bool solvable = false;
  std::optional<std::int64_t> frequency;  // the k of the solution z^k
};

CharacterVerdict character_decision(cplx z0, std::int64_t winding, double theta, double alpha,
                                    std::int64_t n, std::int64_t k_diag = 1 << 16,
                                    double tol = 1e-9);

enum class Verdict { ErgodicEvidence, ContinuousObstruction, RoughObstruction, Inconclusive };

std::string to_string(Verdict v);

struct ModeReport {
  std::vector<std::pair<std::int64_t, double>> gaps;  // (K, gap)
  double gap = 0.0;                                   // at the last K run
  std::int64_t bandwidth = 0;
  std::optional<TrigPoly> near_kernel;
  std::optional<double> modulus_flatness;
  std::optional<double> tail_norm;  // l2 norm beyond K/2, unit vector
  Verdict verdict = Verdict::Inconclusive;
};

struct ErgodicityReport {
  std::map<std::int64_t, ModeReport> per_n;
  Verdict verdict = Verdict::Inconclusive;
  bool heuristic = true;
};

struct VerdictOptions {
  double kernel_threshold = 1e-6;
  double gap_threshold = 1e-2;
  /// Evidence also when (2K+1) * gap reaches this: a continuous spectrum
  /// closes the gap like 1/K without any solution.
  double scaled_gap_threshold = 1.0;
  double stabilization = 0.1;
  double tail_threshold = 1e-6;
  double flatness_threshold = 0.05;
  /// f_n coefficients below this are dropped before the bandwidth is read.
  double coefficient_floor = 1e-13;
  unsigned threads = 1;
};

/// std(|g|) / mean(|g|) on a 1024-point grid.
double modulus_flatness(const TrigPoly& g, Eigen::Index grid = 1024);

ErgodicityReport verdict(double theta, double alpha, const WindingMap& f,
                         std::span<const std::int64_t> n_range,
                         std::span<const std::int64_t> k_schedule, const VerdictOptions& opts = {});

}  // namespace nct
