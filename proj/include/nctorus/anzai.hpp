#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nctorus/circle.hpp"
#include "nctorus/nc_poly.hpp"

namespace nct {

/// How cocycles are turned into Fourier coefficients.
struct FourierOptions {
  enum class Route { Auto, Sparse, Grid };

  Route route = Route::Auto;
  Eigen::Index grid = 4096;
  std::int64_t trunc = 512;
  double tail_tol = 1e-8;
  /// Auto picks the sparse expansion when the phase has at most this many
  /// positive frequencies, the FFT otherwise.
  std::size_t sparse_max_terms = 32;
};

/// Fourier coefficients of a unimodular map. Throws TailTooLarge when the
/// dropped l2 mass exceeds opts.tail_tol.
TrigPoly fourier(const WindingMap& f, const FourierOptions& opts);

/// prod_{j<k} F(e^{i j step} z) by binary doubling, O(log k) products.
WindingMap rotated_product(const WindingMap& F, const Angle& step, std::int64_t k);

/// The skew product U -> e^{i theta} U, V -> f(U) V on the rotation algebra.
/// Immutable apart from a memo of cocycles, which is safe to share between
/// threads; copies share the memo.
class AnzaiMap {
 public:
  AnzaiMap(double theta, double alpha, WindingMap f, FourierOptions opts = {});

  double theta() const { return theta_; }
  double alpha() const { return alpha_; }
  const WindingMap& f() const { return f_; }
  const FourierOptions& options() const { return opts_; }

  /// f_n: the multiplier of the V^n mode under one application.
  WindingMap alpha_cocycle(std::int64_t n) const;
  /// f_n^{[k]}(z) = prod_{j<k} f_n(e^{i j theta} z), k >= 0.
  WindingMap theta_cocycle(std::int64_t n, std::int64_t k) const;
  /// Fourier coefficients of theta_cocycle(n, k).
  TrigPoly multiplier(std::int64_t n, std::int64_t k) const;

 private:
  struct Memo;

  double theta_;
  double alpha_;
  WindingMap f_;
  FourierOptions opts_;
  std::shared_ptr<Memo> memo_;
};

/// theta' = -theta, f' = conj(f o R_{-theta}).
AnzaiMap inverse(const AnzaiMap& A);

NCPoly apply(const AnzaiMap& A, const NCPoly& x);
/// Phi^k(x) for any integer k; negative k goes through inverse(A).
NCPoly apply_iter(const AnzaiMap& A, const NCPoly& x, std::int64_t k);

/// Successive iterates Phi^0(a), Phi^1(a), ... One cocycle product per mode
/// and step; nothing is re-iterated from scratch.
class IterateStream {
 public:
  IterateStream(const AnzaiMap& A, const NCPoly& a);

  std::int64_t step() const { return k_; }
  /// Mode n of Phi^k(a), as a polynomial in U.
  TrigPoly mode(std::size_t i) const;
  std::size_t mode_count() const { return modes_.size(); }
  std::int64_t mode_index(std::size_t i) const { return modes_[i].n; }
  NCPoly current() const;
  void advance();

 private:
  struct Mode {
    std::int64_t n;
    TrigPoly c;       // coefficient function of a
    WindingMap f_n;   // one-step multiplier
    WindingMap cocycle;  // f_n^{[k]}
  };

  const AnzaiMap* map_;
  double alpha_;
  std::int64_t k_ = 0;
  std::vector<Mode> modes_;
};

struct CesaroCheckpoint {
  std::int64_t n = 0;
  NCPoly average;
  NormBounds bounds;
  /// ||pi(M) xi - limit xi||, or ||pi(M) xi|| without a limit.
  double gns_norm = 0.0;
};

struct CesaroResult {
  cplx lambda;
  std::vector<CesaroCheckpoint> checkpoints;
};

struct CesaroOptions {
  std::optional<NCPoly> limit;
  bool norms = true;
  Eigen::Index norm_grid = 4096;
};

/// M_{a,lambda}(N) = (1/N) sum_{k<N} lambda^{-k} Phi^k(a) at each N of an
/// increasing schedule, by a single streaming pass.
CesaroResult cesaro(const AnzaiMap& A, const NCPoly& a, cplx lambda,
                    std::span<const std::int64_t> schedule, const CesaroOptions& opts = {});
/// lambda = e^{i phi} given by its angle. Weights e^{-i k phi} then carry no
/// k * ulp drift from rounding lambda, so e.g. lambda = e^{i theta} cancels
/// the rotation of U exactly up to rounding at every N.
CesaroResult cesaro(const AnzaiMap& A, const NCPoly& a, const Angle& phi,
                    std::span<const std::int64_t> schedule, const CesaroOptions& opts = {});

/// The same averages evaluated pointwise: for each checkpoint and V-mode,
/// the coefficient function of M at the given angles. Cocycles stay in log
/// form, so arbitrarily large frequencies cost nothing.
struct PointwiseCheckpoint {
  std::int64_t n = 0;
  std::map<std::int64_t, Eigen::VectorXcd> modes;
};

std::vector<PointwiseCheckpoint> cesaro_pointwise(const AnzaiMap& A, const NCPoly& a, cplx lambda,
                                                  std::span<const double> points,
                                                  std::span<const std::int64_t> schedule);

}  // namespace nct
