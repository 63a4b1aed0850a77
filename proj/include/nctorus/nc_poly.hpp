#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "nctorus/circle.hpp"

namespace nct {

/// Lattice index (m, n) of the monomial U^m V^n.
using Index2 = std::pair<std::int64_t, std::int64_t>;

inline constexpr double kDropTolerance = 1e-14;

/// Finite element sum c_{m,n} U^m V^n of the rotation algebra with
/// UV = e^{2 pi i alpha} VU. The deformation travels with the value, and
/// combining values with different alpha throws AlphaMismatch.
class NCPoly {
 public:
  using Coeffs = std::map<Index2, cplx>;

  explicit NCPoly(double alpha = 0.0) : alpha_(alpha) {}
  NCPoly(double alpha, Coeffs coeffs, double drop = kDropTolerance);

  static NCPoly one(double alpha);
  static NCPoly monomial(double alpha, std::int64_t m, std::int64_t n, cplx c = 1.0);
  static NCPoly U(double alpha) { return monomial(alpha, 1, 0); }
  static NCPoly V(double alpha) { return monomial(alpha, 0, 1); }

  double alpha() const { return alpha_; }
  const Coeffs& coeffs() const { return coeffs_; }
  cplx coeff(std::int64_t m, std::int64_t n) const;
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  void add(std::int64_t m, std::int64_t n, cplx c) { coeffs_[{m, n}] += c; }
  NCPoly& prune(double tol = kDropTolerance);

  /// sum |c_{m,n}|^2, the GNS norm squared of x xi_tau.
  double l2_norm_squared() const;

  NCPoly& operator+=(const NCPoly& other);
  NCPoly& operator-=(const NCPoly& other);
  NCPoly& operator*=(cplx s);

 private:
  double alpha_;
  Coeffs coeffs_;
};

/// Throws AlphaMismatch unless both deformations agree bitwise.
void require_same_alpha(double a, double b);

NCPoly operator+(NCPoly a, const NCPoly& b);
NCPoly operator-(NCPoly a, const NCPoly& b);
NCPoly operator*(NCPoly a, cplx s);
NCPoly operator*(cplx s, NCPoly a);
/// Twisted product: (U^a V^b)(U^c V^d) = e^{-2 pi i alpha b c} U^{a+c} V^{b+d}.
NCPoly operator*(const NCPoly& x, const NCPoly& y);

NCPoly adjoint(const NCPoly& x);
cplx trace(const NCPoly& x);

/// The coefficient function c_{n,x}, as a polynomial in z = U.
TrigPoly coeff_fn(const NCPoly& x, std::int64_t n);
/// All nonzero V-modes at once.
std::map<std::int64_t, TrigPoly> modes(const NCPoly& x);
/// Inverse of modes(): sum_n c_n(U) V^n.
NCPoly from_modes(double alpha, const std::map<std::int64_t, TrigPoly>& modes,
                  double drop = kDropTolerance);

/// lower <= ||x|| <= upper. Each mode is sampled on at least `grid` points,
/// more when its support needs it (grid_for).
NormBounds norm_bounds(const NCPoly& x, Eigen::Index grid = 4096);

double max_coeff_diff(const NCPoly& a, const NCPoly& b);

/// Gauge automorphism U -> zu U, V -> zv V.
struct GaugePair {
  GaugePair(cplx zu, cplx zv);
  cplx zu;
  cplx zv;
};

NCPoly gauge(const NCPoly& x, const GaugePair& g);

}  // namespace nct
