#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "nctorus/angle.hpp"

namespace nct {

/// Finitely supported trigonometric polynomial sum_k c_k z^k on the unit
/// circle, z = e^{it}. Coefficients are kept in frequency order so every
/// reduction over them is deterministic.
class TrigPoly {
 public:
  using Coeffs = std::map<std::int64_t, cplx>;

  TrigPoly() = default;
  explicit TrigPoly(Coeffs coeffs) : coeffs_(std::move(coeffs)) {}

  static TrigPoly constant(cplx c);
  static TrigPoly monomial(std::int64_t k, cplx c = 1.0);

  const Coeffs& coeffs() const { return coeffs_; }
  cplx coeff(std::int64_t k) const;
  void set(std::int64_t k, cplx c) { coeffs_[k] = c; }
  void add(std::int64_t k, cplx c) { coeffs_[k] += c; }

  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  std::int64_t min_freq() const;
  std::int64_t max_freq() const;
  /// max |k| over the support, 0 for the zero polynomial.
  std::int64_t radius() const;
  /// max_freq - min_freq, 0 for the zero polynomial.
  std::int64_t span() const;

  cplx operator()(double t) const;
  cplx operator()(const Angle& t) const;

  /// True when c_{-k} = conj(c_k) for every k within `tol`.
  bool is_real(double tol = 1e-12) const;
  double l2_norm_squared() const;

  /// Drops entries with |c| <= tol.
  TrigPoly& prune(double tol);

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(cplx s);

 private:
  Coeffs coeffs_;
};

TrigPoly operator+(TrigPoly a, const TrigPoly& b);
TrigPoly operator-(TrigPoly a, const TrigPoly& b);
TrigPoly operator*(TrigPoly a, cplx s);
TrigPoly operator*(cplx s, TrigPoly a);
/// Pointwise product (coefficient convolution).
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

/// z -> conj(p(z)).
TrigPoly conj(const TrigPoly& p);
/// rotate(p, beta)(e^{it}) = p(e^{i(t+beta)}).
TrigPoly rotate(const TrigPoly& p, const Angle& beta);
TrigPoly rotate(const TrigPoly& p, double beta);
/// Largest |a_k - b_k| over the union of supports.
double max_coeff_diff(const TrigPoly& a, const TrigPoly& b);

/// Continuous circle-valued map f(e^{it}) = exp(i(w t + c + h(t))) held in
/// log form: integer winding w, constant c, real trig series h without a
/// constant term. |f| = 1 by construction and products are exact additions.
class WindingMap {
 public:
  WindingMap() = default;
  /// `phase` must be real; its k = 0 coefficient is folded into the constant.
  WindingMap(std::int64_t winding, const TrigPoly& phase, Angle constant = {});

  static WindingMap character(cplx z0, std::int64_t winding);
  static WindingMap constant(double angle);

  std::int64_t winding() const { return winding_; }
  const TrigPoly& phase() const { return phase_; }
  const Angle& offset() const { return constant_; }

  /// The total phase angle w t + c + h(t), reduced.
  Angle angle_at(const Angle& t) const;
  cplx operator()(double t) const;
  cplx operator()(const Angle& t) const;

  WindingMap& operator*=(const WindingMap& other);

 private:
  std::int64_t winding_ = 0;
  TrigPoly phase_;
  Angle constant_;
};

WindingMap operator*(WindingMap f, const WindingMap& g);
WindingMap conj(const WindingMap& f);
WindingMap rotate(const WindingMap& f, const Angle& beta);
WindingMap rotate(const WindingMap& f, double beta);

/// Samples of a function at t_j = 2 pi j / G, G a power of two.
struct GridFn {
  Eigen::VectorXcd samples;

  Eigen::Index size() const { return samples.size(); }
  static double node(Eigen::Index j, Eigen::Index g) {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(g);
  }
};

GridFn sample(const TrigPoly& p, Eigen::Index g);
GridFn sample(const WindingMap& f, Eigen::Index g);

/// Degree of a unimodular sampled map. Throws AliasingError when two
/// successive samples differ in argument by pi or more, PreconditionError
/// when a sample is not unimodular within 1e-6.
std::int64_t winding_number(const GridFn& samples);

/// Truncated Fourier series together with the l2 mass it leaves out.
struct FourierSeries {
  TrigPoly coeffs;
  double tail_mass = 0.0;
};

/// Coefficients in [-K, K] of sampled data via FFT; tail_mass is the l2
/// mass of the remaining FFT bins.
FourierSeries to_fourier(const GridFn& samples, std::int64_t trunc);
/// FFT route: sample f on `grid` points and keep frequencies in [-K, K].
FourierSeries to_fourier(const WindingMap& f, Eigen::Index grid, std::int64_t trunc);
/// Sparse route: exact Jacobi-Anger product expansion of exp(i h), kept
/// while coefficients exceed `drop`. Frequencies may be arbitrarily large.
/// tail_mass = 1 - sum |c_k|^2 (Parseval, since |f| = 1).
FourierSeries expand(const WindingMap& f, double drop = 1e-17);

struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bracket of sup_{|z|=1} |p(z)| from G samples and the derivative bound.
/// Requires G >= 8 * span(p); p is recentred on its support before the
/// derivative term is formed (|z^{-c} p(z)| = |p(z)|).
NormBounds sup_norm(const TrigPoly& p, Eigen::Index grid);

/// Smallest power of two >= max(minimum, 8 * span(p)).
Eigen::Index grid_for(const TrigPoly& p, Eigen::Index minimum);

}  // namespace nct
