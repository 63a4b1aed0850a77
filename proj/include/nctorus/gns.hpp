#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nctorus/anzai.hpp"
#include "nctorus/nc_poly.hpp"

namespace nct {

/// Finitely supported vector sum c_{m,n} e_{m,n} of the GNS space of the
/// trace. Since e_{m,n} = pi(U^m V^n) xi_tau is an orthonormal basis, the
/// vector is the element x with x xi_tau = xi.
class GNSVector {
 public:
  explicit GNSVector(NCPoly x) : x_(std::move(x)) {}

  /// xi_tau = e_{0,0}.
  static GNSVector vacuum(double alpha) { return GNSVector(NCPoly::one(alpha)); }
  static GNSVector basis(double alpha, std::int64_t m, std::int64_t n) {
    return GNSVector(NCPoly::monomial(alpha, m, n));
  }

  const NCPoly& poly() const { return x_; }
  double alpha() const { return x_.alpha(); }
  cplx coeff(std::int64_t m, std::int64_t n) const { return x_.coeff(m, n); }
  double norm_squared() const { return x_.l2_norm_squared(); }
  double norm() const;

 private:
  NCPoly x_;
};

/// <a, b>, linear in the first argument.
cplx inner(const GNSVector& a, const GNSVector& b);
double distance(const GNSVector& a, const GNSVector& b);

/// pi(x) xi.
GNSVector act(const NCPoly& x, const GNSVector& xi);
/// The Koopman isometry to the k-th power.
GNSVector koopman(const AnzaiMap& A, const GNSVector& xi, std::int64_t k);

/// Correlations <V^n xi, xi> for n = 0..N; negative n by conjugation.
struct CorrSeq {
  std::vector<cplx> values;
  std::string descriptor;

  std::int64_t horizon() const { return static_cast<std::int64_t>(values.size()) - 1; }
  cplx at(std::int64_t n) const;
};

CorrSeq correlation(const AnzaiMap& A, const GNSVector& xi, std::int64_t horizon,
                    std::string descriptor = {});

struct AtomEstimate {
  double mass = 0.0;
  /// Running Wiener averages at dyadic N.
  std::vector<std::pair<std::int64_t, cplx>> trace;
};

/// |(1/N) sum_{n<N} lambda^{-n} mu(n)| with N the horizon.
AtomEstimate atom_mass(const CorrSeq& c, cplx lambda);

/// Atom test: the Wiener average exceeds `floor` and its last three dyadic
/// checkpoints agree within `spread` relatively.
bool is_atom(const AtomEstimate& e, double floor = 0.01, double spread = 0.2);

/// Fejer-smoothed spectral density at omega_j = 2 pi j / grid.
std::vector<double> fejer_density(const CorrSeq& c, Eigen::Index grid);

/// Smallest eigenvalue of the (order+1)^2 Toeplitz matrix [mu(i - j)].
double toeplitz_min_eigenvalue(const CorrSeq& c, std::int64_t order);

/// ||V xi - lambda xi|| / ||xi||.
double eigen_residual(const AnzaiMap& A, const GNSVector& xi, cplx lambda);

}  // namespace nct
