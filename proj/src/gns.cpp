#include "nctorus/gns.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nctorus/errors.hpp"

namespace nct {

double GNSVector::norm() const { return std::sqrt(norm_squared()); }

cplx inner(const GNSVector& a, const GNSVector& b) {
  require_same_alpha(a.alpha(), b.alpha());
  cplx s{};
  for (const auto& [idx, c] : a.poly().coeffs()) {
    s += c * std::conj(b.coeff(idx.first, idx.second));
  }
  return s;
}

double distance(const GNSVector& a, const GNSVector& b) {
  return std::sqrt((a.poly() - b.poly()).l2_norm_squared());
}

GNSVector act(const NCPoly& x, const GNSVector& xi) { return GNSVector(x * xi.poly()); }

GNSVector koopman(const AnzaiMap& A, const GNSVector& xi, std::int64_t k) {
  return GNSVector(apply_iter(A, xi.poly(), k));
}

cplx CorrSeq::at(std::int64_t n) const {
  return n >= 0 ? values.at(static_cast<std::size_t>(n))
                : std::conj(values.at(static_cast<std::size_t>(-n)));
}

CorrSeq correlation(const AnzaiMap& A, const GNSVector& xi, std::int64_t horizon,
                    std::string descriptor) {
  if (xi.norm_squared() == 0.0) {
    throw PreconditionError("correlation of the zero vector");
  }
  if (horizon < 0) {
    throw PreconditionError("negative correlation horizon");
  }
  CorrSeq out{{}, std::move(descriptor)};
  out.values.reserve(static_cast<std::size_t>(horizon) + 1);
  IterateStream stream(A, xi.poly());
  for (std::int64_t k = 0; k <= horizon; ++k) {
    cplx s{};
    for (std::size_t i = 0; i < stream.mode_count(); ++i) {
      const std::int64_t n = stream.mode_index(i);
      const TrigPoly c = stream.mode(i);
      for (const auto& [m, v] : c.coeffs()) {
        s += v * std::conj(xi.coeff(m, n));
      }
    }
    out.values.push_back(k == 0 ? cplx(xi.norm_squared()) : s);
    stream.advance();
  }
  return out;
}

AtomEstimate atom_mass(const CorrSeq& c, cplx lambda) {
  const std::int64_t N = c.horizon();
  if (N < 64) {
    throw PreconditionError("atom_mass needs a horizon of at least 64");
  }
  const Angle lam = reduce(std::arg(lambda));
  AtomEstimate out;
  cplx sum{};
  std::int64_t next = 64;
  for (std::int64_t n = 0; n < N; ++n) {
    sum += times(lam, -n).phasor() * c.values[static_cast<std::size_t>(n)];
    if (n + 1 == next || n + 1 == N) {
      out.trace.emplace_back(n + 1, sum / static_cast<double>(n + 1));
      next *= 2;
    }
  }
  out.mass = std::abs(out.trace.back().second);
  return out;
}

bool is_atom(const AtomEstimate& e, double floor, double spread) {
  if (e.mass <= floor || e.trace.size() < 3) {
    return false;
  }
  double lo = INFINITY, hi = 0.0;
  for (auto it = e.trace.end() - 3; it != e.trace.end(); ++it) {
    lo = std::min(lo, std::abs(it->second));
    hi = std::max(hi, std::abs(it->second));
  }
  return hi - lo < spread * hi;
}

std::vector<double> fejer_density(const CorrSeq& c, Eigen::Index grid) {
  const std::int64_t N = c.horizon();
  std::vector<double> out(static_cast<std::size_t>(grid));
  for (Eigen::Index j = 0; j < grid; ++j) {
    const double omega = GridFn::node(j, grid);
    // mu(0) + 2 Re sum_{0<n<N} (1 - n/N) mu(n) e^{-i n omega}
    double s = c.values[0].real();
    for (std::int64_t n = 1; n < N; ++n) {
      const double w = 1.0 - static_cast<double>(n) / static_cast<double>(N);
      s += 2.0 * w * (c.values[static_cast<std::size_t>(n)] * times(omega, -n).phasor()).real();
    }
    out[static_cast<std::size_t>(j)] = s / kTwoPi;
  }
  return out;
}

double toeplitz_min_eigenvalue(const CorrSeq& c, std::int64_t order) {
  if (order > c.horizon()) {
    throw PreconditionError("Toeplitz order exceeds the correlation horizon");
  }
  const Eigen::Index size = order + 1;
  Eigen::MatrixXcd T(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      T(i, j) = c.at(i - j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(T, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double eigen_residual(const AnzaiMap& A, const GNSVector& xi, cplx lambda) {
  const double norm = xi.norm();
  if (norm == 0.0) {
    throw PreconditionError("eigen_residual of the zero vector");
  }
  // Unpruned difference: residuals near the drop tolerance must not vanish.
  const NCPoly image = apply(A, xi.poly());
  NCPoly::Coeffs diff = image.coeffs();
  for (const auto& [idx, c] : xi.poly().coeffs()) {
    diff[idx] -= lambda * c;
  }
  double s = 0.0;
  for (const auto& kv : diff) {
    s += std::norm(kv.second);
  }
  return std::sqrt(s) / norm;
}

}  // namespace nct
