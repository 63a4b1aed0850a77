#include "nctorus/nc_poly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "nctorus/errors.hpp"

namespace nct {

void require_same_alpha(double a, double b) {
  if (std::bit_cast<std::uint64_t>(a) != std::bit_cast<std::uint64_t>(b)) {
    throw AlphaMismatch("alpha mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

NCPoly::NCPoly(double alpha, Coeffs coeffs, double drop)
    : alpha_(alpha), coeffs_(std::move(coeffs)) {
  prune(drop);
}

NCPoly NCPoly::one(double alpha) { return monomial(alpha, 0, 0); }

NCPoly NCPoly::monomial(double alpha, std::int64_t m, std::int64_t n, cplx c) {
  NCPoly x(alpha);
  if (c != 0.0) {
    x.coeffs_.emplace(Index2{m, n}, c);
  }
  return x;
}

cplx NCPoly::coeff(std::int64_t m, std::int64_t n) const {
  const auto it = coeffs_.find({m, n});
  return it == coeffs_.end() ? cplx{} : it->second;
}

NCPoly& NCPoly::prune(double tol) {
  std::erase_if(coeffs_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
  return *this;
}

double NCPoly::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& [idx, c] : coeffs_) {
    s += std::norm(c);
  }
  return s;
}

NCPoly& NCPoly::operator+=(const NCPoly& other) {
  require_same_alpha(alpha_, other.alpha_);
  for (const auto& [idx, c] : other.coeffs_) {
    coeffs_[idx] += c;
  }
  return prune();
}

NCPoly& NCPoly::operator-=(const NCPoly& other) {
  require_same_alpha(alpha_, other.alpha_);
  for (const auto& [idx, c] : other.coeffs_) {
    coeffs_[idx] -= c;
  }
  return prune();
}

NCPoly& NCPoly::operator*=(cplx s) {
  for (auto& kv : coeffs_) {
    kv.second *= s;
  }
  return prune();
}

NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
NCPoly operator*(NCPoly a, cplx s) { return a *= s; }
NCPoly operator*(cplx s, NCPoly a) { return a *= s; }

NCPoly operator*(const NCPoly& x, const NCPoly& y) {
  require_same_alpha(x.alpha(), y.alpha());
  const Angle twist = reduce(-kTwoPi * x.alpha());
  const bool commutative = x.alpha() == 0.0;
  NCPoly::Coeffs out;
  for (const auto& [ix, cx] : x.coeffs()) {
    const std::int64_t b = ix.second;
    for (const auto& [iy, cy] : y.coeffs()) {
      const std::int64_t c = iy.first;
      cplx term = cx * cy;
      if (!commutative && b != 0 && c != 0) {
        term *= times(twist, b * c).phasor();
      }
      out[{ix.first + c, b + iy.second}] += term;
    }
  }
  return NCPoly(x.alpha(), std::move(out));
}

NCPoly adjoint(const NCPoly& x) {
  const Angle twist = reduce(-kTwoPi * x.alpha());
  NCPoly::Coeffs out;
  for (const auto& [idx, c] : x.coeffs()) {
    const auto [m, n] = idx;
    cplx term = std::conj(c);
    if (m != 0 && n != 0) {
      term *= times(twist, m * n).phasor();
    }
    out.emplace(Index2{-m, -n}, term);
  }
  return NCPoly(x.alpha(), std::move(out));
}

cplx trace(const NCPoly& x) { return x.coeff(0, 0); }

TrigPoly coeff_fn(const NCPoly& x, std::int64_t n) {
  TrigPoly p;
  for (const auto& [idx, c] : x.coeffs()) {
    if (idx.second == n) {
      p.set(idx.first, c);
    }
  }
  return p;
}

std::map<std::int64_t, TrigPoly> modes(const NCPoly& x) {
  std::map<std::int64_t, TrigPoly> out;
  for (const auto& [idx, c] : x.coeffs()) {
    out[idx.second].set(idx.first, c);
  }
  return out;
}

NCPoly from_modes(double alpha, const std::map<std::int64_t, TrigPoly>& modes, double drop) {
  NCPoly::Coeffs out;
  for (const auto& [n, p] : modes) {
    for (const auto& [m, c] : p.coeffs()) {
      out.emplace(Index2{m, n}, c);
    }
  }
  return NCPoly(alpha, std::move(out), drop);
}

NormBounds norm_bounds(const NCPoly& x, Eigen::Index grid) {
  NormBounds total;
  for (const auto& [n, p] : modes(x)) {
    const NormBounds b = sup_norm(p, grid_for(p, grid));
    total.lower = std::max(total.lower, b.lower);
    total.upper += b.upper;
  }
  return total;
}

double max_coeff_diff(const NCPoly& a, const NCPoly& b) {
  double worst = 0.0;
  for (const auto& [idx, c] : a.coeffs()) {
    worst = std::max(worst, std::abs(c - b.coeff(idx.first, idx.second)));
  }
  for (const auto& [idx, c] : b.coeffs()) {
    if (!a.coeffs().contains(idx)) {
      worst = std::max(worst, std::abs(c));
    }
  }
  return worst;
}

GaugePair::GaugePair(cplx u, cplx v) : zu(u), zv(v) {
  if (std::abs(std::abs(zu) - 1.0) > 1e-12 || std::abs(std::abs(zv) - 1.0) > 1e-12) {
    throw PreconditionError("gauge pair entries must be unimodular");
  }
}

NCPoly gauge(const NCPoly& x, const GaugePair& g) {
  const Angle au = reduce(std::arg(g.zu));
  const Angle av = reduce(std::arg(g.zv));
  NCPoly::Coeffs out;
  for (const auto& [idx, c] : x.coeffs()) {
    out.emplace(idx, c * (times(au, idx.first) + times(av, idx.second)).phasor());
  }
  return NCPoly(x.alpha(), std::move(out));
}

}  // namespace nct
