#include "nctorus/circle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <unsupported/Eigen/FFT>

#include "nctorus/errors.hpp"

namespace nct {

// ---------------------------------------------------------------- TrigPoly

TrigPoly TrigPoly::constant(cplx c) { return monomial(0, c); }

TrigPoly TrigPoly::monomial(std::int64_t k, cplx c) {
  TrigPoly p;
  if (c != 0.0) {
    p.coeffs_.emplace(k, c);
  }
  return p;
}

cplx TrigPoly::coeff(std::int64_t k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx{} : it->second;
}

std::int64_t TrigPoly::min_freq() const {
  return coeffs_.empty() ? 0 : coeffs_.begin()->first;
}

std::int64_t TrigPoly::max_freq() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

std::int64_t TrigPoly::radius() const {
  return std::max(std::abs(min_freq()), std::abs(max_freq()));
}

std::int64_t TrigPoly::span() const { return max_freq() - min_freq(); }

cplx TrigPoly::operator()(double t) const { return (*this)(reduce(t)); }

cplx TrigPoly::operator()(const Angle& t) const {
  cplx sum{};
  for (const auto& [k, c] : coeffs_) {
    sum += c * times(t, k).phasor();
  }
  return sum;
}

bool TrigPoly::is_real(double tol) const {
  for (const auto& [k, c] : coeffs_) {
    if (std::abs(c - std::conj(coeff(-k))) > tol) {
      return false;
    }
  }
  return true;
}

double TrigPoly::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& [k, c] : coeffs_) {
    s += std::norm(c);
  }
  return s;
}

TrigPoly& TrigPoly::prune(double tol) {
  std::erase_if(coeffs_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
  return *this;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  for (const auto& [k, c] : other.coeffs_) {
    coeffs_[k] += c;
  }
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
  for (const auto& [k, c] : other.coeffs_) {
    coeffs_[k] -= c;
  }
  return *this;
}

TrigPoly& TrigPoly::operator*=(cplx s) {
  for (auto& kv : coeffs_) {
    kv.second *= s;
  }
  return *this;
}

TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
TrigPoly operator*(TrigPoly a, cplx s) { return a *= s; }
TrigPoly operator*(cplx s, TrigPoly a) { return a *= s; }

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly::Coeffs out;
  for (const auto& [ka, ca] : a.coeffs()) {
    for (const auto& [kb, cb] : b.coeffs()) {
      out[ka + kb] += ca * cb;
    }
  }
  return TrigPoly(std::move(out));
}

TrigPoly conj(const TrigPoly& p) {
  TrigPoly::Coeffs out;
  for (const auto& [k, c] : p.coeffs()) {
    out.emplace(-k, std::conj(c));
  }
  return TrigPoly(std::move(out));
}

TrigPoly rotate(const TrigPoly& p, const Angle& beta) {
  TrigPoly::Coeffs out;
  for (const auto& [k, c] : p.coeffs()) {
    out.emplace(k, c * times(beta, k).phasor());
  }
  return TrigPoly(std::move(out));
}

TrigPoly rotate(const TrigPoly& p, double beta) { return rotate(p, reduce(beta)); }

double max_coeff_diff(const TrigPoly& a, const TrigPoly& b) {
  double worst = 0.0;
  for (const auto& [k, c] : a.coeffs()) {
    worst = std::max(worst, std::abs(c - b.coeff(k)));
  }
  for (const auto& [k, c] : b.coeffs()) {
    if (!a.coeffs().contains(k)) {
      worst = std::max(worst, std::abs(c));
    }
  }
  return worst;
}

// -------------------------------------------------------------- WindingMap

WindingMap::WindingMap(std::int64_t winding, const TrigPoly& phase, Angle constant)
    : winding_(winding), constant_(constant) {
  double scale = 1.0;
  for (const auto& [k, c] : phase.coeffs()) {
    scale = std::max(scale, std::abs(c));
  }
  if (!phase.is_real(1e-12 * scale)) {
    throw PreconditionError("WindingMap phase series must be real-valued");
  }
  constant_ = constant_ + reduce(phase.coeff(0).real());
  // Store an exactly Hermitian copy built from the positive frequencies.
  for (const auto& [k, c] : phase.coeffs()) {
    if (k > 0) {
      const cplx sym = 0.5 * (c + std::conj(phase.coeff(-k)));
      if (sym != 0.0) {
        phase_.set(k, sym);
        phase_.set(-k, std::conj(sym));
      }
    } else if (k < 0 && !phase.coeffs().contains(-k)) {
      const cplx sym = 0.5 * c;
      if (sym != 0.0) {
        phase_.set(k, sym);
        phase_.set(-k, std::conj(sym));
      }
    }
  }
}

WindingMap WindingMap::character(cplx z0, std::int64_t winding) {
  return WindingMap(winding, TrigPoly{}, reduce(std::arg(z0)));
}

WindingMap WindingMap::constant(double angle) { return WindingMap(0, TrigPoly{}, reduce(angle)); }

Angle WindingMap::angle_at(const Angle& t) const {
  double h = 0.0;
  for (auto it = phase_.coeffs().lower_bound(1); it != phase_.coeffs().end(); ++it) {
    h += 2.0 * (it->second * times(t, it->first).phasor()).real();
  }
  return times(t, winding_) + constant_ + reduce(h);
}

cplx WindingMap::operator()(double t) const { return angle_at(reduce(t)).phasor(); }

cplx WindingMap::operator()(const Angle& t) const { return angle_at(t).phasor(); }

WindingMap& WindingMap::operator*=(const WindingMap& other) {
  winding_ += other.winding_;
  constant_ = constant_ + other.constant_;
  phase_ += other.phase_;
  phase_.prune(0.0);
  return *this;
}

WindingMap operator*(WindingMap f, const WindingMap& g) { return f *= g; }

WindingMap conj(const WindingMap& f) {
  return WindingMap(-f.winding(), TrigPoly{} - f.phase(), -f.offset());
}

WindingMap rotate(const WindingMap& f, const Angle& beta) {
  return WindingMap(f.winding(), rotate(f.phase(), beta), f.offset() + times(beta, f.winding()));
}

WindingMap rotate(const WindingMap& f, double beta) { return rotate(f, reduce(beta)); }

// ------------------------------------------------------------------- grids

namespace {

void check_grid(Eigen::Index g) {
  if (g < 2 || (g & (g - 1)) != 0) {
    throw PreconditionError("grid size must be a power of two >= 2, got " + std::to_string(g));
  }
}

template <class Fn>
GridFn sample_with(Eigen::Index g, Fn&& fn) {
  check_grid(g);
  GridFn out{Eigen::VectorXcd(g)};
  for (Eigen::Index j = 0; j < g; ++j) {
    out.samples(j) = fn(reduce(GridFn::node(j, g)));
  }
  return out;
}

}  // namespace

GridFn sample(const TrigPoly& p, Eigen::Index g) {
  return sample_with(g, [&p](const Angle& t) { return p(t); });
}

GridFn sample(const WindingMap& f, Eigen::Index g) {
  return sample_with(g, [&f](const Angle& t) { return f(t); });
}

std::int64_t winding_number(const GridFn& samples) {
  const Eigen::Index g = samples.size();
  if (g < 2) {
    throw PreconditionError("winding_number needs at least two samples");
  }
  double total = 0.0;
  for (Eigen::Index j = 0; j < g; ++j) {
    const cplx a = samples.samples(j);
    if (std::abs(std::abs(a) - 1.0) > 1e-6) {
      throw PreconditionError("winding_number: sample " + std::to_string(j) + " is not unimodular");
    }
    const cplx b = samples.samples((j + 1) % g);
    const double step = std::arg(b / a);
    if (std::abs(step) >= kPi * (1.0 - 1e-12)) {
      throw AliasingError("winding_number: argument jump of " + std::to_string(step) +
                          " between samples " + std::to_string(j) + " and " +
                          std::to_string((j + 1) % g));
    }
    total += step;
  }
  return std::llround(total / kTwoPi);
}

FourierSeries to_fourier(const GridFn& samples, std::int64_t trunc) {
  const Eigen::Index g = samples.size();
  check_grid(g);
  if (2 * trunc >= g) {
    throw PreconditionError("to_fourier requires K < G/2");
  }
  std::vector<cplx> in(samples.samples.data(), samples.samples.data() + g);
  std::vector<cplx> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  FourierSeries series;
  const double inv_g = 1.0 / static_cast<double>(g);
  for (Eigen::Index j = 0; j < g; ++j) {
    const std::int64_t k = j <= g / 2 ? j : j - g;
    const cplx c = out[j] * inv_g;
    if (k >= -trunc && k <= trunc) {
      if (c != 0.0) {
        series.coeffs.set(k, c);
      }
    } else {
      series.tail_mass += std::norm(c);
    }
  }
  return series;
}

FourierSeries to_fourier(const WindingMap& f, Eigen::Index grid, std::int64_t trunc) {
  return to_fourier(sample(f, grid), trunc);
}

FourierSeries expand(const WindingMap& f, double drop) {
  TrigPoly acc = TrigPoly::monomial(f.winding(), f.offset().phasor());
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (auto it = f.phase().coeffs().lower_bound(1); it != f.phase().coeffs().end(); ++it) {
    const std::int64_t k = it->first;
    const double x = 2.0 * std::abs(it->second);
    if (x == 0.0) {
      continue;
    }
    const Angle phi = reduce(std::arg(it->second));
    // exp(i x cos(k t + phi)) = sum_j i^|j| J_|j|(x) e^{i j phi} e^{i j k t}
    std::vector<double> bessel;
    for (int j = 0;; ++j) {
      const double v = std::cyl_bessel_j(static_cast<double>(j), x);
      bessel.push_back(v);
      if (j > x && std::abs(v) < 1e-20) {
        break;
      }
    }
    TrigPoly factor;
    const int top = static_cast<int>(bessel.size()) - 1;
    for (int j = -top; j <= top; ++j) {
      const int a = std::abs(j);
      const cplx c = kIPow[a % 4] * bessel[a] * times(phi, j).phasor();
      if (std::abs(c) > drop) {
        factor.set(static_cast<std::int64_t>(j) * k, c);
      }
    }
    acc = acc * factor;
    acc.prune(drop);
  }
  FourierSeries series;
  series.tail_mass = std::max(0.0, 1.0 - acc.l2_norm_squared());
  series.coeffs = std::move(acc);
  return series;
}

Eigen::Index grid_for(const TrigPoly& p, Eigen::Index minimum) {
  Eigen::Index g = 8;
  const Eigen::Index need = std::max<Eigen::Index>(minimum, 8 * static_cast<Eigen::Index>(p.span()));
  while (g < need) {
    g *= 2;
  }
  return g;
}

NormBounds sup_norm(const TrigPoly& p, Eigen::Index grid) {
  if (p.empty()) {
    return {};
  }
  check_grid(grid);
  if (grid < 8 * p.span()) {
    throw PreconditionError("sup_norm requires G >= 8 * degree span");
  }
  const std::int64_t centre = p.min_freq() + p.span() / 2;
  std::vector<cplx> dense(static_cast<std::size_t>(grid), cplx{});
  double deriv = 0.0;
  for (const auto& [k, c] : p.coeffs()) {
    const std::int64_t shifted = k - centre;
    const std::int64_t slot = ((shifted % grid) + grid) % grid;
    dense[static_cast<std::size_t>(slot)] += c;
    deriv += std::abs(static_cast<double>(shifted)) * std::abs(c);
  }
  std::vector<cplx> values;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(values, dense);
  double lower = 0.0;
  for (const cplx& v : values) {
    lower = std::max(lower, std::abs(v));
  }
  return {lower, lower + kTwoPi / static_cast<double>(grid) * deriv};
}

}  // namespace nct
