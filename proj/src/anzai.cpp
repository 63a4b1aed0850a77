#include "nctorus/anzai.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>

#include "nctorus/errors.hpp"

namespace nct {

TrigPoly fourier(const WindingMap& f, const FourierOptions& opts) {
  bool sparse = opts.route == FourierOptions::Route::Sparse;
  if (opts.route == FourierOptions::Route::Auto) {
    std::size_t positive = 0;
    for (const auto& [k, c] : f.phase().coeffs()) {
      positive += k > 0 ? 1 : 0;
    }
    sparse = positive <= opts.sparse_max_terms;
  }
  FourierSeries s = sparse ? expand(f) : to_fourier(f, opts.grid, opts.trunc);
  if (s.tail_mass > opts.tail_tol) {
    throw TailTooLarge("Fourier tail mass " + std::to_string(s.tail_mass) + " exceeds " +
                       std::to_string(opts.tail_tol));
  }
  return std::move(s.coeffs);
}

WindingMap rotated_product(const WindingMap& F, const Angle& step, std::int64_t k) {
  if (k < 0) {
    throw PreconditionError("rotated_product needs k >= 0");
  }
  WindingMap result;
  std::int64_t done = 0;
  WindingMap block = F;  // product of `len` consecutive rotated factors
  std::int64_t len = 1;
  while (k > 0) {
    if (k & 1) {
      result *= rotate(block, times(step, done));
      done += len;
    }
    k >>= 1;
    if (k > 0) {
      block *= rotate(block, times(step, len));
      len *= 2;
    }
  }
  return result;
}

struct AnzaiMap::Memo {
  std::shared_mutex mutex;
  std::map<std::int64_t, WindingMap> alpha;
  std::map<std::pair<std::int64_t, std::int64_t>, TrigPoly> multipliers;
};

AnzaiMap::AnzaiMap(double theta, double alpha, WindingMap f, FourierOptions opts)
    : theta_(theta), alpha_(alpha), f_(std::move(f)), opts_(opts), memo_(std::make_shared<Memo>()) {}

WindingMap AnzaiMap::alpha_cocycle(std::int64_t n) const {
  if (n == 0) {
    return WindingMap{};
  }
  {
    std::shared_lock lock(memo_->mutex);
    if (auto it = memo_->alpha.find(n); it != memo_->alpha.end()) {
      return it->second;
    }
  }
  const Angle step = reduce(kTwoPi * alpha_);
  WindingMap out = n > 0 ? rotated_product(f_, -step, n)
                         : conj(rotate(rotated_product(f_, step, -n), step));
  std::unique_lock lock(memo_->mutex);
  return memo_->alpha.emplace(n, std::move(out)).first->second;
}

WindingMap AnzaiMap::theta_cocycle(std::int64_t n, std::int64_t k) const {
  if (k < 0) {
    throw PreconditionError("theta_cocycle needs k >= 0");
  }
  return rotated_product(alpha_cocycle(n), reduce(theta_), k);
}

TrigPoly AnzaiMap::multiplier(std::int64_t n, std::int64_t k) const {
  {
    std::shared_lock lock(memo_->mutex);
    if (auto it = memo_->multipliers.find({n, k}); it != memo_->multipliers.end()) {
      return it->second;
    }
  }
  TrigPoly out = fourier(theta_cocycle(n, k), opts_);
  std::unique_lock lock(memo_->mutex);
  return memo_->multipliers.emplace(std::pair{n, k}, std::move(out)).first->second;
}

AnzaiMap inverse(const AnzaiMap& A) {
  return AnzaiMap(-A.theta(), A.alpha(), conj(rotate(A.f(), -A.theta())), A.options());
}

NCPoly apply(const AnzaiMap& A, const NCPoly& x) { return apply_iter(A, x, 1); }

NCPoly apply_iter(const AnzaiMap& A, const NCPoly& x, std::int64_t k) {
  require_same_alpha(A.alpha(), x.alpha());
  if (k == 0) {
    return x;
  }
  if (k < 0) {
    return apply_iter(inverse(A), x, -k);
  }
  const Angle shift = times(A.theta(), k);
  std::map<std::int64_t, TrigPoly> out;
  for (const auto& [n, c] : modes(x)) {
    out.emplace(n, rotate(c, shift) * A.multiplier(n, k));
  }
  return from_modes(x.alpha(), out);
}

IterateStream::IterateStream(const AnzaiMap& A, const NCPoly& a) : map_(&A), alpha_(a.alpha()) {
  require_same_alpha(A.alpha(), a.alpha());
  for (auto& [n, c] : modes(a)) {
    modes_.push_back({n, std::move(c), A.alpha_cocycle(n), WindingMap{}});
  }
}

TrigPoly IterateStream::mode(std::size_t i) const {
  const Mode& m = modes_[i];
  return rotate(m.c, times(map_->theta(), k_)) * fourier(m.cocycle, map_->options());
}

NCPoly IterateStream::current() const {
  std::map<std::int64_t, TrigPoly> out;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    out.emplace(modes_[i].n, mode(i));
  }
  return from_modes(alpha_, out);
}

void IterateStream::advance() {
  const Angle shift = times(map_->theta(), k_);
  for (Mode& m : modes_) {
    m.cocycle *= rotate(m.f_n, shift);
  }
  ++k_;
}

namespace {

void check_schedule(std::span<const std::int64_t> schedule) {
  if (schedule.empty() || schedule.front() < 1) {
    throw PreconditionError("schedule must be non-empty and start at N >= 1");
  }
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) {
      throw PreconditionError("schedule must be strictly increasing");
    }
  }
}

void check_unimodular(cplx lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    throw PreconditionError("lambda must be unimodular");
  }
}

}  // namespace

CesaroResult cesaro(const AnzaiMap& A, const NCPoly& a, cplx lambda,
                    std::span<const std::int64_t> schedule, const CesaroOptions& opts) {
  check_unimodular(lambda);
  CesaroResult r = cesaro(A, a, reduce(std::arg(lambda)), schedule, opts);
  r.lambda = lambda;
  return r;
}

CesaroResult cesaro(const AnzaiMap& A, const NCPoly& a, const Angle& lam,
                    std::span<const std::int64_t> schedule, const CesaroOptions& opts) {
  check_schedule(schedule);
  if (opts.limit) {
    require_same_alpha(a.alpha(), opts.limit->alpha());
  }
  CesaroResult result{lam.phasor(), {}};
  IterateStream stream(A, a);
  NCPoly::Coeffs sum;
  std::size_t next = 0;
  for (std::int64_t k = 0; next < schedule.size(); ++k) {
    const cplx weight = times(lam, -k).phasor();
    for (std::size_t i = 0; i < stream.mode_count(); ++i) {
      const std::int64_t n = stream.mode_index(i);
      const TrigPoly term = stream.mode(i);
      for (const auto& [m, c] : term.coeffs()) {
        sum[{m, n}] += weight * c;
      }
    }
    if (k + 1 == schedule[next]) {
      const double inv = 1.0 / static_cast<double>(k + 1);
      NCPoly::Coeffs scaled = sum;
      for (auto& kv : scaled) {
        kv.second *= inv;
      }
      CesaroCheckpoint cp;
      cp.n = k + 1;
      cp.average = NCPoly(a.alpha(), std::move(scaled));
      const NCPoly diff = opts.limit ? cp.average - *opts.limit : cp.average;
      cp.gns_norm = std::sqrt(diff.l2_norm_squared());
      if (opts.norms) {
        cp.bounds = norm_bounds(cp.average, opts.norm_grid);
      }
      result.checkpoints.push_back(std::move(cp));
      ++next;
    }
    stream.advance();
  }
  return result;
}

std::vector<PointwiseCheckpoint> cesaro_pointwise(const AnzaiMap& A, const NCPoly& a, cplx lambda,
                                                  std::span<const double> points,
                                                  std::span<const std::int64_t> schedule) {
  check_schedule(schedule);
  check_unimodular(lambda);
  require_same_alpha(A.alpha(), a.alpha());
  const Angle lam = reduce(std::arg(lambda));
  const Angle theta = reduce(A.theta());
  const Eigen::Index P = static_cast<Eigen::Index>(points.size());
  std::vector<Angle> at(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    at[j] = reduce(points[j]);
  }

  struct Stream {
    std::int64_t n;
    TrigPoly c;
    WindingMap f_n;
    WindingMap cocycle;
    Eigen::VectorXcd sum;
  };
  std::vector<Stream> streams;
  for (auto& [n, c] : modes(a)) {
    streams.push_back({n, std::move(c), A.alpha_cocycle(n), WindingMap{}, Eigen::VectorXcd::Zero(P)});
  }

  std::vector<PointwiseCheckpoint> out;
  std::size_t next = 0;
  for (std::int64_t k = 0; next < schedule.size(); ++k) {
    const cplx weight = times(lam, -k).phasor();
    const Angle shift = times(theta, k);
    for (Stream& s : streams) {
      for (Eigen::Index j = 0; j < P; ++j) {
        s.sum[j] += weight * s.c(at[j] + shift) * s.cocycle(at[j]);
      }
    }
    if (k + 1 == schedule[next]) {
      PointwiseCheckpoint cp;
      cp.n = k + 1;
      for (const Stream& s : streams) {
        cp.modes.emplace(s.n, s.sum / static_cast<double>(k + 1));
      }
      out.push_back(std::move(cp));
      ++next;
    }
    for (Stream& s : streams) {
      s.cocycle *= rotate(s.f_n, shift);
    }
  }
  return out;
}

}  // namespace nct
