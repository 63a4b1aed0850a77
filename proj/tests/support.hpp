#pragma once

#include <cstdint>
#include <random>

#include "nctorus/anzai.hpp"
#include "nctorus/nc_poly.hpp"

namespace nct::testing {

inline NCPoly random_poly(std::mt19937_64& rng, double alpha, int terms = 6, int radius = 3) {
  std::uniform_int_distribution<int> idx(-radius, radius);
  std::normal_distribution<double> amp(0.0, 1.0);
  NCPoly x(alpha);
  for (int i = 0; i < terms; ++i) {
    x.add(idx(rng), idx(rng), {amp(rng), amp(rng)});
  }
  return x.prune();
}

inline TrigPoly random_real_trig(std::mt19937_64& rng, int degree, double scale) {
  std::normal_distribution<double> amp(0.0, scale);
  TrigPoly p;
  for (int k = 1; k <= degree; ++k) {
    const cplx c{amp(rng), amp(rng)};
    p.set(k, c);
    p.set(-k, std::conj(c));
  }
  return p;
}

inline WindingMap random_map(std::mt19937_64& rng, std::int64_t winding = 1, int degree = 3,
                             double scale = 0.3) {
  std::uniform_real_distribution<double> off(-kPi, kPi);
  return WindingMap(winding, random_real_trig(rng, degree, scale), reduce(off(rng)));
}

}  // namespace nct::testing
