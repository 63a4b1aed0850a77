#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nctorus/circle.hpp"
#include "nctorus/errors.hpp"
#include "support.hpp"

using namespace nct;
using nct::testing::random_map;
using nct::testing::random_real_trig;

namespace {

WindingMap identity_char() { return WindingMap::character(1.0, 1); }

double max_grid_diff(const WindingMap& f, const WindingMap& g, int points) {
  double worst = 0.0;
  for (int j = 0; j < points; ++j) {
    const double t = GridFn::node(j, points);
    worst = std::max(worst, std::abs(f(t) - g(t)));
  }
  return worst;
}

}  // namespace

TEST(TrigPoly, EvaluatesAsSum) {
  TrigPoly p;
  p.set(0, 0.5);
  p.set(3, {0.0, 2.0});
  p.set(-2, -1.0);
  const double t = 0.77;
  const cplx z = std::polar(1.0, t);
  EXPECT_NEAR(std::abs(p(t) - (0.5 + cplx(0, 2) * std::pow(z, 3) - std::pow(z, -2))), 0.0, 1e-13);
}

TEST(TrigPoly, RealFlag) {
  std::mt19937_64 rng(1);
  EXPECT_TRUE(random_real_trig(rng, 4, 1.0).is_real());
  EXPECT_FALSE(TrigPoly::monomial(1, 1.0).is_real());
}

TEST(Rotate, CharacterPicksUpConstantPhase) {
  const double beta = 0.4;
  const WindingMap r = rotate(identity_char(), beta);
  EXPECT_EQ(r.winding(), 1);
  EXPECT_TRUE(r.phase().empty());
  EXPECT_NEAR(r.offset().value(), beta, 1e-16);
}

TEST(Rotate, ZeroIsIdentity) {
  std::mt19937_64 rng(2);
  const WindingMap f = random_map(rng);
  EXPECT_LE(max_grid_diff(rotate(f, 0.0), f, 64), 1e-15);
}

TEST(Rotate, IsAGroupAction) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> beta(-4.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const WindingMap f = random_map(rng, trial % 5 - 2);
    const double b1 = beta(rng), b2 = beta(rng);
    const WindingMap a = rotate(rotate(f, b1), b2);
    const WindingMap b = rotate(f, b1 + b2);
    EXPECT_LE(max_grid_diff(a, b, 64), 1e-12);
    EXPECT_LE(max_coeff_diff(a.phase(), b.phase()), 1e-12);
    // Pointwise oracle: f(e^{i(t + b1 + b2)}).
    for (int j = 0; j < 64; ++j) {
      const double t = GridFn::node(j, 64);
      EXPECT_NEAR(std::abs(a(t) - f(t + b1 + b2)), 0.0, 1e-12);
    }
  }
  TrigPoly p = random_real_trig(rng, 5, 1.0);
  p.set(0, 0.3);
  EXPECT_LE(max_coeff_diff(rotate(rotate(p, 0.2), 0.9), rotate(p, 1.1)), 1e-12);
}

TEST(WindingMapMul, CharactersAdd) {
  const WindingMap sq = identity_char() * identity_char();
  EXPECT_EQ(sq.winding(), 2);
  EXPECT_TRUE(sq.phase().empty());
  EXPECT_NEAR(std::abs(sq.offset().value()), 0.0, 1e-16);
}

TEST(WindingMapMul, TimesConjugateIsOne) {
  std::mt19937_64 rng(4);
  const WindingMap f = random_map(rng, 3);
  const WindingMap one = f * conj(f);
  EXPECT_EQ(one.winding(), 0);
  EXPECT_TRUE(one.phase().empty());
  EXPECT_NEAR(std::abs(one(0.37) - 1.0), 0.0, 1e-14);
}

TEST(WindingMapMul, PointwiseAtRandomPoints) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t(0.0, kTwoPi);
  for (int trial = 0; trial < 10; ++trial) {
    const WindingMap f = random_map(rng, 2), g = random_map(rng, -1);
    const WindingMap fg = f * g;
    for (int j = 0; j < 17; ++j) {
      const double s = t(rng);
      EXPECT_NEAR(std::abs(fg(s) - f(s) * g(s)), 0.0, 1e-12);
    }
  }
}

TEST(WindingMap, UnimodularEverywhere) {
  std::mt19937_64 rng(6);
  const WindingMap f = random_map(rng, 4, 6, 2.0);
  for (int j = 0; j < 100; ++j) {
    EXPECT_NEAR(std::abs(f(0.1 * j)), 1.0, 1e-15);
  }
}

TEST(WindingNumber, Examples) {
  EXPECT_EQ(winding_number(sample(WindingMap::character(1.0, 3), 64)), 3);
  EXPECT_EQ(winding_number(sample(WindingMap{}, 64)), 0);
  TrigPoly h;
  h.set(1, cplx(0, -0.15));
  h.set(-1, cplx(0, 0.15));  // 0.3 sin t
  EXPECT_EQ(winding_number(sample(WindingMap(2, h), 256)), 2);
}

TEST(WindingNumber, AdditiveUnderProducts) {
  std::mt19937_64 rng(7);
  for (int w1 = -3; w1 <= 3; ++w1) {
    for (int w2 = -3; w2 <= 3; ++w2) {
      const WindingMap f = random_map(rng, w1), g = random_map(rng, w2);
      EXPECT_EQ(winding_number(sample(f * g, 256)), winding_number(sample(f, 256)) + winding_number(sample(g, 256)));
      EXPECT_EQ(winding_number(sample(f, 256)), w1);
    }
  }
}

TEST(WindingNumber, CoarseGridAliases) {
  EXPECT_THROW(winding_number(sample(WindingMap::character(1.0, 32), 64)), AliasingError);
}

TEST(WindingNumber, RejectsNonUnimodular) {
  GridFn g = sample(TrigPoly::constant(2.0), 16);
  EXPECT_THROW(winding_number(g), PreconditionError);
}

TEST(ToFourier, Character) {
  const FourierSeries s = to_fourier(identity_char(), 64, 16);
  EXPECT_NEAR(std::abs(s.coeffs.coeff(1) - 1.0), 0.0, 1e-14);
  EXPECT_LE(s.tail_mass, 1e-12);
}

TEST(ToFourier, JacobiAngerPattern) {
  TrigPoly h;
  h.set(1, cplx(0, -0.15));
  h.set(-1, cplx(0, 0.15));  // 0.3 sin t: e^{i x sin t} = sum J_k(x) z^k
  const FourierSeries s = to_fourier(WindingMap(0, h), 256, 32);
  double mass = 0.0;
  for (int k = -32; k <= 32; ++k) {
    EXPECT_NEAR(std::abs(s.coeffs.coeff(k) - std::cyl_bessel_j(std::abs(k), 0.3) * (k < 0 && (k % 2) ? -1.0 : 1.0)), 0.0, 1e-14) << k;
    mass += std::norm(s.coeffs.coeff(k));
  }
  EXPECT_NEAR(mass, 1.0, 1e-10);
}

TEST(ToFourier, TailDecreasesInK) {
  TrigPoly h;
  h.set(1, cplx(0, -1.0));
  h.set(-1, cplx(0, 1.0));
  h.set(2, 0.4);
  h.set(-2, 0.4);
  const WindingMap f(1, h);
  double prev = 2.0;
  for (std::int64_t K : {8, 16, 32}) {
    const double tail = to_fourier(f, 1024, K).tail_mass;
    EXPECT_LT(tail, prev);
    prev = tail;
  }
}

TEST(ToFourier, TrigPolyRoundTrip) {
  std::mt19937_64 rng(8);
  TrigPoly p = random_real_trig(rng, 7, 1.0) + TrigPoly::monomial(10, cplx(0.2, 0.1));
  const FourierSeries s = to_fourier(sample(p, 64), 12);
  EXPECT_LE(max_coeff_diff(s.coeffs, p), 1e-12);
}

TEST(ToFourier, RequiresNyquist) {
  EXPECT_THROW(to_fourier(identity_char(), 64, 32), PreconditionError);
}

TEST(Expand, MatchesFft) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const WindingMap f = random_map(rng, trial - 2, 4, 0.4);
    const FourierSeries a = expand(f);
    const FourierSeries b = to_fourier(f, 1024, 200);
    EXPECT_LE(max_coeff_diff(a.coeffs, b.coeffs), 1e-12);
    EXPECT_LE(std::abs(a.tail_mass), 1e-12);
  }
}

TEST(Expand, LacunaryFrequenciesStaySparse) {
  TrigPoly h;
  const std::int64_t q = 26530250920481LL;
  h.set(q, 0.01);
  h.set(-q, 0.01);
  const FourierSeries s = expand(WindingMap(0, h));
  EXPECT_LE(s.coeffs.size(), 20u);
  EXPECT_NEAR(std::abs(s.coeffs.coeff(0)), std::cyl_bessel_j(0, 0.02), 1e-15);
}

TEST(SupNorm, Examples) {
  const NormBounds mono = sup_norm(TrigPoly::monomial(5), 64);
  EXPECT_NEAR(mono.lower, 1.0, 1e-9);
  EXPECT_NEAR(mono.upper, 1.0, 1e-9);
  const NormBounds zero = sup_norm(TrigPoly{}, 64);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_EQ(zero.upper, 0.0);
  TrigPoly p;
  p.set(0, 0.5);
  p.set(1, 0.5);
  const NormBounds b = sup_norm(p, 4096);
  EXPECT_LE(b.lower, 1.0);
  EXPECT_GE(b.upper, 1.0);
  EXPECT_LE(b.upper - b.lower, 0.01);
}

TEST(SupNorm, BracketsRandomPolys) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    TrigPoly p = random_real_trig(rng, 6, 1.0) + TrigPoly::monomial(3, cplx(0.5, -0.2));
    const NormBounds b = sup_norm(p, 1024);
    double fine = 0.0;
    for (int j = 0; j < 100000; ++j) {
      fine = std::max(fine, std::abs(p(kTwoPi * j / 100000.0)));
    }
    EXPECT_LE(b.lower, fine + 1e-12);
    EXPECT_GE(b.upper, fine - 1e-12);
  }
}

TEST(SupNorm, RejectsCoarseGrid) {
  EXPECT_THROW(sup_norm(TrigPoly::monomial(100) + TrigPoly::constant(1.0), 64), PreconditionError);
  EXPECT_EQ(grid_for(TrigPoly::monomial(100) + TrigPoly::constant(1.0), 64), 1024);
}
