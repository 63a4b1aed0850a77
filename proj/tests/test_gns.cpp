#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "nctorus/errors.hpp"
#include "nctorus/gns.hpp"
#include "support.hpp"

using namespace nct;
using nct::testing::random_map;
using nct::testing::random_poly;

namespace {

constexpr double kAlpha = 1.0 / 3.0;

AnzaiMap shift_map(double alpha = kAlpha) {
  return AnzaiMap(kGoldenTheta, alpha, WindingMap::character(1.0, 1));
}

double trapezoid(const std::vector<double>& d) {
  return std::accumulate(d.begin(), d.end(), 0.0) * kTwoPi / static_cast<double>(d.size());
}

}  // namespace

TEST(Act, BasisAndIsometry) {
  const GNSVector e = act(NCPoly::monomial(kAlpha, 2, -1), GNSVector::vacuum(kAlpha));
  EXPECT_EQ(e.poly().size(), 1u);
  EXPECT_EQ(e.coeff(2, -1), cplx(1.0));
  std::mt19937_64 rng(41);
  const GNSVector xi(random_poly(rng, kAlpha, 10));
  EXPECT_NEAR(act(NCPoly::monomial(kAlpha, 3, 2, unit(0.3)), xi).norm(), xi.norm(), 1e-12);
}

TEST(Act, InnerProductIsTrace) {
  std::mt19937_64 rng(42);
  const GNSVector vac = GNSVector::vacuum(kAlpha);
  for (int trial = 0; trial < 20; ++trial) {
    const NCPoly x = random_poly(rng, kAlpha, 8), y = random_poly(rng, kAlpha, 8);
    EXPECT_NEAR(std::abs(inner(act(x, vac), act(y, vac)) - trace(adjoint(y) * x)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(act(x, vac), vac) - trace(x)), 0.0, 1e-12);
  }
}

TEST(Act, AlphaMismatch) {
  EXPECT_THROW(act(NCPoly::U(0.1), GNSVector::vacuum(0.2)), AlphaMismatch);
}

TEST(Koopman, FixesVacuumAndShiftsBasis) {
  const AnzaiMap A = shift_map();
  for (std::int64_t k : {-3, 0, 1, 50}) {
    EXPECT_LE(distance(koopman(A, GNSVector::vacuum(kAlpha), k), GNSVector::vacuum(kAlpha)), 1e-15);
  }
  const GNSVector e01 = GNSVector::basis(kAlpha, 0, 1);
  const GNSVector image = koopman(A, e01, 1);
  EXPECT_NEAR(std::abs(image.coeff(1, 1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(inner(image, e01)), 0.0, 1e-15);
}

TEST(Koopman, Isometry) {
  std::mt19937_64 rng(43);
  const AnzaiMap A(kGoldenTheta, kAlpha, random_map(rng, 1, 2, 0.2));
  const GNSVector xi(random_poly(rng, kAlpha, 6, 2));
  EXPECT_NEAR(koopman(A, xi, 100).norm(), xi.norm(), 1e-10);
  EXPECT_NEAR(koopman(A, xi, -7).norm(), xi.norm(), 1e-10);
}

TEST(Correlation, VacuumAndLebesgue) {
  const AnzaiMap A = shift_map();
  const CorrSeq dirac = correlation(A, GNSVector::vacuum(kAlpha), 100);
  ASSERT_EQ(dirac.values.size(), 101u);
  for (cplx v : dirac.values) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
  const CorrSeq leb = correlation(A, GNSVector::basis(kAlpha, 0, 1), 100);
  EXPECT_EQ(leb.values[0], cplx(1.0));
  for (std::size_t n = 1; n < leb.values.size(); ++n) EXPECT_EQ(leb.values[n], cplx(0.0));
  EXPECT_EQ(leb.at(-3), std::conj(leb.at(3)));
}

TEST(Correlation, MatchesKoopman) {
  std::mt19937_64 rng(44);
  const AnzaiMap A(kGoldenTheta, kAlpha, random_map(rng, 1, 2, 0.2));
  const GNSVector xi(random_poly(rng, kAlpha, 6, 2));
  const CorrSeq c = correlation(A, xi, 12);
  for (std::int64_t n = 1; n <= 12; ++n) {
    EXPECT_NEAR(std::abs(c.at(n) - inner(koopman(A, xi, n), xi)), 0.0, 1e-11);
  }
}

TEST(Correlation, PositiveDefinite) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    const AnzaiMap A(kGoldenTheta, kAlpha, random_map(rng, trial % 3 - 1, 2, 0.3));
    const GNSVector xi(random_poly(rng, kAlpha, 6, 2));
    const CorrSeq c = correlation(A, xi, 128);
    EXPECT_GE(toeplitz_min_eigenvalue(c, 64), -1e-8);
  }
  EXPECT_THROW(correlation(shift_map(), GNSVector(NCPoly(kAlpha)), 10), PreconditionError);
}

TEST(AtomMass, Examples) {
  const AnzaiMap A = shift_map();
  const CorrSeq dirac = correlation(A, GNSVector::vacuum(kAlpha), 4096);
  EXPECT_NEAR(atom_mass(dirac, 1.0).mass, 1.0, 1e-12);
  EXPECT_LE(atom_mass(dirac, unit(kGoldenTheta)).mass, 0.02);
  EXPECT_TRUE(is_atom(atom_mass(dirac, 1.0)));
  EXPECT_FALSE(is_atom(atom_mass(dirac, unit(kGoldenTheta))));

  const cplx c{0.6, -0.3};
  const GNSVector xi = act(c * NCPoly::one(kAlpha) + NCPoly::monomial(kAlpha, 1, 1), GNSVector::vacuum(kAlpha));
  const CorrSeq mixed = correlation(A, xi, 8192);
  EXPECT_NEAR(atom_mass(mixed, 1.0).mass, std::norm(c), 0.02);
  EXPECT_THROW(atom_mass(correlation(A, xi, 10), 1.0), PreconditionError);
}

TEST(AtomMass, DetectedAtomsBoundedByNorm) {
  const AnzaiMap A = shift_map();
  const GNSVector xi = act(0.5 * NCPoly::one(kAlpha) + NCPoly::U(kAlpha) + NCPoly::V(kAlpha),
                           GNSVector::vacuum(kAlpha));
  const CorrSeq c = correlation(A, xi, 4096);
  double total = 0.0;
  for (std::int64_t m = -3; m <= 3; ++m) {
    const AtomEstimate e = atom_mass(c, phase(kGoldenTheta, m));
    if (is_atom(e)) total += e.mass;
  }
  EXPECT_GT(total, 1.2);
  EXPECT_LE(total, xi.norm_squared() + 1e-6);
}

TEST(FejerDensity, Examples) {
  const AnzaiMap A = shift_map();
  const auto dirac = fejer_density(correlation(A, GNSVector::vacuum(kAlpha), 2048), 4096);
  EXPECT_NEAR(trapezoid(dirac), 1.0, 1e-3);
  EXPECT_EQ(std::max_element(dirac.begin(), dirac.end()) - dirac.begin(), 0);

  const auto flat = fejer_density(correlation(A, GNSVector::basis(kAlpha, 0, 1), 2048), 1024);
  for (double d : flat) EXPECT_NEAR(d * kTwoPi, 1.0, 0.05);

  const GNSVector mix(std::sqrt(0.5) * (NCPoly::one(kAlpha) + NCPoly::V(kAlpha)));
  const auto both = fejer_density(correlation(A, mix, 2048), 4096);
  EXPECT_NEAR(trapezoid(both), 1.0, 1e-3);
  for (double d : both) EXPECT_GE(d, -1e-8);
  // Away from 0 only the flat half remains.
  EXPECT_NEAR(both[2048] * kTwoPi, 0.5, 0.01);
}

TEST(EigenResidual, Examples) {
  const AnzaiMap A = shift_map();
  EXPECT_EQ(eigen_residual(A, GNSVector::vacuum(kAlpha), 1.0), 0.0);
  for (std::int64_t m : {-2, 1, 5}) {
    EXPECT_LE(eigen_residual(A, GNSVector::basis(kAlpha, m, 0), phase(kGoldenTheta, m)), 1e-12);
  }
  EXPECT_NEAR(eigen_residual(A, GNSVector::basis(kAlpha, 0, 1), 1.0), std::sqrt(2.0), 1e-12);
}
