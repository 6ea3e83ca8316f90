#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "trefftz/error.hpp"
#include "trefftz/reference.hpp"

using namespace trefftz;

namespace {

const SpaceTimeDomain kDomain{0.0, 60.0, 60.0};

double g(double x) { return std::exp(-(x - 10.0) * (x - 10.0) / 10.0); }

CharacteristicProfile pec_gaussian(double eps = 1.0, double mu = 1.0) {
  return CharacteristicProfile(kDomain, MaterialLayout::homogeneous(eps, mu), InitialData::gaussian(10, 10, 1, 1),
                               Extension::PeriodicOddEven);
}

}  // namespace

TEST(Reference, ReproducesInitialData) {
  const auto prof = CharacteristicProfile(kDomain, MaterialLayout::homogeneous(2.0, 0.5),
                                          InitialData::gaussian(20, 5, 1.0, -0.3), Extension::PeriodicOddEven);
  for (double x = 0.5; x < 60; x += 3.7) {
    const auto v = prof(x, 0.0);
    const double gx = std::exp(-(x - 20) * (x - 20) / 5.0);
    EXPECT_NEAR(v.e, gx, 1e-15);
    EXPECT_NEAR(v.h, -0.3 * gx, 1e-15);
  }
}

TEST(Reference, GaussianTravelsRightBeforeReflection) {
  // E0 = H0 is a pure right-mover: E(x, t) = g(x - t) until the wall at 60.
  const auto prof = pec_gaussian();
  for (double t : {0.0, 5.0, 12.5, 20.0})
    for (double x = t; x <= 60.0; x += 1.3) {
      EXPECT_NEAR(prof(x, t).e, g(x - t), 1e-14);
      EXPECT_NEAR(prof(x, t).h, g(x - t), 1e-14);
    }
}

TEST(Reference, PecWallsCarryNoElectricField) {
  // t = 0 is excluded: E0(x_l) = exp(-10) is not compatible with the wall.
  const auto prof = pec_gaussian(1.5, 0.7);
  for (double t = 0.5; t <= 60.0; t += 2.9) {
    EXPECT_NEAR(prof(0.0, t).e, 0.0, 1e-14);
    EXPECT_NEAR(prof(60.0, t).e, 0.0, 1e-14);
  }
}

TEST(Reference, OddEvenExtension) {
  const auto prof = pec_gaussian();
  for (double y : {0.5, 7.0, 13.0, 33.0}) {
    // E odd, H even about x_l; 2L-periodic
    EXPECT_NEAR(prof.u0(-y), -prof.w0(y), 1e-15);
    EXPECT_NEAR(prof.w0(-y), -prof.u0(y), 1e-15);
    EXPECT_NEAR(prof.u0(y + 120.0), prof.u0(y), 1e-15);
  }
}

TEST(Reference, SatisfiesMaxwellPointwise) {
  const double eps = 2.0, mu = 0.5;
  const auto prof = pec_gaussian(eps, mu);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.5, 59.5);
  const double h = 1e-5;
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng), t = u(rng);
    const auto xp = prof(x + h, t), xm = prof(x - h, t), tp = prof(x, t + h), tm = prof(x, t - h);
    const double r1 = (xp.e - xm.e) / (2 * h) + mu * (tp.h - tm.h) / (2 * h);
    const double r2 = (xp.h - xm.h) / (2 * h) + eps * (tp.e - tm.e) / (2 * h);
    EXPECT_LT(std::abs(r1), 1e-6);
    EXPECT_LT(std::abs(r2), 1e-6);
  }
}

TEST(Reference, DerivativesMatchProfiles) {
  const auto prof = pec_gaussian();
  const double h = 1e-6;
  for (double y : {3.0, 11.0, 50.0}) {
    EXPECT_NEAR(prof.du0(y), (prof.u0(y + h) - prof.u0(y - h)) / (2 * h), 1e-7);
    EXPECT_NEAR(prof.dw0(y), (prof.w0(y + h) - prof.w0(y - h)) / (2 * h), 1e-7);
  }
}

TEST(Reference, RobinIngoingCarriesBoundaryData) {
  // Zero initial data: the field is the incoming wave g_L(t - x).
  auto gl = [](double t) { return std::sin(t); };
  const CharacteristicProfile prof(kDomain, MaterialLayout::homogeneous(), InitialData::zero(), Extension::RobinIngoing,
                                   BoundaryCondition::robin(gl, {}));
  for (double t : {5.0, 10.0}) {
    const double x = 2.0;
    EXPECT_NEAR(prof(x, t).e, 0.5 * std::sin(t - x), 1e-14);
    EXPECT_NEAR(prof(x, t).h, 0.5 * std::sin(t - x), 1e-14);
    EXPECT_NEAR(prof(t + 1.0, t).e, 0.0, 1e-15);
  }
}

TEST(Reference, ChoosesExtensionFromBoundaryCondition) {
  const auto mesh = Mesh::uniform(kDomain, MaterialLayout::homogeneous(), 2, 2);
  ProblemData d;
  EXPECT_EQ(CharacteristicProfile::for_problem(mesh, d).extension(), Extension::PeriodicOddEven);
  d.bc = BoundaryCondition::robin();
  EXPECT_EQ(CharacteristicProfile::for_problem(mesh, d).extension(), Extension::RobinIngoing);
  d.bc = BoundaryCondition::dirichlet([](double) { return 1.0; }, {});
  try {
    CharacteristicProfile::for_problem(mesh, d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedBC);
  }
}

TEST(Reference, RejectsHeterogeneousMedia) {
  MaterialLayout mat;
  mat.breakpoints = {30.0};
  mat.eps = {1.0, 2.0};
  mat.mu = {1.0, 1.0};
  try {
    CharacteristicProfile(kDomain, mat, InitialData::zero(), Extension::FreeSpace);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonconstantMaterial);
  }
}

TEST(Reference, BestApproximationIsExactForPolynomials) {
  InitialData cubic;
  cubic.e0 = [](double x) { return 1.0 + x - 0.5 * x * x * x; };
  cubic.h0 = [](double x) { return x * x; };
  const CharacteristicProfile prof({-1, 1, 1}, MaterialLayout::homogeneous(), cubic, Extension::FreeSpace);
  Element el;
  el.x0 = -0.5;
  el.x1 = 0.25;
  el.t0 = 0.1;
  el.t1 = 0.6;
  EXPECT_LT(best_approximation_error(prof, el, 3), 1e-13);
  EXPECT_LT(best_approximation_error(prof, el, 3, ApproxNorm::H1c), 1e-10);
  EXPECT_GT(best_approximation_error(prof, el, 2), 1e-4);
}

TEST(Reference, BestApproximationConverges) {
  const CharacteristicProfile prof(kDomain, MaterialLayout::homogeneous(), InitialData::gaussian(10, 10, 1, 1),
                                   Extension::FreeSpace);
  Element el;
  el.x0 = 8.0;
  el.x1 = 9.0;
  el.t0 = 1.0;
  el.t1 = 2.0;
  double prev = 1e300;
  for (int p = 0; p <= 8; ++p) {
    const double e = best_approximation_error(prof, el, p);
    EXPECT_LT(e, prev);
    prev = e;
  }
  // halving h at p = 2 gains roughly 2^(p+2) on one element (order p+1 plus area)
  Element half = el;
  half.x1 = 8.5;
  half.t1 = 1.5;
  const double ratio = best_approximation_error(prof, el, 2) / best_approximation_error(prof, half, 2);
  EXPECT_GT(ratio, 8.0);
}
