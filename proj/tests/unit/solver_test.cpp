#include <cmath>
#include <memory>
#include <sstream>

#include <gtest/gtest.h>

#include "trefftz/analysis.hpp"
#include "trefftz/error.hpp"
#include "trefftz/reference.hpp"
#include "trefftz/solver.hpp"

using namespace trefftz;

namespace {

std::shared_ptr<const Discretization> uniform(double L, double T, std::size_t nx, std::size_t nt, BasisFamily family,
                                              int p) {
  auto mesh = std::make_shared<const Mesh>(Mesh::uniform({0, L, T}, MaterialLayout::homogeneous(), nx, nt));
  return std::make_shared<const Discretization>(mesh, BasisSpec{family, p, {}});
}

ProblemData gaussian_problem() {
  ProblemData d;
  d.initial = InitialData::gaussian(5.0, 1.0, 1.0, 0.5);
  return d;
}

}  // namespace

TEST(Solver, ConstantFieldIsExactForAllDegrees) {
  ProblemData data;
  data.initial = InitialData::constant(0.0, 1.0);
  for (auto family : {BasisFamily::TrefftzTransport, BasisFamily::FullPolynomial}) {
    for (int p = 0; p <= 3; ++p) {
      const auto sol = march(uniform(3, 2, 4, 3, family, p), data);
      for (double x : {0.0, 0.7, 2.2, 3.0}) {
        const auto v = sol.evaluate(x, 1.3);
        EXPECT_NEAR(v.e, 0.0, 1e-11);
        EXPECT_NEAR(v.h, 1.0, 1e-11);
      }
    }
  }
}

TEST(Solver, ZeroDataGivesZeroField) {
  const auto sol = march(uniform(2, 2, 3, 3, BasisFamily::TrefftzTransport, 2), ProblemData{});
  EXPECT_EQ(sol.global_coefficients().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Solver, ErrorDecreasesWithDegree) {
  const auto data = gaussian_problem();
  double prev = 1.0;
  for (int p = 1; p <= 4; ++p) {
    const auto disc = uniform(10, 4, 20, 8, BasisFamily::TrefftzTransport, p);
    const auto sol = march(disc, data);
    const auto ref = CharacteristicProfile::for_problem(disc->mesh(), data);
    const double e = l2_relative_error(sol, ref);
    EXPECT_LT(e, prev) << "p=" << p;
    prev = e;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(Solver, FactorizationReuseDoesNotChangeResult) {
  const auto disc = uniform(10, 4, 20, 8, BasisFamily::TrefftzTransport, 2);
  const auto data = gaussian_problem();
  MarchOptions fresh;
  fresh.reuse_factorization = false;
  const auto a = march(disc, data).global_coefficients();
  const auto b = march(disc, data, fresh).global_coefficients();
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Solver, Deterministic) {
  const auto disc = uniform(10, 4, 20, 8, BasisFamily::FullPolynomial, 2);
  const auto data = gaussian_problem();
  const auto a = march(disc, data).global_coefficients();
  const auto b = march(disc, data).global_coefficients();
  ASSERT_EQ(a.size(), b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Solver, UpdateMatrixAdvancesOneSlab) {
  const auto disc = uniform(10, 3, 10, 3, BasisFamily::TrefftzTransport, 2);
  const auto data = gaussian_problem();
  const auto U = update_matrix(disc, ProblemData{});
  EXPECT_EQ(U.rows(), 60);
  EXPECT_EQ(U.cols(), 60);
  const auto sol = march(disc, data);
  for (std::size_t s = 1; s < 3; ++s) {
    const Eigen::VectorXd next = U * sol.slab_coefficients(s - 1);
    EXPECT_LT((next - sol.slab_coefficients(s)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Solver, UpdateMatrixNeedsHomogeneousSlabs) {
  auto mesh = std::make_shared<const Mesh>(
      Mesh::build({0, 1, 1}, MaterialLayout::homogeneous(), std::vector<double>{0.5, 0.5}, {{0, 1}, {0, 0.5, 1}}));
  auto disc = std::make_shared<const Discretization>(mesh, BasisSpec{});
  try {
    update_matrix(disc, ProblemData{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InhomogeneousSlabs);
  }
  auto single = uniform(1, 1, 2, 1, BasisFamily::TrefftzTransport, 1);
  EXPECT_THROW(update_matrix(single, ProblemData{}), Error);
}

TEST(Solver, SpectrumOfKnownMatrices) {
  const auto id = spectrum(Eigen::MatrixXd::Identity(5, 5));
  EXPECT_NEAR(id.spectral_radius, 1.0, 1e-15);
  EXPECT_NEAR(id.condition, 1.0, 1e-14);
  for (Eigen::Index i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(id.eigenvalues[i] - 1.0), 0.0, 1e-15);

  Eigen::MatrixXd rot(2, 2);
  rot << 0.0, -0.5, 0.5, 0.0;  // eigenvalues +-0.5i
  const auto r = spectrum(rot);
  EXPECT_NEAR(r.spectral_radius, 0.5, 1e-15);

  Eigen::MatrixXd diag = Eigen::Vector3d(4.0, 2.0, 0.5).asDiagonal();
  EXPECT_NEAR(condition_number(diag), 8.0, 1e-13);
  EXPECT_TRUE(std::isinf(spectrum(Eigen::MatrixXd::Zero(3, 3)).condition));
}

TEST(Solver, TrefftzUpdateIsNonExpansive) {
  for (int p = 0; p <= 3; ++p) {
    const auto U = update_matrix(uniform(12, 2, 12, 2, BasisFamily::TrefftzTransport, p), ProblemData{});
    EXPECT_LE(spectrum(U, {true, false}).spectral_radius, 1.0 + 1e-10) << "p=" << p;
  }
}

TEST(Solver, SolutionFieldAccessAndCsv) {
  const auto disc = uniform(2, 1, 2, 1, BasisFamily::TrefftzTransport, 0);
  Eigen::VectorXd c(4);
  c << 1.0, 0.0, 0.0, 0.5;
  const SolutionField f(disc, {c});
  const auto v = f.evaluate(0.5, 0.5);
  EXPECT_DOUBLE_EQ(v.e, 1.0);  // v_E = 1, v_H = 1 for the right-mover with eps = mu = 1
  EXPECT_DOUBLE_EQ(v.h, 1.0);
  const auto w = f.evaluate_in(1, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(w.e, 0.5);
  EXPECT_DOUBLE_EQ(w.h, -0.5);
  std::ostringstream os;
  f.write_csv(os);
  EXPECT_EQ(os.str(), "slab,element,basis,value\n0,0,0,1\n0,0,1,0\n0,1,0,0\n0,1,1,0.5\n");
  EXPECT_THROW(SolutionField(disc, {Eigen::VectorXd::Zero(3)}), Error);
}
