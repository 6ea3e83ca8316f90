#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "trefftz/error.hpp"
#include "trefftz/mesh.hpp"

using namespace trefftz;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no trefftz::Error thrown";
  return ErrorCode::InvalidArgument;
}

// Merge oracle: sorted union of breakpoints.
std::vector<Interval> merged(const std::vector<double>& a, const std::vector<double>& b) {
  std::set<double> pts(a.begin(), a.end());
  pts.insert(b.begin(), b.end());
  std::vector<double> v(pts.begin(), pts.end());
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) out.push_back({v[i], v[i + 1]});
  return out;
}

}  // namespace

TEST(Mesh, UnionInterfaceMatchesMerge) {
  const std::vector<std::vector<double>> cases[] = {
      {{0, 1}, {0, 1}},
      {{0, 0.5, 1}, {0, 0.25, 0.75, 1}},
      {{0, 0.3, 0.6, 1}, {0, 0.3, 0.9, 1}},
      {{-2, -1, 0, 3}, {-2, 3}},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(union_interface(c[0], c[1]), merged(c[0], c[1]));
    EXPECT_EQ(union_interface(c[1], c[0]), merged(c[0], c[1]));
  }
}

TEST(Mesh, UniformCounts) {
  const auto mesh = Mesh::uniform({0, 60, 60}, MaterialLayout::homogeneous(), 60, 60);
  EXPECT_EQ(mesh.num_elements(), 3600u);
  EXPECT_EQ(mesh.num_slabs(), 60u);
  EXPECT_EQ(mesh.count_faces(FaceKind::VerInternal), 3540u);
  EXPECT_EQ(mesh.count_faces(FaceKind::HorInternal), 3540u);
  EXPECT_EQ(mesh.count_faces(FaceKind::Bottom), 60u);
  EXPECT_EQ(mesh.count_faces(FaceKind::Top), 60u);
  EXPECT_EQ(mesh.count_faces(FaceKind::Left), 60u);
  EXPECT_EQ(mesh.count_faces(FaceKind::Right), 60u);
  EXPECT_DOUBLE_EQ(mesh.max_hx(), 1.0);
  EXPECT_TRUE(mesh.time_homogeneous());
}

TEST(Mesh, SingleElement) {
  const auto mesh = Mesh::uniform({0, 1, 1}, MaterialLayout::homogeneous(), 1, 1);
  EXPECT_EQ(mesh.num_elements(), 1u);
  std::size_t internal = 0, boundary = 0;
  for (const auto& f : mesh.faces()) (f.internal() ? internal : boundary) += 1;
  EXPECT_EQ(internal, 0u);
  EXPECT_EQ(boundary, 4u);
}

TEST(Mesh, HangingNodesTileTheDomain) {
  const SpaceTimeDomain dom{0, 3, 2};
  MaterialLayout mat;
  mat.breakpoints = {1.0};
  mat.eps = {1.0, 4.0};
  mat.mu = {1.0, 0.5};
  const std::vector<double> heights{0.5, 1.5};
  const auto mesh = Mesh::build(dom, mat, heights, {{0, 1, 2, 3}, {0, 0.5, 1, 3}});
  double area = 0.0;
  for (const auto& el : mesh.elements()) {
    area += el.area();
    EXPECT_DOUBLE_EQ(el.eps, mat.eps_at(el.x_center()));
    EXPECT_DOUBLE_EQ(el.mu, mat.mu_at(el.x_center()));
  }
  EXPECT_NEAR(area, dom.measure(), 1e-14);
  EXPECT_FALSE(mesh.time_homogeneous());

  // lower pieces of slab 1 follow the merged partition
  const auto lower = mesh.lower_faces(1);
  ASSERT_EQ(lower.size(), 4u);
  for (auto id : lower) {
    const auto& f = mesh.faces()[id];
    EXPECT_EQ(f.kind, FaceKind::HorInternal);
    const auto& lo = mesh.element(f.first);
    const auto& up = mesh.element(f.second);
    EXPECT_LE(lo.x0, f.x0);
    EXPECT_GE(lo.x1, f.x1);
    EXPECT_LE(up.x0, f.x0);
    EXPECT_GE(up.x1, f.x1);
    EXPECT_EQ(lo.slab, 0u);
    EXPECT_EQ(up.slab, 1u);
  }
  for (std::size_t s = 0; s < 2; ++s) {
    for (auto id : mesh.vertical_faces(s)) {
      const auto& f = mesh.faces()[id];
      if (f.kind != FaceKind::VerInternal) continue;
      EXPECT_DOUBLE_EQ(mesh.element(f.first).x1, f.x0);
      EXPECT_DOUBLE_EQ(mesh.element(f.second).x0, f.x0);
    }
  }
}

TEST(Mesh, LocateTiesGoToSmallerIndex) {
  const auto mesh = Mesh::uniform({0, 2, 2}, MaterialLayout::homogeneous(), 2, 2);
  EXPECT_EQ(mesh.locate(0.5, 0.5), 0u);
  EXPECT_EQ(mesh.locate(1.0, 0.5), 0u);
  EXPECT_EQ(mesh.locate(1.5, 1.0), 1u);
  EXPECT_EQ(mesh.locate(1.5, 1.5), 3u);
  EXPECT_EQ(mesh.locate_slab(1.0), 0u);
  EXPECT_EQ(mesh.locate_slab(2.0), 1u);
}

TEST(Mesh, MaterialLayout) {
  MaterialLayout mat;
  mat.breakpoints = {1.0};
  mat.eps = {1.0, 4.0};
  mat.mu = {1.0, 1.0};
  EXPECT_EQ(mat.interval_of(1.0), 0u);
  EXPECT_EQ(mat.interval_of(1.5), 1u);
  EXPECT_DOUBLE_EQ(mat.wave_speed_at(2.0), 0.5);
  EXPECT_FALSE(mat.is_homogeneous());
  EXPECT_TRUE(MaterialLayout::homogeneous(2.0, 3.0).is_homogeneous());
}

TEST(Mesh, Errors) {
  MaterialLayout mat;
  mat.breakpoints = {0.7};
  mat.eps = {1.0, 2.0};
  mat.mu = {1.0, 1.0};
  const std::vector<double> h2{1.0, 1.0};
  try {
    Mesh::build({0, 2, 2}, mat, h2, {{0, 0.7, 2}, {0, 1, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonconformingMaterial);
    EXPECT_NE(std::string(e.what()).find("slab 1"), std::string::npos) << e.what();
  }
  const std::vector<double> h1{2.0};
  const auto hom = MaterialLayout::homogeneous();
  EXPECT_EQ(code_of([&] { Mesh::build({0, 2, 2}, hom, h1, {{0}}); }), ErrorCode::EmptyPartition);
  EXPECT_EQ(code_of([&] { Mesh::build({0, 2, 2}, hom, h1, {{0, 1.5, 1.0, 2}}); }), ErrorCode::NegativeExtent);
  EXPECT_EQ(code_of([&] { Mesh::build({0, 2, 2}, hom, h1, {{0, 1, 3}}); }), ErrorCode::MismatchedDomain);
  const std::vector<double> bad_heights{1.0, 0.5};
  EXPECT_EQ(code_of([&] { Mesh::build({0, 2, 2}, hom, bad_heights, {{0, 2}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { Mesh::uniform({0, -1, 2}, hom, 2, 2); }), ErrorCode::NegativeExtent);
  EXPECT_EQ(code_of([&] { Mesh::uniform({0, 1, 1}, hom, 0, 2); }), ErrorCode::EmptyPartition);
}
