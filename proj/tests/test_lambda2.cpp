#include "curv4/lambda2.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include <random>

using namespace curv4;

namespace {

Vec6 random_form(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec6 c;
  for (int i = 0; i < 6; ++i) c[i] = n(rng);
  return c;
}

Plane random_plane_test(std::mt19937_64& rng) {
  const auto p = oracle::random_orthonormal_pair(rng);
  return Plane(p.u, p.v);
}

Eigen::Quaterniond random_unit_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q;
}

}  // namespace

TEST_CASE("pair indices follow the lexicographic order") {
  CHECK(pair_index(0, 1) == 0);
  CHECK(pair_index(0, 2) == 1);
  CHECK(pair_index(0, 3) == 2);
  CHECK(pair_index(1, 2) == 3);
  CHECK(pair_index(1, 3) == 4);
  CHECK(pair_index(2, 3) == 5);
  for (int k = 0; k < 6; ++k) CHECK(pair_index(index_pair(k).first, index_pair(k).second) == k);
}

TEST_CASE("hodge star on basis forms") {
  CHECK((hodge_star(TwoForm::basis(0, 1)).coefficients() - TwoForm::basis(2, 3).coefficients()).norm() == 0.0);
  CHECK((hodge_star(TwoForm::basis(0, 2)).coefficients() + TwoForm::basis(1, 3).coefficients()).norm() == 0.0);
}

TEST_CASE("hodge star agrees with the Levi-Civita oracle and is an involution") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec6 c = random_form(rng);
    const TwoForm w(c);
    CHECK((hodge_star(w).coefficients() - oracle::hodge(c)).norm() < 1e-14);
    CHECK((hodge_star(hodge_star(w)).coefficients() - c).norm() < 1e-14);
  }
}

TEST_CASE("self-dual splitting") {
  const SelfDualSplit s = split_selfdual(TwoForm::basis(0, 1));
  Vec6 plus = Vec6::Zero(), minus = Vec6::Zero();
  plus[0] = 0.5;
  plus[5] = 0.5;
  minus[0] = 0.5;
  minus[5] = -0.5;
  CHECK((s.selfdual.coefficients() - plus).norm() < 1e-15);
  CHECK((s.antiselfdual.coefficients() - minus).norm() < 1e-15);

  const TwoForm b1((TwoForm::basis(0, 1) + TwoForm::basis(2, 3)) * (1.0 / std::sqrt(2.0)));
  const SelfDualSplit t = split_selfdual(b1);
  CHECK((t.selfdual.coefficients() - b1.coefficients()).norm() < 1e-15);
  CHECK(t.antiselfdual.norm() < 1e-15);
  CHECK((t.selfdual_coords - Vec3(1, 0, 0)).norm() < 1e-15);

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const TwoForm w(random_form(rng));
    const SelfDualSplit u = split_selfdual(w);
    CHECK(std::abs(w.norm() * w.norm() - u.selfdual.norm() * u.selfdual.norm() -
                   u.antiselfdual.norm() * u.antiselfdual.norm()) < 1e-12);
    // Each part is an eigenvector of the oracle star.
    CHECK((oracle::hodge(u.selfdual.coefficients()) - u.selfdual.coefficients()).norm() < 1e-13);
    CHECK((oracle::hodge(u.antiselfdual.coefficients()) + u.antiselfdual.coefficients()).norm() < 1e-13);
    CHECK((form_from_selfdual_coords(u.selfdual_coords, u.antiselfdual_coords).coefficients() - w.coefficients())
              .norm() < 1e-13);
  }
}

TEST_CASE("self-dual basis is orthogonal") {
  const Mat6& u = selfdual_basis();
  CHECK((u * u.transpose() - Mat6::Identity()).norm() < 1e-15);
}

TEST_CASE("plane to form") {
  const Vec4 e1(1, 0, 0, 0), e2(0, 1, 0, 0), e3(0, 0, 1, 0);
  CHECK((plane_to_form(Plane(e1, e2)).coefficients() - TwoForm::basis(0, 1).coefficients()).norm() == 0.0);
  CHECK((plane_to_form(Plane(e2, e1)).coefficients() + TwoForm::basis(0, 1).coefficients()).norm() == 0.0);
  const Vec4 d = (e1 + e2) / std::sqrt(2.0);
  Vec6 expect = Vec6::Zero();
  expect[pair_index(0, 2)] = 1.0 / std::sqrt(2.0);
  expect[pair_index(1, 2)] = 1.0 / std::sqrt(2.0);
  CHECK((plane_to_form(Plane(d, e3)).coefficients() - expect).norm() < 1e-15);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = oracle::random_orthonormal_pair(rng);
    CHECK((plane_to_form(Plane(p.u, p.v)).coefficients() - oracle::wedge(p.u, p.v)).norm() < 1e-14);
  }
}

TEST_CASE("plane constructor rejects non-orthonormal pairs") {
  CHECK(testutil::error_of([] { Plane(Vec4(1, 0, 0, 0), Vec4(1, 1, 0, 0)); }) == ErrorCode::NotOrthonormal);
  CHECK(testutil::error_of([] { Plane(Vec4(2, 0, 0, 0), Vec4(0, 1, 0, 0)); }) == ErrorCode::NotOrthonormal);
}

TEST_CASE("form to plane") {
  const Plane p = form_to_plane(TwoForm::basis(0, 1));
  CHECK(span_distance(p, Plane::coordinate(0, 1)) < 1e-15);

  const TwoForm b1((TwoForm::basis(0, 1) + TwoForm::basis(2, 3)) * (1.0 / std::sqrt(2.0)));
  CHECK(std::abs(b1.plucker_residual() - 0.5) < 1e-15);
  CHECK(testutil::error_of([&] { form_to_plane(b1); }) == ErrorCode::NotDecomposable);
  CHECK(testutil::error_of([] { form_to_plane(TwoForm::basis(0, 1) * 2.0); }) == ErrorCode::NotUnit);

  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const Plane q = random_plane_test(rng);
    const TwoForm w = plane_to_form(q);
    const Plane back = form_to_plane(w);
    CHECK(span_distance(q, back) < 1e-8);
    // Orientation is kept as well.
    CHECK((plane_to_form(back).coefficients() - w.coefficients()).norm() < 1e-12);
  }
}

TEST_CASE("orthogonal complement") {
  CHECK(span_distance(orthogonal_complement(Plane::coordinate(0, 1)), Plane::coordinate(2, 3)) < 1e-15);
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const Plane p = random_plane_test(rng);
    const Plane c = orthogonal_complement(p);
    CHECK(span_distance(orthogonal_complement(c), p) < 1e-12);
    CHECK((c.projector() + p.projector() - Mat4::Identity()).norm() < 1e-12);
    CHECK((plane_to_form(c).coefficients() - oracle::hodge(plane_to_form(p).coefficients())).norm() < 1e-12);
  }
}

TEST_CASE("quaternion frames") {
  const Eigen::Quaterniond one = Eigen::Quaterniond::Identity();
  const FrameRotation id = so4_from_quaternions(one, one);
  CHECK((id.matrix - Mat4::Identity()).norm() == 0.0);
  CHECK((id.induced - Mat6::Identity()).norm() < 1e-15);

  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Quaterniond p = random_unit_quaternion(rng);
    const Eigen::Quaterniond q = random_unit_quaternion(rng);

    const FrameRotation diag = so4_from_quaternions(p, p);
    CHECK((diag.matrix.transpose() * diag.matrix - Mat4::Identity()).norm() < 1e-14);
    CHECK(std::abs(diag.matrix.determinant() - 1.0) < 1e-14);
    CHECK((diag.matrix.col(0) - Vec4(1, 0, 0, 0)).norm() < 1e-14);

    const FrameRotation f = so4_from_quaternions(p, q);
    CHECK((f.matrix.transpose() * f.matrix - Mat4::Identity()).norm() < 1e-14);
    CHECK(std::abs(f.matrix.determinant() - 1.0) < 1e-14);
    const Mat6 blocks = selfdual_basis() * f.induced * selfdual_basis().transpose();
    CHECK(blocks.topRightCorner<3, 3>().norm() < 1e-10);
    CHECK(blocks.bottomLeftCorner<3, 3>().norm() < 1e-10);

    // Induced map against the oracle wedge of rotated vectors.
    const auto pr = oracle::random_orthonormal_pair(rng);
    const Vec6 lhs = f.induced * oracle::wedge(pr.u, pr.v);
    const Vec6 rhs = oracle::wedge(f.matrix * pr.u, f.matrix * pr.v);
    CHECK((lhs - rhs).norm() < 1e-13);
    CHECK((f.induced - induced_on_two_forms(f.matrix)).norm() < 1e-13);
  }
}

TEST_CASE("quaternion frames require unit quaternions") {
  const Eigen::Quaterniond two(2, 0, 0, 0);
  CHECK(testutil::error_of([&] { so4_from_quaternions(two, Eigen::Quaterniond::Identity()); }) ==
        ErrorCode::NotUnit);
}
