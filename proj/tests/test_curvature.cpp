#include "curv4/curvature.hpp"
#include "curv4/model_spaces.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include <random>

using namespace curv4;

namespace {

Mat4 random_symmetric4(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = n(rng);
  return 0.5 * (a + a.transpose());
}

Vec3 sorted(Vec3 v) {
  std::sort(v.data(), v.data() + 3);
  return v;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(CurvatureOperator(Mat6::Identity()));
  CHECK(CurvatureOperator(Mat6::Identity()).scalar() == 12.0);

  Mat6 bad = Mat6::Identity();
  bad(pair_index(0, 1), pair_index(2, 3)) = 1.0;
  bad(pair_index(2, 3), pair_index(0, 1)) = 1.0;
  CHECK(testutil::error_of([&] { CurvatureOperator r(bad); }) == ErrorCode::BianchiViolation);
  try {
    CurvatureOperator r(bad);
  } catch (const Error& e) {
    CHECK(e.residual() == doctest::Approx(1.0));
  }

  Mat6 asym = Mat6::Identity();
  asym(0, 1) = 0.5;
  CHECK(testutil::error_of([&] { CurvatureOperator r(asym); }) == ErrorCode::NotSymmetric);

  for (std::uint64_t s = 0; s < 50; ++s) {
    const CurvatureOperator r = random_curvature(s);
    CHECK_NOTHROW(CurvatureOperator(r.matrix()));
    CHECK(oracle::bianchi_residual(oracle::from_operator(r.matrix())) < 1e-12);
  }
}

TEST_CASE("random generator styles and determinism") {
  for (std::uint64_t s = 100; s < 150; ++s) {
    const CurvatureOperator e = random_curvature(s, RandomStyle::Einstein);
    CHECK(decompose(e).ricci_part.matrix().cwiseAbs().maxCoeff() < 1e-10);
    const CurvatureOperator w = random_curvature(s, RandomStyle::WeylOnly);
    CHECK(std::abs(w.scalar()) < 1e-12);
    CHECK(ricci_contract(w).matrix.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(oracle::ricci(oracle::from_operator(w.matrix())).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((random_curvature(s).matrix() - random_curvature(s).matrix()).norm() == 0.0);
  }
  CHECK((random_curvature(1).matrix() - random_curvature(2).matrix()).norm() > 0.1);
}

TEST_CASE("components follow the antisymmetries") {
  const CurvatureOperator r = random_curvature(7);
  const oracle::Tensor4 t = oracle::from_operator(r.matrix());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) CHECK(r.component(i, j, k, l) == t(i, j, k, l));
}

TEST_CASE("Ricci contraction") {
  CHECK((ricci_contract(CurvatureOperator(Mat6::Identity())).matrix - 3.0 * Mat4::Identity()).norm() < 1e-15);
  const ModelSpace prod = model_curvature(ModelKind::ProductS2S2);
  CHECK((ricci_contract(prod.curvature).matrix - Mat4::Identity()).norm() < 1e-15);
  CHECK(ricci_contract(random_curvature(3, RandomStyle::WeylOnly)).matrix.norm() < 1e-12);

  for (std::uint64_t s = 0; s < 100; ++s) {
    const CurvatureOperator r = random_curvature(s);
    const oracle::Tensor4 t = oracle::from_operator(r.matrix());
    const RicciTensor ric = ricci_contract(r);
    CHECK((ric.matrix - oracle::ricci(t)).norm() < 1e-13);
    CHECK(std::abs(ric.scalar() - r.scalar()) < 1e-12);
    CHECK(std::abs(ric.traceless().trace()) < 1e-12);
  }
}

TEST_CASE("Kulkarni-Nomizu product") {
  const Mat4 g = Mat4::Identity();
  const CurvatureOperator gg = kulkarni_nomizu(g, g);
  CHECK((gg.matrix() - 2.0 * Mat6::Identity()).norm() < 1e-15);
  CHECK((ricci_contract(gg).matrix - 6.0 * Mat4::Identity()).norm() < 1e-15);
  CHECK(gg.scalar() == doctest::Approx(24.0));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat4 a = random_symmetric4(rng);
    const Mat4 b = random_symmetric4(rng);
    const CurvatureOperator ab = kulkarni_nomizu(a, b);
    CHECK((ab.matrix() - kulkarni_nomizu(b, a).matrix()).norm() < 1e-14);
    CHECK((ab.matrix() - oracle::to_operator(oracle::kulkarni_nomizu(a, b))).norm() < 1e-13);
    CHECK(oracle::bianchi_residual(oracle::from_operator(ab.matrix())) < 1e-13);
  }
}

TEST_CASE("decomposition of model operators") {
  const CurvatureDecomposition s4 = decompose(CurvatureOperator(Mat6::Identity()));
  CHECK(s4.weyl_part.matrix().norm() < 1e-15);
  CHECK(s4.ricci_part.matrix().norm() < 1e-15);
  CHECK((s4.scalar_part.matrix() - Mat6::Identity()).norm() < 1e-15);

  const ModelSpace cp2 = model_with_scalar(ModelKind::CP2, 12.0);
  const WeylBlocks w = weyl_blocks(cp2.curvature);
  CHECK(w.wminus.norm() < 1e-14);
  CHECK((w.lambda_plus - Vec3(-1, -1, 2)).norm() < 1e-14);
  CHECK(w.lambda_minus.norm() < 1e-14);

  const WeylBlocks p = weyl_blocks(model_curvature(ModelKind::ProductS2S2).curvature);
  CHECK((p.lambda_plus - Vec3(-1.0 / 3, -1.0 / 3, 2.0 / 3)).norm() < 1e-14);
  CHECK((p.lambda_minus - Vec3(-1.0 / 3, -1.0 / 3, 2.0 / 3)).norm() < 1e-14);
}

TEST_CASE("decomposition against the 4-index Weyl oracle") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const CurvatureOperator r = random_curvature(s);
    const CurvatureDecomposition d = decompose(r);
    const Mat6 wref = oracle::to_operator(oracle::weyl(oracle::from_operator(r.matrix())));
    CHECK((d.weyl_part.matrix() - wref).norm() < 1e-13);
    CHECK(((d.scalar_part + d.ricci_part + d.weyl_part).matrix() - r.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(frobenius(d.scalar_part, d.ricci_part)) < 1e-12);
    CHECK(std::abs(frobenius(d.scalar_part, d.weyl_part)) < 1e-12);
    CHECK(std::abs(frobenius(d.ricci_part, d.weyl_part)) < 1e-12);
    // Ricci part is (1/2) Rc0 o g.
    const Mat6 rref = 0.5 * oracle::to_operator(oracle::kulkarni_nomizu(ricci_contract(r).traceless(), Mat4::Identity()));
    CHECK((d.ricci_part.matrix() - rref).norm() < 1e-13);
  }
}

TEST_CASE("Weyl blocks") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CurvatureOperator w = random_curvature(s, RandomStyle::WeylOnly);
    const WeylBlocks b = weyl_blocks(w);
    CHECK(std::abs(b.norm2_plus() + b.norm2_minus() - w.matrix().squaredNorm()) < 1e-12);
    CHECK(std::abs(b.wplus.trace()) < 1e-13);
    CHECK(std::abs(b.wminus.trace()) < 1e-13);
    CHECK((sorted(Eigen::SelfAdjointEigenSolver<Mat3>(b.wplus).eigenvalues()) - b.lambda_plus).norm() < 1e-12);
    CHECK((b.vectors_plus * b.lambda_plus.asDiagonal() * b.vectors_plus.transpose() - b.wplus).norm() < 1e-12);
    // W+ acts on self-dual forms: <W w+, w+> for w+ built from the basis.
    const Vec3 x(0.3, -0.5, 0.8);
    const TwoForm f = form_from_selfdual_coords(x, Vec3::Zero());
    CHECK(std::abs(w.apply(f, f) - x.dot(b.wplus * x)) < 1e-12);
  }
}

TEST_CASE("Weitzenbock operator") {
  const WeitzenbockOperator s4 = weitzenbock_r2(CurvatureOperator(Mat6::Identity()));
  CHECK((s4.matrix - 4.0 * Mat6::Identity()).norm() < 1e-14);
  CHECK(s4.nonnegative_isotropic);

  const WeitzenbockOperator prod = weitzenbock_r2(model_curvature(ModelKind::ProductS2S2).curvature);
  CHECK(std::abs(prod.min_eigenvalue) < 1e-14);
  CHECK(prod.nonnegative_isotropic);

  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0.0, 1.0);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const CurvatureOperator r = random_curvature(s);
    const WeitzenbockOperator r2 = weitzenbock_r2(r);
    const WeylBlocks w = weyl_blocks(r);
    const double S = r.scalar();
    const Vec3 x(n(rng), n(rng), n(rng));
    const Vec3 y(n(rng), n(rng), n(rng));
    const Vec6 fp = form_from_selfdual_coords(x, Vec3::Zero()).coefficients();
    const Vec6 fm = form_from_selfdual_coords(Vec3::Zero(), y).coefficients();
    const double qp = fp.dot(r2.matrix * fp);
    const double qm = fm.dot(r2.matrix * fm);
    CHECK(qp <= (S / 3 - 2 * w.lambda_plus[0]) * x.squaredNorm() + 1e-10);
    CHECK(qp >= (S / 3 - 2 * w.lambda_plus[2]) * x.squaredNorm() - 1e-10);
    CHECK(qm <= (S / 3 - 2 * w.lambda_minus[0]) * y.squaredNorm() + 1e-10);
    CHECK(qm >= (S / 3 - 2 * w.lambda_minus[2]) * y.squaredNorm() - 1e-10);
  }
}

TEST_CASE("frame conjugation") {
  std::mt19937_64 rng(41);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const CurvatureOperator r = random_curvature(s);
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Quaterniond p(n(rng), n(rng), n(rng), n(rng)), q(n(rng), n(rng), n(rng), n(rng));
    p.normalize();
    q.normalize();
    const FrameRotation f = so4_from_quaternions(p, q);
    const CurvatureOperator c = conjugate(r, f);
    const oracle::Tensor4 t = oracle::from_operator(r.matrix());
    const oracle::Tensor4 tc = oracle::from_operator(c.matrix());
    const auto pr = oracle::random_orthonormal_pair(rng);
    CHECK(std::abs(oracle::sectional(tc, f.matrix * pr.u, f.matrix * pr.v) - oracle::sectional(t, pr.u, pr.v)) <
          1e-12);
    CHECK((pull_back(c, f).matrix() - r.matrix()).norm() < 1e-12);
    const WeylBlocks a = weyl_blocks(r), b = weyl_blocks(c);
    CHECK((a.lambda_plus - b.lambda_plus).norm() < 1e-12);
    CHECK((a.lambda_minus - b.lambda_minus).norm() < 1e-12);
  }
}

TEST_CASE("orientation reversal swaps the half Weyl blocks") {
  const CurvatureOperator r = random_curvature(5);
  const WeylBlocks a = weyl_blocks(r), b = weyl_blocks(reverse_orientation(r));
  CHECK((a.lambda_plus - b.lambda_minus).norm() < 1e-12);
  CHECK((a.lambda_minus - b.lambda_plus).norm() < 1e-12);
}
