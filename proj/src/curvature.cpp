#include "curv4/curvature.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace curv4 {

CurvatureOperator::CurvatureOperator(const Mat6& matrix, double tolerance) : m_(matrix) {
  const double sym = symmetry_residual(matrix);
  if (!(sym <= tolerance)) {
    std::ostringstream os;
    os << "operator matrix is not symmetric (residual " << sym << ")";
    throw Error(ErrorCode::NotSymmetric, os.str(), sym);
  }
  const double b = std::abs(bianchi_residual(matrix));
  if (!(b <= tolerance)) {
    std::ostringstream os;
    os << "first Bianchi identity violated (residual " << b << ")";
    throw Error(ErrorCode::BianchiViolation, os.str(), b);
  }
}

CurvatureOperator CurvatureOperator::assume_valid(const Mat6& matrix) {
  CurvatureOperator r;
  r.m_ = matrix;
  return r;
}

double CurvatureOperator::component(int i, int j, int k, int l) const {
  if (i == j || k == l) return 0.0;
  double sign = 1.0;
  if (i > j) {
    std::swap(i, j);
    sign = -sign;
  }
  if (k > l) {
    std::swap(k, l);
    sign = -sign;
  }
  return sign * m_(pair_index(i, j), pair_index(k, l));
}

CurvatureOperator CurvatureOperator::operator+(const CurvatureOperator& o) const {
  return assume_valid(m_ + o.m_);
}

CurvatureOperator CurvatureOperator::operator-(const CurvatureOperator& o) const {
  return assume_valid(m_ - o.m_);
}

CurvatureOperator CurvatureOperator::operator*(double s) const { return assume_valid(m_ * s); }

double symmetry_residual(const Mat6& m) { return (m - m.transpose()).norm(); }

double bianchi_residual(const Mat6& m) { return m(0, 5) - m(1, 4) + m(2, 3); }

CurvatureOperator validate(const Mat6& m, double tolerance) { return CurvatureOperator(m, tolerance); }

RandomStyle parse_random_style(std::string_view name) {
  if (name == "general") return RandomStyle::General;
  if (name == "einstein") return RandomStyle::Einstein;
  if (name == "weyl-only" || name == "weyl") return RandomStyle::WeylOnly;
  throw Error(ErrorCode::BadParams, "unknown random style '" + std::string(name) + "'");
}

const char* to_string(RandomStyle style) {
  switch (style) {
    case RandomStyle::General: return "general";
    case RandomStyle::Einstein: return "einstein";
    case RandomStyle::WeylOnly: return "weyl-only";
  }
  return "general";
}

CurvatureOperator random_curvature(std::uint64_t seed, RandomStyle style) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat6 g;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) g(i, j) = normal(rng);
  Mat6 m = 0.5 * (g + g.transpose());

  // Orthogonal projection onto the Bianchi hyperplane in the coordinates
  // (m05, m14, m23), whose normal is (1, -1, 1).
  const double r = bianchi_residual(m) / 3.0;
  m(0, 5) -= r;
  m(5, 0) -= r;
  m(1, 4) += r;
  m(4, 1) += r;
  m(2, 3) -= r;
  m(3, 2) -= r;

  const CurvatureOperator general(m);
  switch (style) {
    case RandomStyle::General: return general;
    case RandomStyle::Einstein: {
      const CurvatureDecomposition d = decompose(general);
      return d.scalar_part + d.weyl_part;
    }
    case RandomStyle::WeylOnly: return decompose(general).weyl_part;
  }
  return general;
}

double RicciTensor::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat4> es(matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

RicciTensor ricci_contract(const CurvatureOperator& r) {
  Mat4 rc = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) rc(i, k) += r.component(i, j, k, j);
  return RicciTensor{0.5 * (rc + rc.transpose())};
}

CurvatureOperator kulkarni_nomizu(const Mat4& a, const Mat4& b) {
  Mat6 m;
  for (int p = 0; p < 6; ++p) {
    const auto [x, y] = index_pair(p);
    for (int q = 0; q < 6; ++q) {
      const auto [z, w] = index_pair(q);
      m(p, q) = a(x, z) * b(y, w) + b(x, z) * a(y, w) - a(x, w) * b(y, z) - b(x, w) * a(y, z);
    }
  }
  return CurvatureOperator(m);
}

CurvatureDecomposition decompose(const CurvatureOperator& r) {
  const RicciTensor rc = ricci_contract(r);
  const double s = r.scalar();
  const Mat4 g = Mat4::Identity();
  CurvatureDecomposition d;
  d.scalar = s;
  d.scalar_part = kulkarni_nomizu(g, g) * (s / 24.0);
  d.ricci_part = kulkarni_nomizu(rc.traceless(), g) * 0.5;
  d.weyl_part = r - d.scalar_part - d.ricci_part;
  return d;
}

Mat6 selfdual_blocks(const CurvatureOperator& r) {
  const Mat6& u = selfdual_basis();
  return u * r.matrix() * u.transpose();
}

SymEigen3 sym_eigen(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (m + m.transpose()));
  SymEigen3 out{es.eigenvalues(), es.eigenvectors()};
  // First non-negligible component of each eigenvector made positive.
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < 3; ++k) {
      const double x = out.vectors(k, c);
      if (std::abs(x) > 1e-12) {
        if (x < 0) out.vectors.col(c) *= -1.0;
        break;
      }
    }
  }
  return out;
}

WeylBlocks weyl_blocks(const CurvatureOperator& r) {
  const Mat6 blocks = selfdual_blocks(decompose(r).weyl_part);
  WeylBlocks w;
  w.wplus = blocks.topLeftCorner<3, 3>();
  w.wminus = blocks.bottomRightCorner<3, 3>();
  const SymEigen3 ep = sym_eigen(w.wplus);
  const SymEigen3 em = sym_eigen(w.wminus);
  w.lambda_plus = ep.values;
  w.lambda_minus = em.values;
  w.vectors_plus = ep.vectors;
  w.vectors_minus = em.vectors;
  return w;
}

WeitzenbockOperator weitzenbock_r2(const CurvatureOperator& r) {
  const CurvatureDecomposition d = decompose(r);
  const Mat4 g = Mat4::Identity();
  WeitzenbockOperator out;
  out.matrix = (kulkarni_nomizu(g, g) * (d.scalar / 6.0) - d.weyl_part * 2.0).matrix();
  Eigen::SelfAdjointEigenSolver<Mat6> es(out.matrix, Eigen::EigenvaluesOnly);
  out.spectrum = es.eigenvalues();
  out.min_eigenvalue = out.spectrum[0];
  out.nonnegative_isotropic = out.min_eigenvalue >= -tol::kValidation;
  return out;
}

CurvatureOperator conjugate(const CurvatureOperator& r, const FrameRotation& frame) {
  const Mat6& l = frame.induced;
  return CurvatureOperator::assume_valid(l * r.matrix() * l.transpose());
}

CurvatureOperator pull_back(const CurvatureOperator& r, const FrameRotation& frame) {
  const Mat6& l = frame.induced;
  return CurvatureOperator::assume_valid(l.transpose() * r.matrix() * l);
}

CurvatureOperator reverse_orientation(const CurvatureOperator& r) {
  Mat4 f = Mat4::Identity();
  f(3, 3) = -1.0;
  const Mat6 l = induced_on_two_forms(f);
  return CurvatureOperator::assume_valid(l * r.matrix() * l.transpose());
}

double frobenius(const CurvatureOperator& a, const CurvatureOperator& b) {
  return (a.matrix().array() * b.matrix().array()).sum();
}

}  // namespace curv4
