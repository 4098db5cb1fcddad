#pragma once

// Algebraic curvature operators on two-forms of R^4.
//
// The operator matrix holds <R(e_i ^ e_j), e_k ^ e_l> = R_ijkl in the
// lexicographic basis, so the diagonal entries are sectional curvatures of
// the coordinate planes and the round unit sphere is the identity.

#include "curv4/common.hpp"
#include "curv4/lambda2.hpp"

#include <array>
#include <cstdint>
#include <string_view>

namespace curv4 {

class CurvatureOperator {
 public:
  /// The zero operator.
  CurvatureOperator() : m_(Mat6::Zero()) {}

  /// Validating constructor; throws NotSymmetric or BianchiViolation when the
  /// corresponding residual exceeds `tolerance`.
  explicit CurvatureOperator(const Mat6& matrix, double tolerance = tol::kValidation);

  const Mat6& matrix() const { return m_; }

  /// R_ijkl for any 0-based indices, antisymmetry in (i,j) and (k,l) applied.
  double component(int i, int j, int k, int l) const;

  /// S = 2 tr(M).
  double scalar() const { return 2.0 * m_.trace(); }

  /// Quadratic form <R w, w>.
  double apply(const TwoForm& a, const TwoForm& b) const {
    return a.coefficients().dot(m_ * b.coefficients());
  }

  CurvatureOperator operator+(const CurvatureOperator& o) const;
  CurvatureOperator operator-(const CurvatureOperator& o) const;
  CurvatureOperator operator*(double s) const;

  /// Wraps a matrix known to satisfy both identities (by construction) without
  /// re-checking them.
  static CurvatureOperator assume_valid(const Mat6& matrix);

 private:
  Mat6 m_;
};

double symmetry_residual(const Mat6& m);
/// <M e12, e34> - <M e13, e24> + <M e14, e23>.
double bianchi_residual(const Mat6& m);

/// Same as the validating constructor; spelled as a function for symmetry with
/// the rest of the API.
CurvatureOperator validate(const Mat6& m, double tolerance = tol::kValidation);

enum class RandomStyle { General, Einstein, WeylOnly };
RandomStyle parse_random_style(std::string_view name);
const char* to_string(RandomStyle style);

/// Deterministic in `seed`. General: symmetric matrix with GOE statistics
/// (diagonal N(0,1), off-diagonal N(0,1/2)) projected onto the Bianchi
/// hyperplane. Einstein removes the traceless Ricci part; WeylOnly keeps only
/// the Weyl part.
CurvatureOperator random_curvature(std::uint64_t seed, RandomStyle style = RandomStyle::General);

struct RicciTensor {
  Mat4 matrix;

  double scalar() const { return matrix.trace(); }
  Mat4 traceless() const { return matrix - 0.25 * scalar() * Mat4::Identity(); }
  double min_eigenvalue() const;
};

/// Rc_ik = sum_j R_ijkj.
RicciTensor ricci_contract(const CurvatureOperator& r);

/// (A o B)(x,y,z,w) = A(x,z)B(y,w) + B(x,z)A(y,w) - A(x,w)B(y,z) - B(x,w)A(y,z).
CurvatureOperator kulkarni_nomizu(const Mat4& a, const Mat4& b);

struct CurvatureDecomposition {
  double scalar = 0.0;
  CurvatureOperator scalar_part;  // (S/24) g o g = (S/12) Id
  CurvatureOperator ricci_part;   // (1/2) (Rc - S/4 g) o g
  CurvatureOperator weyl_part;
};

CurvatureDecomposition decompose(const CurvatureOperator& r);

/// The operator written in the (B+, B-) basis: [[A, B], [B^T, C]].
Mat6 selfdual_blocks(const CurvatureOperator& r);

struct WeylBlocks {
  Mat3 wplus;
  Mat3 wminus;
  Vec3 lambda_plus;   // ascending
  Vec3 lambda_minus;  // ascending
  Mat3 vectors_plus;  // orthonormal eigenvectors (columns), B+ coordinates
  Mat3 vectors_minus;

  double norm2_plus() const { return wplus.squaredNorm(); }
  double norm2_minus() const { return wminus.squaredNorm(); }
};

WeylBlocks weyl_blocks(const CurvatureOperator& r);

/// Sorted spectrum and eigenvectors of a symmetric 3x3 matrix.
struct SymEigen3 {
  Vec3 values;
  Mat3 vectors;
};
SymEigen3 sym_eigen(const Mat3& m);

struct WeitzenbockOperator {
  Mat6 matrix;  // lexicographic basis: (S/3) Id - 2 W
  Vec6 spectrum;  // ascending
  double min_eigenvalue = 0.0;
  bool nonnegative_isotropic = false;
};

/// R2 = (S/6) g o g - 2 W, i.e. (S/3) Id - 2 W+ on Lambda+ and (S/3) Id - 2 W-
/// on Lambda-.
WeitzenbockOperator weitzenbock_r2(const CurvatureOperator& r);

/// Push-forward by a frame rotation: R -> L R L^T with L the induced map.
CurvatureOperator conjugate(const CurvatureOperator& r, const FrameRotation& frame);
/// Components in the frame {F e_a}: R -> L^T R L.
CurvatureOperator pull_back(const CurvatureOperator& r, const FrameRotation& frame);

/// Orientation reversal e4 -> -e4; swaps the roles of Lambda+ and Lambda-.
CurvatureOperator reverse_orientation(const CurvatureOperator& r);

/// Frobenius pairing of the operator matrices.
double frobenius(const CurvatureOperator& a, const CurvatureOperator& b);

}  // namespace curv4
