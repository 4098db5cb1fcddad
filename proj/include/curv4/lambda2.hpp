#pragma once

// Two-forms on R^4.
//
// Coordinates are taken in the lexicographic basis
//   e12, e13, e14, e23, e24, e34
// with every basis element of unit norm. Self-dual and anti-self-dual
// coordinates use the orthonormal bases
//   B+ = (e12 + e34, e13 - e24, e14 + e23) / sqrt(2)
//   B- = (e12 - e34, e13 + e24, e14 - e23) / sqrt(2)
// All 6x6 matrices in the library follow the lexicographic order.

#include "curv4/common.hpp"

#include <Eigen/Geometry>

#include <array>
#include <utility>

namespace curv4 {

/// Index of e_i ^ e_j (0-based, i < j) in the lexicographic basis.
int pair_index(int i, int j);
/// The (i, j) pair with i < j stored at lexicographic slot k.
std::pair<int, int> index_pair(int k);

class TwoForm {
 public:
  TwoForm() : c_(Vec6::Zero()) {}
  explicit TwoForm(const Vec6& coefficients) : c_(coefficients) {}

  static TwoForm basis(int i, int j);

  const Vec6& coefficients() const { return c_; }
  double operator[](int k) const { return c_[k]; }

  double norm() const { return c_.norm(); }
  double dot(const TwoForm& other) const { return c_.dot(other.c_); }

  /// c12 c34 - c13 c24 + c14 c23; zero iff the form is decomposable.
  double plucker_residual() const;
  bool is_decomposable(double tolerance = tol::kDecomposable) const;

  /// Skew 4x4 matrix with entries (i, j) = c_ij.
  Mat4 skew_matrix() const;

  TwoForm operator+(const TwoForm& o) const { return TwoForm(c_ + o.c_); }
  TwoForm operator-(const TwoForm& o) const { return TwoForm(c_ - o.c_); }
  TwoForm operator-() const { return TwoForm(-c_); }
  TwoForm operator*(double s) const { return TwoForm(c_ * s); }
  friend TwoForm operator*(double s, const TwoForm& w) { return w * s; }

 private:
  Vec6 c_;
};

/// Oriented 2-plane spanned by an orthonormal pair (u, v).
class Plane {
 public:
  /// Throws Error(NotOrthonormal) if |u|, |v| differ from 1 or <u,v> != 0
  /// beyond `tolerance`.
  Plane(const Vec4& u, const Vec4& v, double tolerance = tol::kOrthonormal);

  static Plane coordinate(int i, int j);

  const Vec4& u() const { return u_; }
  const Vec4& v() const { return v_; }

  /// Orthogonal projector onto the span.
  Mat4 projector() const { return u_ * u_.transpose() + v_ * v_.transpose(); }

 private:
  Vec4 u_;
  Vec4 v_;
};

/// Distance between the spans of two planes (Frobenius norm of projector
/// difference).
double span_distance(const Plane& a, const Plane& b);

/// Rows are the B+ then B- basis vectors in lexicographic coordinates, so
/// `selfdual_basis() * w` gives (B+ coords, B- coords).
const Mat6& selfdual_basis();

struct SelfDualSplit {
  TwoForm selfdual;
  TwoForm antiselfdual;
  Vec3 selfdual_coords;      // in B+
  Vec3 antiselfdual_coords;  // in B-
};

TwoForm hodge_star(const TwoForm& w);
SelfDualSplit split_selfdual(const TwoForm& w);
/// Inverse of the coordinate map: the form whose B+/B- coordinates are given.
TwoForm form_from_selfdual_coords(const Vec3& plus, const Vec3& minus);

/// u ^ v as a unit decomposable form.
TwoForm plane_to_form(const Plane& p);

/// Recovers an oriented plane with plane_to_form(result) == w. The first
/// vector is the normalized image of the earliest standard basis vector not in
/// the kernel of w's skew matrix.
/// Throws NotUnit or NotDecomposable.
Plane form_to_plane(const TwoForm& w);

/// The complement, oriented so that w_P ^ w_{P-perp} is a positive multiple of
/// the volume form; equivalently plane_to_form(result) == hodge_star(w_P).
Plane orthogonal_complement(const Plane& p);

/// Rotation x -> p x conj(q) of R^4 = H, with (1, i, j, k) = (e1, e2, e3, e4).
struct FrameRotation {
  Eigen::Quaterniond p;
  Eigen::Quaterniond q;
  Mat4 matrix;   // orthogonal, det +1
  Mat6 induced;  // action on two-forms, lexicographic basis

  Vec4 apply(const Vec4& x) const { return matrix * x; }
  TwoForm apply(const TwoForm& w) const { return TwoForm(induced * w.coefficients()); }
  Plane apply(const Plane& plane) const;
};

/// Throws NotUnit if |p| or |q| differs from 1 by more than 1e-12.
FrameRotation so4_from_quaternions(const Eigen::Quaterniond& p,
                                   const Eigen::Quaterniond& q);

/// Action of an arbitrary 4x4 matrix on two-forms: column (kl) holds the
/// lexicographic coordinates of (F e_k) ^ (F e_l).
Mat6 induced_on_two_forms(const Mat4& frame);

/// Hamilton product as matrices: left(a) * x == a x, right(b) * x == x b.
Mat4 quaternion_left_matrix(const Eigen::Quaterniond& a);
Mat4 quaternion_right_matrix(const Eigen::Quaterniond& b);

}  // namespace curv4
