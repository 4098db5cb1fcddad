#include "curv4/lambda2.hpp"

#include <cmath>
#include <sstream>

namespace curv4 {

namespace {

constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Smallest projection norm accepted for a basis vector to count as outside
// the kernel of a unit decomposable form (the squared norms sum to 2).
constexpr double kKernelThreshold = 1e-6;

Mat6 build_selfdual_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat6 u;
  // clang-format off
  u << s, 0, 0, 0, 0, s,
       0, s, 0, 0,-s, 0,
       0, 0, s, s, 0, 0,
       s, 0, 0, 0, 0,-s,
       0, s, 0, 0, s, 0,
       0, 0, s,-s, 0, 0;
  // clang-format on
  return u;
}

}  // namespace

int pair_index(int i, int j) {
  for (int k = 0; k < 6; ++k) {
    if (kPairs[k].first == i && kPairs[k].second == j) return k;
  }
  throw std::out_of_range("pair_index: need 0 <= i < j <= 3");
}

std::pair<int, int> index_pair(int k) { return kPairs.at(static_cast<std::size_t>(k)); }

TwoForm TwoForm::basis(int i, int j) {
  Vec6 c = Vec6::Zero();
  c[pair_index(i, j)] = 1.0;
  return TwoForm(c);
}

double TwoForm::plucker_residual() const { return c_[0] * c_[5] - c_[1] * c_[4] + c_[2] * c_[3]; }

bool TwoForm::is_decomposable(double tolerance) const {
  return std::abs(plucker_residual()) <= tolerance;
}

Mat4 TwoForm::skew_matrix() const {
  Mat4 m = Mat4::Zero();
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    m(i, j) = c_[k];
    m(j, i) = -c_[k];
  }
  return m;
}

Plane::Plane(const Vec4& u, const Vec4& v, double tolerance) : u_(u), v_(v) {
  const double du = std::abs(u.norm() - 1.0);
  const double dv = std::abs(v.norm() - 1.0);
  const double uv = std::abs(u.dot(v));
  const double worst = std::max({du, dv, uv});
  if (!(worst <= tolerance)) {
    std::ostringstream os;
    os << "plane basis is not orthonormal (residual " << worst << ")";
    throw Error(ErrorCode::NotOrthonormal, os.str(), worst);
  }
}

Plane Plane::coordinate(int i, int j) {
  return Plane(Vec4::Unit(i), Vec4::Unit(j));
}

Plane FrameRotation::apply(const Plane& plane) const {
  return Plane(matrix * plane.u(), matrix * plane.v());
}

double span_distance(const Plane& a, const Plane& b) {
  return (a.projector() - b.projector()).norm();
}

const Mat6& selfdual_basis() {
  static const Mat6 u = build_selfdual_basis();
  return u;
}

TwoForm hodge_star(const TwoForm& w) {
  const Vec6& c = w.coefficients();
  Vec6 s;
  s << c[5], -c[4], c[3], c[2], -c[1], c[0];
  return TwoForm(s);
}

SelfDualSplit split_selfdual(const TwoForm& w) {
  const TwoForm star = hodge_star(w);
  const Vec6 coords = selfdual_basis() * w.coefficients();
  return SelfDualSplit{(w + star) * 0.5, (w - star) * 0.5, coords.head<3>(), coords.tail<3>()};
}

TwoForm form_from_selfdual_coords(const Vec3& plus, const Vec3& minus) {
  Vec6 coords;
  coords << plus, minus;
  return TwoForm(selfdual_basis().transpose() * coords);
}

TwoForm plane_to_form(const Plane& p) {
  const Vec4& u = p.u();
  const Vec4& v = p.v();
  Vec6 c;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    c[k] = u[i] * v[j] - u[j] * v[i];
  }
  return TwoForm(c);
}

Plane form_to_plane(const TwoForm& w) {
  const double unit_residual = std::abs(w.norm() - 1.0);
  if (unit_residual > tol::kDecomposable) {
    throw Error(ErrorCode::NotUnit, "two-form is not of unit norm", unit_residual);
  }
  const double pl = std::abs(w.plucker_residual());
  if (pl > tol::kDecomposable) {
    std::ostringstream os;
    os << "two-form is not decomposable (Plucker residual " << pl << ")";
    throw Error(ErrorCode::NotDecomposable, os.str(), pl);
  }
  // For w = u ^ v the skew matrix is v u^T - u v^T up to sign; its image is
  // the plane.
  const Mat4 omega = w.skew_matrix();
  int k = 0;
  while (k < 4 && omega.col(k).norm() <= kKernelThreshold) ++k;
  // Unreachable for a unit form, but guard anyway.
  if (k == 4) throw Error(ErrorCode::NotUnit, "two-form has empty image");
  const Vec4 a = omega.col(k).normalized();
  // a ^ (-omega a) == w for a unit vector a in the plane.
  Vec4 b = -(omega * a);
  b -= b.dot(a) * a;
  b.normalize();
  return Plane(a, b);
}

Plane orthogonal_complement(const Plane& p) {
  const Mat4 residual = Mat4::Identity() - p.projector();
  // Greedy Gram-Schmidt over the standard basis, largest residual first.
  Vec4 picked[2];
  int count = 0;
  Mat4 work = residual;
  for (; count < 2; ++count) {
    int best = 0;
    double best_norm = -1.0;
    for (int k = 0; k < 4; ++k) {
      const double n = work.col(k).norm();
      if (n > best_norm) {
        best_norm = n;
        best = k;
      }
    }
    picked[count] = work.col(best) / best_norm;
    const Vec4 x = picked[count];
    work -= x * (x.transpose() * work);
  }
  Plane perp(picked[0], picked[1]);
  const TwoForm target = hodge_star(plane_to_form(p));
  if (plane_to_form(perp).dot(target) < 0.0) {
    perp = Plane(picked[0], -picked[1]);
  }
  return perp;
}

Mat4 quaternion_left_matrix(const Eigen::Quaterniond& a) {
  const double w = a.w(), x = a.x(), y = a.y(), z = a.z();
  Mat4 m;
  // clang-format off
  m << w, -x, -y, -z,
       x,  w, -z,  y,
       y,  z,  w, -x,
       z, -y,  x,  w;
  // clang-format on
  return m;
}

Mat4 quaternion_right_matrix(const Eigen::Quaterniond& b) {
  const double w = b.w(), x = b.x(), y = b.y(), z = b.z();
  Mat4 m;
  // clang-format off
  m << w, -x, -y, -z,
       x,  w,  z, -y,
       y, -z,  w,  x,
       z,  y, -x,  w;
  // clang-format on
  return m;
}

Mat6 induced_on_two_forms(const Mat4& f) {
  Mat6 l;
  for (int a = 0; a < 6; ++a) {
    const auto [i, j] = kPairs[a];
    for (int b = 0; b < 6; ++b) {
      const auto [k, m] = kPairs[b];
      l(a, b) = f(i, k) * f(j, m) - f(i, m) * f(j, k);
    }
  }
  return l;
}

FrameRotation so4_from_quaternions(const Eigen::Quaterniond& p, const Eigen::Quaterniond& q) {
  const double dp = std::abs(p.norm() - 1.0);
  const double dq = std::abs(q.norm() - 1.0);
  if (dp > tol::kQuaternionUnit || dq > tol::kQuaternionUnit) {
    throw Error(ErrorCode::NotUnit, "quaternion is not of unit norm", std::max(dp, dq));
  }
  FrameRotation r;
  r.p = p;
  r.q = q;
  r.matrix = quaternion_left_matrix(p) * quaternion_right_matrix(q.conjugate());
  r.induced = induced_on_two_forms(r.matrix);
  return r;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::BianchiViolation: return "BianchiViolation";
    case ErrorCode::NotTraceless: return "NotTraceless";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::NonPositiveScalar: return "NonPositiveScalar";
    case ErrorCode::MissingK: return "MissingK";
    case ErrorCode::InconsistentContext: return "InconsistentContext";
    case ErrorCode::MismatchedInput: return "MismatchedInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::NotEinstein: return "NotEinstein";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace curv4
