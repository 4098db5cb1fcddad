#pragma once

// Brute-force reference implementations on full 4-index arrays. They share no
// code with the library beyond the Eigen types, so agreement is evidence.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace oracle {

using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

struct Tensor4 {
  std::array<double, 256> a{};
  double& operator()(int i, int j, int k, int l) { return a[((i * 4 + j) * 4 + k) * 4 + l]; }
  double operator()(int i, int j, int k, int l) const { return a[((i * 4 + j) * 4 + k) * 4 + l]; }
};

inline constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

inline Tensor4 from_operator(const Mat6& m) {
  Tensor4 t;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      const int i = kPairs[p][0], j = kPairs[p][1], k = kPairs[q][0], l = kPairs[q][1];
      const double v = m(p, q);
      t(i, j, k, l) = v;
      t(j, i, k, l) = -v;
      t(i, j, l, k) = -v;
      t(j, i, l, k) = v;
    }
  return t;
}

inline Mat6 to_operator(const Tensor4& t) {
  Mat6 m;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) m(p, q) = t(kPairs[p][0], kPairs[p][1], kPairs[q][0], kPairs[q][1]);
  return m;
}

/// Rc_ik = sum_j R_ijkj.
inline Mat4 ricci(const Tensor4& t) {
  Mat4 r = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) r(i, k) += t(i, j, k, j);
  return r;
}

inline double scalar(const Tensor4& t) { return ricci(t).trace(); }

/// (h o k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il.
inline Tensor4 kulkarni_nomizu(const Mat4& h, const Mat4& k) {
  Tensor4 t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          t(i, j, a, b) = h(i, a) * k(j, b) + h(j, b) * k(i, a) - h(i, b) * k(j, a) - h(j, a) * k(i, b);
  return t;
}

inline Tensor4 axpy(double s, const Tensor4& x, const Tensor4& y) {
  Tensor4 t;
  for (int n = 0; n < 256; ++n) t.a[n] = s * x.a[n] + y.a[n];
  return t;
}

/// Weyl tensor in dimension four: R - 1/2 Rc o g + S/12 g o g.
inline Tensor4 weyl(const Tensor4& r) {
  const Mat4 g = Mat4::Identity();
  const Tensor4 rcg = kulkarni_nomizu(ricci(r), g);
  const Tensor4 gg = kulkarni_nomizu(g, g);
  return axpy(scalar(r) / 12.0, gg, axpy(-0.5, rcg, r));
}

inline double bianchi_residual(const Tensor4& t) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          worst = std::max(worst, std::abs(t(i, j, k, l) + t(j, k, i, l) + t(k, i, j, l)));
  return worst;
}

/// R(u, v, u, v) / |u ^ v|^2.
inline double sectional(const Tensor4& t, const Vec4& u, const Vec4& v) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += t(i, j, k, l) * u[i] * v[j] * u[k] * v[l];
  const double area2 = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
  return s / area2;
}

inline int levi_civita(int i, int j, int k, int l) {
  const int p[4] = {i, j, k, l};
  int sign = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      if (p[a] == p[b]) return 0;
      if (p[a] > p[b]) sign = -sign;
    }
  return sign;
}

/// Skew 4x4 matrix of a two-form given in lexicographic coordinates.
inline Mat4 skew(const Vec6& c) {
  Mat4 w = Mat4::Zero();
  for (int p = 0; p < 6; ++p) {
    w(kPairs[p][0], kPairs[p][1]) = c[p];
    w(kPairs[p][1], kPairs[p][0]) = -c[p];
  }
  return w;
}

inline Vec6 coords(const Mat4& w) {
  Vec6 c;
  for (int p = 0; p < 6; ++p) c[p] = w(kPairs[p][0], kPairs[p][1]);
  return c;
}

/// (*w)_ij = 1/2 sum_kl eps_ijkl w_kl.
inline Vec6 hodge(const Vec6& c) {
  const Mat4 w = skew(c);
  Mat4 s = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s(i, j) += 0.5 * levi_civita(i, j, k, l) * w(k, l);
  return coords(s);
}

/// (u ^ v)_ij = u_i v_j - u_j v_i.
inline Vec6 wedge(const Vec4& u, const Vec4& v) { return coords(u * v.transpose() - v * u.transpose()); }

struct PlanePair {
  Vec4 u;
  Vec4 v;
};

inline PlanePair random_orthonormal_pair(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec4 u(n(rng), n(rng), n(rng), n(rng));
  Vec4 v(n(rng), n(rng), n(rng), n(rng));
  u.normalize();
  v -= v.dot(u) * u;
  v.normalize();
  return {u, v};
}

/// Orthonormal basis of the complement of span{u, v}; orientation unspecified.
inline PlanePair complement(const PlanePair& p) {
  Eigen::Matrix<double, 4, 2> a;
  a << p.u, p.v;
  Eigen::FullPivHouseholderQR<Eigen::Matrix<double, 4, 2>> qr(a);
  const Mat4 q = qr.matrixQ();
  return {q.col(2), q.col(3)};
}

}  // namespace oracle
