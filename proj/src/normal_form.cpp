#include "curv4/normal_form.hpp"

#include "curv4/extremes.hpp"

#include <cmath>
#include <sstream>

namespace curv4 {

namespace {

// Eigenvectors with the third column replaced by the cross product of the
// first two, so the frame has determinant +1.
Mat3 oriented(const Mat3& v) {
  Mat3 out = v;
  out.col(2) = v.col(0).cross(v.col(1));
  return out;
}

// Of q and -q, pick the one with positive real part (first non-negligible
// component positive when the real part vanishes).
Eigen::Quaterniond canonical_branch(Eigen::Quaterniond q) {
  q.normalize();
  const Vec4 c(q.w(), q.x(), q.y(), q.z());
  for (int k = 0; k < 4; ++k) {
    if (std::abs(c[k]) > 1e-12) {
      if (c[k] < 0) q.coeffs() *= -1.0;
      break;
    }
  }
  return q;
}

// Rows: e12, e13, e14, e34, e42, e23 in lexicographic coordinates.
Mat6 paired_basis() {
  Mat6 p = Mat6::Zero();
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  p(2, 2) = 1.0;
  p(3, 5) = 1.0;
  p(4, 4) = -1.0;
  p(5, 3) = 1.0;
  return p;
}

}  // namespace

BergerNormalForm berger_normal_form(const CurvatureOperator& r) {
  const WeylBlocks w = weyl_blocks(r);
  const Eigen::Quaterniond p = canonical_branch(Eigen::Quaterniond(oriented(w.vectors_plus)));
  const Eigen::Quaterniond q = canonical_branch(Eigen::Quaterniond(oriented(w.vectors_minus)));
  BergerNormalForm nf;
  nf.a = 0.5 * (w.lambda_plus + w.lambda_minus);
  nf.b = 0.5 * (w.lambda_plus - w.lambda_minus);
  nf.frame = so4_from_quaternions(p, q);
  return nf;
}

Mat6 weyl_in_paired_basis(const CurvatureOperator& r, const FrameRotation& frame) {
  const Mat6 wf = pull_back(decompose(r).weyl_part, frame).matrix();
  const Mat6 p = paired_basis();
  return p * wf * p.transpose();
}

NormalFormReport verify_normal_form(const CurvatureOperator& r, const BergerNormalForm& nf,
                                    const NormalFormOptions& options) {
  NormalFormReport rep;
  const CurvatureOperator weyl = decompose(r).weyl_part;
  const Mat6 wp = weyl_in_paired_basis(r, nf.frame);

  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const bool pattern = (i % 3) == (j % 3);
      if (!pattern) rep.block_residual = std::max(rep.block_residual, std::abs(wp(i, j)));
    }
  }

  // Items (1)-(4) as tensor components in the adapted frame.
  const CurvatureOperator wf = pull_back(weyl, nf.frame);
  const auto c = [&](int i, int j, int k, int l) { return wf.component(i - 1, j - 1, k - 1, l - 1); };
  rep.w1414 = c(1, 4, 1, 4);
  rep.w2323 = c(2, 3, 2, 3);
  const double entries[][2] = {
      {c(1, 2, 1, 2), nf.a[0]}, {c(3, 4, 3, 4), nf.a[0]}, {c(1, 3, 1, 3), nf.a[1]},
      {c(2, 4, 2, 4), nf.a[1]}, {rep.w1414, nf.a[2]},    {rep.w2323, nf.a[2]},
      {c(1, 2, 3, 4), nf.b[0]}, {c(1, 3, 4, 2), nf.b[1]}, {c(1, 4, 2, 3), nf.b[2]},
  };
  for (const auto& e : entries) rep.entry_residual = std::max(rep.entry_residual, std::abs(e[0] - e[1]));

  rep.sum_residual = std::abs(nf.a.sum()) + std::abs(nf.b.sum());
  const Vec3& a = nf.a;
  const Vec3& b = nf.b;
  rep.interlacing_slack = std::min({a[1] - a[0] - std::abs(b[1] - b[0]), a[2] - a[0] - std::abs(b[2] - b[0]),
                                    a[2] - a[1] - std::abs(b[2] - b[1])});

  const WeylBlocks w = weyl_blocks(r);
  rep.spectrum_residual = std::max((a + b - w.lambda_plus).cwiseAbs().maxCoeff(),
                                   (a - b - w.lambda_minus).cwiseAbs().maxCoeff());

  rep.min_optimized = extremes_optimize(weyl, Quantity::Sectional, Target::Min).value;
  rep.max_optimized = extremes_optimize(weyl, Quantity::Sectional, Target::Max).value;
  rep.min_gap_optimized = std::abs(rep.min_optimized - a[0]);
  rep.max_gap_optimized = std::abs(rep.max_optimized - a[2]);

  if (options.samples > 0) {
    rep.sampled = true;
    rep.min_sampled = extremes_sample(weyl, Quantity::Sectional, Target::Min, options.samples, options.seed).value;
    rep.max_sampled = extremes_sample(weyl, Quantity::Sectional, Target::Max, options.samples, options.seed).value;
    rep.min_gap_sampled = rep.min_sampled - a[0];
    rep.max_gap_sampled = a[2] - rep.max_sampled;
  }

  constexpr double kLimit = 1e-7;
  const double worst = std::max({rep.block_residual, rep.entry_residual, rep.sum_residual, rep.spectrum_residual,
                                 rep.min_gap_optimized, rep.max_gap_optimized, -rep.interlacing_slack});
  if (!(worst <= kLimit)) {
    std::ostringstream os;
    os << "normal form does not match the operator (worst residual " << worst << ")";
    throw Error(ErrorCode::MismatchedInput, os.str(), worst);
  }
  rep.ok = true;
  return rep;
}

}  // namespace curv4
