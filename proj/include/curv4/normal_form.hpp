#pragma once

#include "curv4/curvature.hpp"
#include "curv4/lambda2.hpp"

#include <cstdint>

namespace curv4 {

/// Diagonal data of the Weyl operator in an adapted frame {e_i}: in the basis
/// (e12, e13, e14, e34, e42, e23) it reads [[A, B], [B, A]] with
/// A = diag(a), B = diag(b).
struct BergerNormalForm {
  Vec3 a;  // ascending, sums to zero
  Vec3 b;  // sums to zero
  FrameRotation frame;  // maps the standard basis to the adapted frame
};

BergerNormalForm berger_normal_form(const CurvatureOperator& r);

/// The Weyl part of `r` expressed in the adapted frame, reordered to the
/// paired basis (e12, e13, e14, e34, e42, e23).
Mat6 weyl_in_paired_basis(const CurvatureOperator& r, const FrameRotation& frame);

struct NormalFormOptions {
  /// Number of Grassmannian samples for the brute-force min/max check; zero
  /// skips it.
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct NormalFormReport {
  double block_residual = 0.0;   // max off-pattern entry of the paired-basis matrix
  double entry_residual = 0.0;   // items (1)-(4): frame components vs a, b
  double w1414 = 0.0;
  double w2323 = 0.0;
  double sum_residual = 0.0;     // item (5)
  double interlacing_slack = 0.0;  // item (6): min over the three inequalities
  double spectrum_residual = 0.0;  // a +- b vs sorted spectra of W+-
  double min_optimized = 0.0;    // item (1): min W(u,v,u,v)
  double max_optimized = 0.0;    // item (2)
  double min_gap_optimized = 0.0;
  double max_gap_optimized = 0.0;
  bool sampled = false;
  double min_sampled = 0.0;
  double max_sampled = 0.0;
  double min_gap_sampled = 0.0;  // sampled min - a1 (>= 0 up to roundoff)
  double max_gap_sampled = 0.0;  // a3 - sampled max
  bool ok = false;
};

/// Checks the normal-form properties (1)-(6) for `nf` against `r`: the
/// min/max characterizations of a1 and a3, the frame components a_i and b_i,
/// the zero sums and the interlacing |b_j - b_i| <= a_j - a_i. Throws
/// MismatchedInput when any exact residual exceeds 1e-7.
NormalFormReport verify_normal_form(const CurvatureOperator& r, const BergerNormalForm& nf,
                                    const NormalFormOptions& options = {});

}  // namespace curv4
