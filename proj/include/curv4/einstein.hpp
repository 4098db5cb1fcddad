#pragma once

// Arithmetic for Einstein curvature normalized to Rc = g.

#include "curv4/curvature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curv4 {

/// Lower bound on K_min given K_max = alpha <= 1:
/// (15 - 8a - sqrt(3) sqrt(96a^2 - 80a + 19)) / 28. Throws OutOfRange for
/// alpha > 1.
double kmin_from_kmax(double alpha);

/// 8 (a^2 - (1 - b)(a + b)) + 10/3, the coefficient c in
/// 8 pi^2 chi <= c Vol. Throws OrderViolation when beta > alpha.
double euler_upper_coefficient(double alpha, double beta);

struct WeylGapReport {
  double scalar = 0.0;
  double wplus_norm2 = 0.0;
  double bound = 0.0;  // S^2 / 24
  bool applicable = false;  // W+ != 0
  bool holds = false;
  bool equality = false;
  double residual = 0.0;  // |W+|^2 - S^2/24
  /// The integral inequality is evaluated with a constant integrand.
  std::string interpretation = "homogeneous";
};

/// |W+|^2 >= S^2 / 24 for a constant-curvature-type (homogeneous) Einstein
/// point. Throws NotEinstein when |Ric0| > 1e-9 or S <= 0.
WeylGapReport weyl_gap_check(const CurvatureOperator& r, double equality_tol = 1e-10);

struct ChainEntry {
  std::string name;
  double value = 0.0;
};

struct EinsteinReport {
  double alpha = 1.0;
  double beta = 0.0;
  double euler_bound_coeff = 0.0;
  double ratio = 0.0;  // 2 - 4/c
  bool contradiction = false;
  std::vector<ChainEntry> chain;
};

/// beta = kmin_from_kmax(alpha), c = euler_upper_coefficient(alpha, beta);
/// contradiction when c < 4, i.e. 2 - 4/c < 1.
EinsteinReport positive_intersection_contradiction(double alpha = 1.0);

/// Same endpoint test applied to a given coefficient.
bool contradiction_from_coefficient(double c);

}  // namespace curv4
