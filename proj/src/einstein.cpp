#include "curv4/einstein.hpp"

#include <cmath>
#include <sstream>

namespace curv4 {

double kmin_from_kmax(double alpha) {
  if (!(alpha <= 1.0)) {
    std::ostringstream os;
    os << "K_max = " << alpha << " exceeds 1 under the normalization Rc = g";
    throw Error(ErrorCode::OutOfRange, os.str(), alpha - 1.0);
  }
  const double rad = 96.0 * alpha * alpha - 80.0 * alpha + 19.0;
  return (15.0 - 8.0 * alpha - std::sqrt(3.0) * std::sqrt(rad)) / 28.0;
}

double euler_upper_coefficient(double alpha, double beta) {
  if (!(beta <= alpha)) {
    std::ostringstream os;
    os << "lower bound " << beta << " exceeds upper bound " << alpha;
    throw Error(ErrorCode::OrderViolation, os.str(), beta - alpha);
  }
  return 8.0 * (alpha * alpha - (1.0 - beta) * (alpha + beta)) + 10.0 / 3.0;
}

WeylGapReport weyl_gap_check(const CurvatureOperator& r, double equality_tol) {
  const RicciTensor rc = ricci_contract(r);
  const double ric0 = rc.traceless().norm();
  if (!(ric0 <= 1e-9)) {
    std::ostringstream os;
    os << "operator is not Einstein (|Ric0| = " << ric0 << ")";
    throw Error(ErrorCode::NotEinstein, os.str(), ric0);
  }
  WeylGapReport rep;
  rep.scalar = r.scalar();
  if (!(rep.scalar > 0.0)) {
    std::ostringstream os;
    os << "scalar curvature must be positive (got " << rep.scalar << ")";
    throw Error(ErrorCode::NotEinstein, os.str(), rep.scalar);
  }
  rep.wplus_norm2 = weyl_blocks(r).norm2_plus();
  rep.bound = rep.scalar * rep.scalar / 24.0;
  rep.residual = rep.wplus_norm2 - rep.bound;
  rep.applicable = rep.wplus_norm2 > equality_tol;
  if (rep.applicable) {
    rep.holds = rep.residual >= -equality_tol;
    rep.equality = std::abs(rep.residual) <= equality_tol;
  }
  return rep;
}

bool contradiction_from_coefficient(double c) { return c < 4.0; }

EinsteinReport positive_intersection_contradiction(double alpha) {
  EinsteinReport rep;
  rep.alpha = alpha;
  rep.beta = kmin_from_kmax(alpha);
  rep.euler_bound_coeff = euler_upper_coefficient(alpha, rep.beta);
  rep.ratio = 2.0 - 4.0 / rep.euler_bound_coeff;
  rep.contradiction = contradiction_from_coefficient(rep.euler_bound_coeff);
  const double c = rep.euler_bound_coeff;
  rep.chain = {
      {"beta", rep.beta},
      // 8 pi^2 chi <= c Vol
      {"euler_coefficient", c},
      // (2 chi - 3 tau) >= Vol / (2 pi^2) >= 4 chi / c
      {"two_chi_minus_three_tau_per_chi", 4.0 / c},
      // (2 - 4/c) chi >= 3 |tau| = 3 b+ >= chi
      {"two_minus_four_over_c", rep.ratio},
      {"required_lower", 1.0},
  };
  return rep;
}

}  // namespace curv4
