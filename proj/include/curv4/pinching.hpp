#pragma once

// Pointwise pinching conditions and the inequalities they rest on.

#include "curv4/curvature.hpp"
#include "curv4/extremes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curv4 {

/// lambda1 is the first Laplace eigenvalue of the ambient manifold; it is an
/// input and never computed. k is a lower Ricci bound when known.
struct SpectralContext {
  double lambda1 = 0.0;
  std::optional<double> k;
};

/// S (2S + 9 lambda1) / (12 (S + 3 lambda1)).
double threshold(double s, double lambda1);
/// 4k/3.
double lichnerowicz_lower(double k);

enum class PinchMode { Biorthogonal, Sectional };
const char* to_string(PinchMode m);
PinchMode parse_pinch_mode(std::string_view s);

struct ConditionRecord {
  int id = 0;
  /// "<=" when the measured value must not exceed the threshold, ">=" otherwise.
  std::string direction;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Extra hypothesis of condition (2): min Ricci eigenvalue >= k.
  std::optional<double> ricci_min;
  std::optional<bool> ricci_ok;
};

struct PinchReport {
  PinchMode mode = PinchMode::Biorthogonal;
  double scalar = 0.0;
  double lambda1 = 0.0;
  std::optional<double> k;
  double kmin = 0.0;
  double kmax = 0.0;
  std::vector<ConditionRecord> conditions;
  bool any_pass = false;
};

/// Evaluates the requested subset of conditions (1)-(4):
///   (1) Kmax <= threshold(S, lambda1)
///   (2) Rc >= k and Kmax <= 5k/6
///   (3) Kmin >= S^2 / (24 (S + 3 lambda1))
///   (4) Kmin >= S / (2 (2S + 9 lambda1)) * Kmax
/// with K the biorthogonal or the sectional curvature. Throws
/// NonPositiveScalar, NonPositiveInput and MissingK.
PinchReport check_conditions(const CurvatureOperator& r, const SpectralContext& ctx,
                             PinchMode mode = PinchMode::Biorthogonal,
                             const std::vector<int>& which = {1, 2, 3, 4});

struct LemmaBoundsReport {
  double delta = 0.0;
  double scalar = 0.0;
  double l3_plus = 0.0;
  double l3_minus = 0.0;
  /// Slack (rhs - lhs form, >= 0 when the inequality holds) of
  ///   2S/3 - 2 l3+ - 2 l3- >= S - 4 delta
  ///   |l3+ - l3-| <= 2 (delta - S/12)
  ///   S/3 - 2 l3(+-) >= 2S/3 - 4 delta  (the smaller of the two signs)
  double slack1 = 0.0;
  double slack2 = 0.0;
  double slack3 = 0.0;
  bool holds = false;
  bool equality2 = false;
  bool equality3 = false;
  double weyl_product = 0.0;  // |W+| |W-|
  bool weyl_product_zero = false;
};

/// delta is K^perp_max from the optimizer, independent of the spectra used on
/// the other side of the inequalities.
LemmaBoundsReport lemma_bounds(const CurvatureOperator& r, double equality_tol = 1e-9);

struct DetBoundReport {
  Vec3 lambda;
  double det = 0.0;
  double norm2 = 0.0;
  double lhs = 0.0;   // 36 det
  double rhs = 0.0;   // 6 l3 |W|^2
  double identity_residual = 0.0;  // |rhs - lhs - 12 l3 (l1 - l2)^2|
  bool holds = false;
  bool equality = false;
};

/// Throws NotTraceless when |tr W| > 1e-10.
DetBoundReport det_bound(const Mat3& w, double equality_tol = 1e-9);

struct Lemma27Report {
  double scalar = 0.0;
  double kperp_min = 0.0;
  double kperp_max = 0.0;
  std::array<bool, 3> hypotheses{};
  std::optional<double> ricci_min;
  bool applicable = false;
  double threshold = 0.0;
  double margin = 0.0;  // threshold - Kperp_max
  bool conclusion = false;
};

/// Which branches of the implication hold and, if any does, whether
/// Kperp_max <= threshold(S, lambda1). Branch (3) requires ctx.k; it throws
/// InconsistentContext when lambda1 < 4k/3.
Lemma27Report lemma27_implication(const CurvatureOperator& r, const SpectralContext& ctx);

enum class CertificateFlavor { TwoForm, Weyl };
const char* to_string(CertificateFlavor f);
CertificateFlavor parse_flavor(std::string_view s);

enum class Outcome { Pass, Fail, NotApplicable };
const char* to_string(Outcome o);

struct CertificateReport {
  CertificateFlavor flavor = CertificateFlavor::TwoForm;
  double alpha = 0.0;
  double kato = 0.0;
  double kato_coefficient = 0.0;  // (4a-1)/a or (6a-1)/(3a)
  double delta = 0.0;
  double threshold = 0.0;
  double lead_minus = 0.0;  // S/3 - 2 l3- + lambda1
  double lead_plus = 0.0;   // S/3 - 2 l3+ + lambda1
  /// Weyl flavor: leading coefficient from the determinant form,
  /// (S - 36 det W- / |W-|^2) / 3 + lambda1 (equals lead_minus when W- = 0).
  std::optional<double> lead_det;
  double disc_quadratic = 0.0;  // lambda1^2 - lead_minus lead_plus
  double disc_chain = 0.0;
  double disc_final = 0.0;
  Outcome outcome = Outcome::NotApplicable;
};

/// The pointwise core of the quadratic-in-t argument: under
/// Kperp_max <= threshold(S, lambda1), the leading coefficient is positive and
/// the discriminant is nonpositive. Outside the hypothesis the outcome is
/// NotApplicable.
CertificateReport discriminant_certificate(const CurvatureOperator& r, const SpectralContext& ctx,
                                           CertificateFlavor flavor, double tol = 1e-10);

/// (4a - 1) / a and (6a - 1) / (3a).
double kato_coefficient_two_form(double alpha);
double kato_coefficient_weyl(double alpha);
/// Maximizers of (4a - 1)/a^2 and (6a - 1)/a^2 over a > 0: 1/2 and 1/3.
double optimal_alpha_two_form();
double optimal_alpha_weyl();

}  // namespace curv4
