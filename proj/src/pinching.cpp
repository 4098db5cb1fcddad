#include "curv4/pinching.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace curv4 {

namespace {

constexpr double kPassTol = 1e-10;

void require_positive(double x, const char* name) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << name << " must be positive (got " << x << ")";
    throw Error(ErrorCode::NonPositiveInput, os.str(), x);
  }
}

}  // namespace

double threshold(double s, double lambda1) {
  require_positive(s, "S");
  require_positive(lambda1, "lambda1");
  return s * (2.0 * s + 9.0 * lambda1) / (12.0 * (s + 3.0 * lambda1));
}

double lichnerowicz_lower(double k) {
  require_positive(k, "k");
  return 4.0 * k / 3.0;
}

const char* to_string(PinchMode m) { return m == PinchMode::Biorthogonal ? "biorthogonal" : "sectional"; }

PinchMode parse_pinch_mode(std::string_view s) {
  if (s == "biorthogonal" || s == "kperp") return PinchMode::Biorthogonal;
  if (s == "sectional") return PinchMode::Sectional;
  throw Error(ErrorCode::BadParams, "unknown mode '" + std::string(s) + "'");
}

namespace {

std::pair<double, double> extremes_for_mode(const CurvatureOperator& r, PinchMode mode) {
  if (mode == PinchMode::Biorthogonal) {
    const KperpExtremes e = kperp_extremes_closed_form(r);
    return {e.min.value, e.max.value};
  }
  return {extremes_optimize(r, Quantity::Sectional, Target::Min).value,
          extremes_optimize(r, Quantity::Sectional, Target::Max).value};
}

ConditionRecord upper(int id, double measured, double thr) {
  return ConditionRecord{id, "<=", measured, thr, measured <= thr + kPassTol, std::nullopt, std::nullopt};
}

ConditionRecord lower(int id, double measured, double thr) {
  return ConditionRecord{id, ">=", measured, thr, measured >= thr - kPassTol, std::nullopt, std::nullopt};
}

}  // namespace

PinchReport check_conditions(const CurvatureOperator& r, const SpectralContext& ctx, PinchMode mode,
                             const std::vector<int>& which) {
  const double s = r.scalar();
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "scalar curvature must be positive (got " << s << ")";
    throw Error(ErrorCode::NonPositiveScalar, os.str(), s);
  }
  require_positive(ctx.lambda1, "lambda1");
  for (int id : which) {
    if (id < 1 || id > 4) throw Error(ErrorCode::BadParams, "condition ids are 1..4");
    if (id == 2 && !ctx.k) throw Error(ErrorCode::MissingK, "condition 2 needs a Ricci lower bound k");
  }
  if (ctx.k) require_positive(*ctx.k, "k");

  PinchReport rep;
  rep.mode = mode;
  rep.scalar = s;
  rep.lambda1 = ctx.lambda1;
  rep.k = ctx.k;
  std::tie(rep.kmin, rep.kmax) = extremes_for_mode(r, mode);

  const double l = ctx.lambda1;
  for (int id : which) {
    switch (id) {
      case 1:
        rep.conditions.push_back(upper(1, rep.kmax, threshold(s, l)));
        break;
      case 2: {
        ConditionRecord c = upper(2, rep.kmax, 5.0 * (*ctx.k) / 6.0);
        c.ricci_min = ricci_contract(r).min_eigenvalue();
        c.ricci_ok = *c.ricci_min >= *ctx.k - kPassTol;
        c.pass = c.pass && *c.ricci_ok;
        rep.conditions.push_back(c);
        break;
      }
      case 3:
        rep.conditions.push_back(lower(3, rep.kmin, s * s / (24.0 * (s + 3.0 * l))));
        break;
      case 4:
        rep.conditions.push_back(lower(4, rep.kmin, s / (2.0 * (2.0 * s + 9.0 * l)) * rep.kmax));
        break;
    }
  }
  rep.any_pass = std::any_of(rep.conditions.begin(), rep.conditions.end(),
                             [](const ConditionRecord& c) { return c.pass; });
  return rep;
}

LemmaBoundsReport lemma_bounds(const CurvatureOperator& r, double equality_tol) {
  const WeylBlocks w = weyl_blocks(r);
  LemmaBoundsReport rep;
  rep.scalar = r.scalar();
  rep.delta = extremes_optimize(r, Quantity::Biorthogonal, Target::Max).value;
  rep.l3_plus = w.lambda_plus[2];
  rep.l3_minus = w.lambda_minus[2];
  const double s = rep.scalar;
  const double d = rep.delta;
  const double lp = rep.l3_plus;
  const double lm = rep.l3_minus;

  rep.slack1 = (2.0 * s / 3.0 - 2.0 * lp - 2.0 * lm) - (s - 4.0 * d);
  rep.slack2 = 2.0 * (d - s / 12.0) - std::abs(lp - lm);
  rep.slack3 = std::min(s / 3.0 - 2.0 * lp, s / 3.0 - 2.0 * lm) - (2.0 * s / 3.0 - 4.0 * d);
  rep.holds = rep.slack1 >= -equality_tol && rep.slack2 >= -equality_tol && rep.slack3 >= -equality_tol;
  rep.equality2 = std::abs(rep.slack2) <= equality_tol;
  rep.equality3 = std::abs(rep.slack3) <= equality_tol;
  rep.weyl_product = std::sqrt(w.norm2_plus()) * std::sqrt(w.norm2_minus());
  rep.weyl_product_zero = rep.weyl_product < equality_tol;
  return rep;
}

DetBoundReport det_bound(const Mat3& w, double equality_tol) {
  const double tr = w.trace();
  if (!(std::abs(tr) <= tol::kValidation)) {
    std::ostringstream os;
    os << "matrix is not traceless (trace " << tr << ")";
    throw Error(ErrorCode::NotTraceless, os.str(), tr);
  }
  DetBoundReport rep;
  rep.lambda = sym_eigen(w).values;
  rep.det = w.determinant();
  rep.norm2 = w.squaredNorm();
  const double l1 = rep.lambda[0];
  const double l2 = rep.lambda[1];
  const double l3 = rep.lambda[2];
  rep.lhs = 36.0 * rep.det;
  rep.rhs = 6.0 * l3 * rep.norm2;
  rep.identity_residual = std::abs(rep.rhs - rep.lhs - 12.0 * l3 * (l1 - l2) * (l1 - l2));
  rep.holds = rep.lhs <= rep.rhs + equality_tol * std::max(1.0, std::abs(rep.rhs));
  rep.equality = std::abs(l1 - l2) <= equality_tol || std::abs(l3) <= equality_tol;
  return rep;
}

Lemma27Report lemma27_implication(const CurvatureOperator& r, const SpectralContext& ctx) {
  const double s = r.scalar();
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "scalar curvature must be positive (got " << s << ")";
    throw Error(ErrorCode::NonPositiveScalar, os.str(), s);
  }
  require_positive(ctx.lambda1, "lambda1");
  if (ctx.k) {
    require_positive(*ctx.k, "k");
    if (ctx.lambda1 < lichnerowicz_lower(*ctx.k)) {
      std::ostringstream os;
      os << "lambda1 = " << ctx.lambda1 << " is below the Lichnerowicz bound 4k/3 = " << lichnerowicz_lower(*ctx.k);
      throw Error(ErrorCode::InconsistentContext, os.str(), lichnerowicz_lower(*ctx.k) - ctx.lambda1);
    }
  }

  Lemma27Report rep;
  rep.scalar = s;
  const KperpExtremes e = kperp_extremes_closed_form(r);
  rep.kperp_min = e.min.value;
  rep.kperp_max = e.max.value;
  const double l = ctx.lambda1;
  rep.hypotheses[0] = rep.kperp_min >= s * s / (24.0 * (s + 3.0 * l));
  rep.hypotheses[1] = rep.kperp_min >= s / (2.0 * (2.0 * s + 9.0 * l)) * rep.kperp_max;
  if (ctx.k) {
    rep.ricci_min = ricci_contract(r).min_eigenvalue();
    rep.hypotheses[2] = *rep.ricci_min >= *ctx.k && rep.kperp_max <= 5.0 * (*ctx.k) / 6.0;
  }
  rep.applicable = rep.hypotheses[0] || rep.hypotheses[1] || rep.hypotheses[2];
  rep.threshold = threshold(s, l);
  rep.margin = rep.threshold - rep.kperp_max;
  rep.conclusion = rep.margin >= -kPassTol * std::max(1.0, s);
  return rep;
}

const char* to_string(CertificateFlavor f) { return f == CertificateFlavor::TwoForm ? "two-form" : "weyl"; }

CertificateFlavor parse_flavor(std::string_view s) {
  if (s == "two-form" || s == "twoform") return CertificateFlavor::TwoForm;
  if (s == "weyl") return CertificateFlavor::Weyl;
  throw Error(ErrorCode::BadParams, "unknown flavor '" + std::string(s) + "'");
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::NotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

double kato_coefficient_two_form(double alpha) { return (4.0 * alpha - 1.0) / alpha; }
double kato_coefficient_weyl(double alpha) { return (6.0 * alpha - 1.0) / (3.0 * alpha); }
double optimal_alpha_two_form() { return 0.5; }
double optimal_alpha_weyl() { return 1.0 / 3.0; }

CertificateReport discriminant_certificate(const CurvatureOperator& r, const SpectralContext& ctx,
                                           CertificateFlavor flavor, double tol) {
  const double s = r.scalar();
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "scalar curvature must be positive (got " << s << ")";
    throw Error(ErrorCode::NonPositiveScalar, os.str(), s);
  }
  const double l = ctx.lambda1;
  CertificateReport rep;
  rep.flavor = flavor;
  if (flavor == CertificateFlavor::TwoForm) {
    rep.alpha = optimal_alpha_two_form();
    rep.kato = 1.5;
    rep.kato_coefficient = kato_coefficient_two_form(rep.alpha);
  } else {
    rep.alpha = optimal_alpha_weyl();
    rep.kato = 5.0 / 3.0;
    rep.kato_coefficient = kato_coefficient_weyl(rep.alpha);
  }
  rep.threshold = threshold(s, l);

  const WeylBlocks w = weyl_blocks(r);
  const double lp = w.lambda_plus[2];
  const double lm = w.lambda_minus[2];
  rep.delta = kperp_extremes_closed_form(r).max.value;
  rep.lead_minus = s / 3.0 - 2.0 * lm + l;
  rep.lead_plus = s / 3.0 - 2.0 * lp + l;
  if (flavor == CertificateFlavor::Weyl) {
    const double n2 = w.norm2_minus();
    const double ratio = n2 > 0.0 ? 36.0 * w.wminus.determinant() / n2 : 0.0;
    rep.lead_det = (s - ratio) / 3.0 + l;
  }
  rep.disc_quadratic = l * l - rep.lead_minus * rep.lead_plus;
  const double a = s / 3.0 - lm - lp;
  rep.disc_chain = (lp - lm) * (lp - lm) - a * a - l * (2.0 * s / 3.0 - 2.0 * lm - 2.0 * lp);
  const double d = rep.delta;
  rep.disc_final = 4.0 * (d - s / 12.0) * (d - s / 12.0) - 0.25 * (s - 4.0 * d) * (s - 4.0 * d) - l * (s - 4.0 * d);

  if (d > rep.threshold) {
    rep.outcome = Outcome::NotApplicable;
    return rep;
  }
  const double scale = tol;
  bool ok = rep.lead_minus > 0.0 && rep.lead_plus > 0.0;
  if (rep.lead_det) ok = ok && *rep.lead_det >= rep.lead_minus - scale && *rep.lead_det > 0.0;
  ok = ok && rep.disc_quadratic <= scale && rep.disc_chain <= rep.disc_final + scale && rep.disc_final <= scale;
  rep.outcome = ok ? Outcome::Pass : Outcome::Fail;
  return rep;
}

}  // namespace curv4
