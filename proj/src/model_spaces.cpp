#include "curv4/model_spaces.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace curv4 {

namespace {

constexpr double kPi = std::numbers::pi;

double param(const std::map<std::string, double>& p, const std::string& name, double fallback) {
  const auto it = p.find(name);
  const double v = it == p.end() ? fallback : it->second;
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "parameter " << name << " must be positive (got " << v << ")";
    throw Error(ErrorCode::BadParams, os.str(), v);
  }
  return v;
}

void check_keys(const std::map<std::string, double>& p, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : p) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorCode::BadParams, "unknown parameter '" + key + "'");
  }
}

// Operator given by its (B+, B-) blocks.
CurvatureOperator from_blocks(const Mat3& a, const Mat3& c) {
  Mat6 blocks = Mat6::Zero();
  blocks.topLeftCorner<3, 3>() = a;
  blocks.bottomRightCorner<3, 3>() = c;
  const Mat6& u = selfdual_basis();
  return CurvatureOperator(u.transpose() * blocks * u);
}

}  // namespace

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Sphere4: return "sphere4";
    case ModelKind::RP4: return "rp4";
    case ModelKind::CP2: return "cp2";
    case ModelKind::ProductS2S2: return "product_s2s2";
  }
  return "sphere4";
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "sphere4" || s == "s4") return ModelKind::Sphere4;
  if (s == "rp4") return ModelKind::RP4;
  if (s == "cp2") return ModelKind::CP2;
  if (s == "product_s2s2" || s == "s2s2") return ModelKind::ProductS2S2;
  throw Error(ErrorCode::BadParams, "unknown catalog kind '" + std::string(s) + "'");
}

std::vector<ModelKind> all_model_kinds() {
  return {ModelKind::Sphere4, ModelKind::RP4, ModelKind::CP2, ModelKind::ProductS2S2};
}

ModelSpace model_curvature(ModelKind kind, const std::map<std::string, double>& params) {
  ModelSpace m;
  m.kind = kind;
  switch (kind) {
    case ModelKind::Sphere4:
    case ModelKind::RP4: {
      check_keys(params, {"r"});
      const double r = param(params, "r", 1.0);
      const double k = 1.0 / (r * r);
      m.params = {{"r", r}};
      m.curvature = CurvatureOperator(k * Mat6::Identity());
      m.volume = 8.0 * kPi * kPi / 3.0 * r * r * r * r;
      if (kind == ModelKind::Sphere4) {
        m.known_chi = 2;
        m.lambda1 = 4.0 * k;
      } else {
        m.quotient_factor = 2;
        m.known_chi = 1;
        // Lowest even spherical harmonics have degree 2.
        m.lambda1 = 10.0 * k;
      }
      break;
    }
    case ModelKind::CP2: {
      check_keys(params, {"S"});
      const double s = param(params, "S", 24.0);
      m.params = {{"S", s}};
      m.curvature = from_blocks(Vec3(0.0, 0.0, s / 4.0).asDiagonal(), (s / 12.0) * Mat3::Identity());
      const double c = 24.0 / s;
      m.volume = kPi * kPi / 2.0 * c * c;
      m.known_chi = 3;
      m.known_tau = 1;
      m.lambda1 = s / 2.0;
      break;
    }
    case ModelKind::ProductS2S2: {
      check_keys(params, {"r1", "r2"});
      const double r1 = param(params, "r1", 1.0);
      const double r2 = param(params, "r2", 1.0);
      m.params = {{"r1", r1}, {"r2", r2}};
      // Factor planes span{e1, e2} and span{e3, e4}; mixed planes are flat.
      Mat6 d = Mat6::Zero();
      d(pair_index(0, 1), pair_index(0, 1)) = 1.0 / (r1 * r1);
      d(pair_index(2, 3), pair_index(2, 3)) = 1.0 / (r2 * r2);
      m.curvature = CurvatureOperator(d);
      m.volume = 16.0 * kPi * kPi * r1 * r1 * r2 * r2;
      m.known_chi = 4;
      m.lambda1 = std::min(2.0 / (r1 * r1), 2.0 / (r2 * r2));
      break;
    }
  }
  return m;
}

ModelSpace ModelSpace::scaled(double c) const {
  if (!(c > 0.0)) throw Error(ErrorCode::BadParams, "scale factor must be positive", c);
  ModelSpace out = *this;
  out.curvature = curvature * c;
  out.volume = volume / (c * c);
  if (lambda1) out.lambda1 = *lambda1 * c;
  for (auto& [key, value] : out.params) value = key == "S" ? value * c : value / std::sqrt(c);
  return out;
}

ModelSpace model_with_scalar(ModelKind kind, double s, const std::map<std::string, double>& params) {
  if (!(s > 0.0)) throw Error(ErrorCode::BadParams, "target scalar curvature must be positive", s);
  const ModelSpace base = model_curvature(kind, params);
  return base.scaled(s / base.curvature.scalar());
}

double gb_integrand(const CurvatureOperator& r) {
  const CurvatureDecomposition d = decompose(r);
  const double s = d.scalar;
  const double ric0 = ricci_contract(r).traceless().squaredNorm();
  return d.weyl_part.matrix().squaredNorm() - 0.5 * ric0 + s * s / 24.0;
}

double signature_integrand(const CurvatureOperator& r) {
  const WeylBlocks w = weyl_blocks(r);
  return w.norm2_plus() - w.norm2_minus();
}

InvariantReport invariants(const CurvatureOperator& r, double volume, int quotient_factor) {
  if (!(volume > 0.0)) throw Error(ErrorCode::BadParams, "volume must be positive", volume);
  if (quotient_factor < 1) throw Error(ErrorCode::BadParams, "quotient factor must be at least 1");
  InvariantReport rep;
  rep.scalar = r.scalar();
  rep.volume = volume;
  rep.quotient_factor = quotient_factor;
  rep.gb_integrand = gb_integrand(r);
  rep.signature_integrand = signature_integrand(r);
  const double q = static_cast<double>(quotient_factor);
  rep.chi = rep.gb_integrand * volume / (8.0 * kPi * kPi * q);
  rep.tau = rep.signature_integrand * volume / (12.0 * kPi * kPi * q);
  const WeylBlocks w = weyl_blocks(r);
  rep.wplus_norm2 = w.norm2_plus();
  rep.wminus_norm2 = w.norm2_minus();
  rep.ricci0_norm2 = ricci_contract(r).traceless().squaredNorm();
  rep.isotropic_nonneg = weitzenbock_r2(r).nonnegative_isotropic;
  return rep;
}

InvariantReport invariants(const ModelSpace& space) {
  return invariants(space.curvature, space.volume, space.quotient_factor);
}

}  // namespace curv4
