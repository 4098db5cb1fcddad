#pragma once

// Homogeneous model spaces and the Gauss-Bonnet-Chern / signature integrands.

#include "curv4/curvature.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curv4 {

enum class ModelKind { Sphere4, RP4, CP2, ProductS2S2 };
const char* to_string(ModelKind k);
ModelKind parse_model_kind(std::string_view s);

struct ModelSpace {
  ModelKind kind = ModelKind::Sphere4;
  /// sphere4 / rp4: {"r"}; cp2: {"S"}; product_s2s2: {"r1", "r2"}.
  std::map<std::string, double> params;
  CurvatureOperator curvature;
  double volume = 0.0;
  int quotient_factor = 1;
  int known_chi = 0;
  int known_tau = 0;
  std::optional<double> lambda1;

  /// Homothety R -> cR, Vol -> Vol / c^2, lambda1 -> c lambda1.
  ModelSpace scaled(double c) const;
};

/// Catalog entry with the given parameters; missing parameters take the unit
/// defaults (r = r1 = r2 = 1, S = 24 for cp2). Throws BadParams.
ModelSpace model_curvature(ModelKind kind, const std::map<std::string, double>& params = {});

/// Catalog entry rescaled so that its scalar curvature is `s`.
ModelSpace model_with_scalar(ModelKind kind, double s, const std::map<std::string, double>& params = {});

/// |W|^2 - 1/2 |Rc - S/4 g|^2 + S^2/24, the integrand of 8 pi^2 chi.
double gb_integrand(const CurvatureOperator& r);
/// |W+|^2 - |W-|^2, the integrand of 12 pi^2 tau.
double signature_integrand(const CurvatureOperator& r);

struct InvariantReport {
  double scalar = 0.0;
  double volume = 0.0;
  int quotient_factor = 1;
  double gb_integrand = 0.0;
  double signature_integrand = 0.0;
  double chi = 0.0;
  double tau = 0.0;
  double wplus_norm2 = 0.0;
  double wminus_norm2 = 0.0;
  double ricci0_norm2 = 0.0;
  bool isotropic_nonneg = false;
};

InvariantReport invariants(const CurvatureOperator& r, double volume, int quotient_factor = 1);
InvariantReport invariants(const ModelSpace& space);

std::vector<ModelKind> all_model_kinds();

}  // namespace curv4
