#pragma once

// JSON interchange: tensor files, catalog export and report serialization.
//
// Tensor format: {"basis": "lex-eij", "matrix": [[6 x 6]], "tolerance": t}
// with optional "volume", "quotient_factor" and "metadata" members.

#include "curv4/curvature.hpp"
#include "curv4/einstein.hpp"
#include "curv4/extremes.hpp"
#include "curv4/model_spaces.hpp"
#include "curv4/normal_form.hpp"
#include "curv4/pinching.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace curv4 {

using json = nlohmann::ordered_json;

struct TensorFile {
  CurvatureOperator curvature;
  double tolerance = tol::kValidation;
  std::optional<double> volume;
  int quotient_factor = 1;
  json metadata;
};

/// Throws ParseError for malformed documents and the validation errors of
/// CurvatureOperator for invalid matrices.
TensorFile tensor_from_json(const json& doc);
TensorFile load_tensor_file(const std::string& path);

json tensor_to_json(const CurvatureOperator& r);
/// Tensor document with {"kind", "params", "volume", "lambda1"} metadata.
json model_to_json(const ModelSpace& m);

/// Serializes with every floating-point value printed as %.17g; non-finite
/// values become null. Output is byte-stable for equal inputs.
std::string dump(const json& j, int indent = 2);

json to_json(const Mat3& m);
json to_json(const Mat4& m);
json to_json(const Mat6& m);
json to_json(const Vec3& v);
json to_json(const Vec4& v);
json to_json(const Vec6& v);
json to_json(const Plane& p);
json to_json(const ExtremeResult& e);
json to_json(const BergerNormalForm& nf);
json to_json(const NormalFormReport& r);
json to_json(const PinchReport& r);
json to_json(const LemmaBoundsReport& r);
json to_json(const DetBoundReport& r);
json to_json(const Lemma27Report& r);
json to_json(const CertificateReport& r);
json to_json(const WeylGapReport& r);
json to_json(const EinsteinReport& r);
json to_json(const InvariantReport& r);

}  // namespace curv4
