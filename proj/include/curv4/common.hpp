#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curv4 {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

enum class ErrorCode {
  NotUnit,
  NotOrthonormal,
  NotDecomposable,
  NotSymmetric,
  BianchiViolation,
  NotTraceless,
  NonPositiveInput,
  NonPositiveScalar,
  MissingK,
  InconsistentContext,
  MismatchedInput,
  OutOfRange,
  OrderViolation,
  NotEinstein,
  BadParams,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a machine-readable code and, where meaningful, the
/// residual that tripped the check.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), code_(code), residual_(residual) {}

  ErrorCode code() const noexcept { return code_; }
  double residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  double residual_;
};

namespace tol {
inline constexpr double kValidation = 1e-10;
inline constexpr double kReconstruction = 1e-9;
inline constexpr double kProperty = 1e-9;
inline constexpr double kOrthonormal = 1e-9;
inline constexpr double kDecomposable = 1e-8;
inline constexpr double kQuaternionUnit = 1e-12;
}  // namespace tol

// SplitMix64 step; used to derive independent per-case seeds from one base
// seed so results never depend on evaluation order.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                 std::uint64_t index) {
  return mix_seed(mix_seed(base ^ mix_seed(stream)) + index);
}

}  // namespace curv4
