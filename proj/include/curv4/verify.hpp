#pragma once

// Seeded property suites. Every case draws its own seed from
// (base seed, suite, case index), so results do not depend on run order.

#include "curv4/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curv4 {

inline constexpr std::uint64_t kDefaultVerifySeed = 0x6375727634ULL;

struct VerifyOptions {
  std::uint64_t seed = kDefaultVerifySeed;
  /// Case count; the suite default when unset.
  std::optional<std::size_t> n;
  /// Grassmannian samples per tensor for the sampler cross-checks.
  std::size_t samples = 10000;
};

struct Metric {
  std::string name;
  double value = 0.0;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t falsifications = 0;
  std::vector<Metric> metrics;
  /// First falsifying case, enough to replay it.
  std::optional<json> counterexample;

  double metric(const std::string& key) const;
};

/// decomposition, normal_form, kperp, lemma25, lemma26, lemma27,
/// certificate, r2_bounds, frame_invariance, einstein, catalog.
const std::vector<std::string>& suite_names();
std::size_t default_cases(const std::string& suite);

/// Throws BadParams for an unknown suite.
SuiteResult run_suite(const std::string& suite, const VerifyOptions& options = {});

/// Fixed-width table with per-suite counts and metrics; contains no timing so
/// it is byte-stable for a given configuration.
std::string format_summary(const std::vector<SuiteResult>& results, const VerifyOptions& options);

// Instance generators shared with the tests.

/// (S/12) Id scaled to a random positive level plus a random perturbation of
/// random size; S > 0 is not guaranteed.
CurvatureOperator random_positive_curvature(std::uint64_t seed);
/// Random operator whose Weyl part has W- = 0 (or W+ = 0 when `minus` is
/// false).
CurvatureOperator random_half_weyl(std::uint64_t seed, bool zero_minus);
/// Random symmetric traceless 3 x 3 matrix.
Mat3 random_traceless3(std::uint64_t seed);
FrameRotation random_frame(std::uint64_t seed);
Plane random_plane(std::uint64_t seed);

}  // namespace curv4
