#pragma once

// Sectional and biorthogonal curvature and their extremes over the
// Grassmannian of oriented 2-planes in R^4.
//
// A unit decomposable two-form is w = (phi + psi) / sqrt(2) with phi, psi unit
// vectors in B+ and B- coordinates, so Gr(2,4) ~ S^2 x S^2. With the operator
// blocks [[A, B], [B^T, C]] in (B+, B-),
//   K(phi, psi)     = 1/2 phi^T A phi + phi^T B psi + 1/2 psi^T C psi
//   Kperp(phi, psi) = 1/2 phi^T A phi + 1/2 psi^T C psi
// since the complement of the plane is (phi, -psi).

#include "curv4/curvature.hpp"
#include "curv4/lambda2.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace curv4 {

enum class Quantity { Sectional, Biorthogonal };
enum class Target { Min, Max };
enum class Method { ClosedForm, Optimize, Sample };

const char* to_string(Quantity q);
const char* to_string(Target t);
const char* to_string(Method m);
Quantity parse_quantity(std::string_view s);

struct ExtremeResult {
  double value = 0.0;
  Plane witness = Plane::coordinate(0, 1);
  Method method = Method::ClosedForm;
  /// Alternating sweeps for the optimizer, evaluated planes for the sampler.
  std::size_t iterations = 0;
  bool converged = true;
  /// Restarts that hit the iteration cap (optimizer only).
  std::size_t unconverged_restarts = 0;
  /// Gap to another method, filled in when cross-checked.
  std::optional<double> certificate;
};

double sectional(const CurvatureOperator& r, const Plane& p);
double biorthogonal(const CurvatureOperator& r, const Plane& p);

/// Plane of the unit decomposable form (phi + psi) / sqrt(2); phi and psi are
/// normalized first.
Plane plane_from_selfdual(const Vec3& phi, const Vec3& psi);
/// (phi, psi) of a plane, both unit.
std::pair<Vec3, Vec3> selfdual_of_plane(const Plane& p);

struct KperpExtremes {
  ExtremeResult min;
  ExtremeResult max;
};

/// Kperp_max = S/12 + (l3+ + l3-)/2 and Kperp_min = S/12 + (l1+ + l1-)/2, with
/// witnesses span{e1, e4} and span{e1, e2} of the Berger frame.
KperpExtremes kperp_extremes_closed_form(const CurvatureOperator& r);

// Maximizer of 1/2 x^T Q x + c^T x over the unit sphere.
struct SphereQuadraticSolution {
  Vec3 x;
  double value = 0.0;
  double multiplier = 0.0;  // mu with (mu I - Q) x = c, mu >= lambda_max(Q)
  bool hard_case = false;
};

/// Global maximizer via the secular equation sum d_i^2 / (mu - q_i)^2 = 1 in
/// the eigenbasis of Q (bisection to relative 1e-14). In the hard case, c
/// orthogonal to the top eigenspace, the solution adds a top eigenvector
/// component; `hint` selects its sign (and the sign of a pure eigenvector
/// solution when c = 0).
SphereQuadraticSolution maximize_on_sphere(const Mat3& q, const Vec3& c,
                                           const Vec3* hint = nullptr);

inline constexpr std::uint64_t kDefaultOptimizerSeed = 0x6d756c7469737461ULL;

struct OptimizeOptions {
  std::uint64_t seed = kDefaultOptimizerSeed;
  int random_starts = 24;
  int max_iterations = 200;
  double step_tolerance = 1e-12;
};

/// Alternating sphere-constrained ascent on (phi, psi) with deterministic
/// multistart: the 9 eigenvector pairs of A and C plus seeded random starts.
/// Non-convergence of the best restart is reported through `converged`.
ExtremeResult extremes_optimize(const CurvatureOperator& r, Quantity quantity, Target target,
                                const OptimizeOptions& options = {});

inline ExtremeResult sectional_extremes_optimize(const CurvatureOperator& r, Target target,
                                                 const OptimizeOptions& options = {}) {
  return extremes_optimize(r, Quantity::Sectional, target, options);
}

/// Brute-force oracle: evaluates the quantity on a product of two seeded
/// Fibonacci point sets (at most n planes). Oriented-plane symmetries are used
/// to halve the spheres: K is invariant under (phi, psi) -> (-phi, -psi) and
/// Kperp under each sign separately. The result is a lower bound of the max
/// (upper bound of the min).
ExtremeResult extremes_sample(const CurvatureOperator& r, Quantity quantity, Target target,
                              std::size_t n, std::uint64_t seed);

/// Quasi-uniform point set on S^2 (or the upper hemisphere z > 0), rotated by
/// a Haar-random rotation derived from `seed`; seed 0 leaves it unrotated.
std::vector<Vec3> sphere_points(std::size_t count, bool hemisphere, std::uint64_t seed);

}  // namespace curv4
