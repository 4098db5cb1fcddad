#include "curv4/extremes.hpp"

#include "curv4/normal_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace curv4 {

const char* to_string(Quantity q) { return q == Quantity::Sectional ? "sectional" : "biorthogonal"; }
const char* to_string(Target t) { return t == Target::Min ? "min" : "max"; }
const char* to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed-form";
    case Method::Optimize: return "optimize";
    case Method::Sample: return "sample";
  }
  return "closed-form";
}

Quantity parse_quantity(std::string_view s) {
  if (s == "sectional") return Quantity::Sectional;
  if (s == "biorthogonal" || s == "kperp") return Quantity::Biorthogonal;
  throw Error(ErrorCode::BadParams, "unknown quantity '" + std::string(s) + "'");
}

double sectional(const CurvatureOperator& r, const Plane& p) {
  const TwoForm w = plane_to_form(p);
  return r.apply(w, w);
}

double biorthogonal(const CurvatureOperator& r, const Plane& p) {
  return 0.5 * (sectional(r, p) + sectional(r, orthogonal_complement(p)));
}

Plane plane_from_selfdual(const Vec3& phi, const Vec3& psi) {
  const double s = 1.0 / std::sqrt(2.0);
  return form_to_plane(form_from_selfdual_coords(phi.normalized() * s, psi.normalized() * s));
}

std::pair<Vec3, Vec3> selfdual_of_plane(const Plane& p) {
  const SelfDualSplit split = split_selfdual(plane_to_form(p));
  const double r2 = std::sqrt(2.0);
  return {split.selfdual_coords * r2, split.antiselfdual_coords * r2};
}

KperpExtremes kperp_extremes_closed_form(const CurvatureOperator& r) {
  const WeylBlocks w = weyl_blocks(r);
  const double s12 = r.scalar() / 12.0;
  const BergerNormalForm nf = berger_normal_form(r);
  const Mat4& f = nf.frame.matrix;
  KperpExtremes out;
  out.max.value = s12 + 0.5 * (w.lambda_plus[2] + w.lambda_minus[2]);
  out.max.witness = Plane(f.col(0), f.col(3));
  out.min.value = s12 + 0.5 * (w.lambda_plus[0] + w.lambda_minus[0]);
  out.min.witness = Plane(f.col(0), f.col(1));
  out.min.method = out.max.method = Method::ClosedForm;
  return out;
}

SphereQuadraticSolution maximize_on_sphere(const Mat3& q, const Vec3& c, const Vec3* hint) {
  const SymEigen3 es = sym_eigen(q);
  const Vec3& ev = es.values;
  const Mat3& v = es.vectors;
  const Vec3 d = v.transpose() * c;
  const double top = ev[2];
  Vec3 gap;
  for (int i = 0; i < 3; ++i) gap[i] = std::max(0.0, top - ev[i]);

  // Secular function of t = mu - lambda_max.
  const auto secular = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (d[i] == 0.0) continue;
      const double den = t + gap[i];
      if (den == 0.0) return std::numeric_limits<double>::infinity();
      sum += d[i] * d[i] / (den * den);
    }
    return sum;
  };

  SphereQuadraticSolution sol;
  Vec3 xhat;
  if (secular(0.0) <= 1.0) {
    // Hard case: mu = lambda_max, the remaining norm goes into the top
    // eigenspace.
    sol.hard_case = true;
    sol.multiplier = top;
    double used = 0.0;
    for (int i = 0; i < 3; ++i) {
      xhat[i] = (d[i] == 0.0) ? 0.0 : d[i] / gap[i];
      used += xhat[i] * xhat[i];
    }
    const double tau = std::sqrt(std::max(0.0, 1.0 - used));
    // Top eigenspace: indices with zero gap (and necessarily zero d).
    Vec3 dir = Vec3::Zero();
    if (hint != nullptr) {
      const Vec3 h = v.transpose() * (*hint);
      for (int i = 0; i < 3; ++i)
        if (gap[i] == 0.0 && d[i] == 0.0) dir[i] = h[i];
    }
    if (dir.norm() < 1e-12) {
      dir.setZero();
      dir[2] = 1.0;
    }
    dir.normalize();
    xhat += tau * dir;
  } else {
    // phi(t) decreases from > 1 at t = 0 to <= 1 at t = |c|.
    double lo = 0.0;
    double hi = c.norm();
    for (int it = 0; it < 600 && hi - lo > 1e-14 * hi; ++it) {
      double mid;
      if (lo == 0.0) {
        mid = hi * 1e-3;
      } else if (hi > 2.0 * lo) {
        mid = std::sqrt(lo * hi);
      } else {
        mid = 0.5 * (lo + hi);
      }
      if (secular(mid) > 1.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double t = hi;
    sol.multiplier = top + t;
    for (int i = 0; i < 3; ++i) xhat[i] = d[i] / (t + gap[i]);
  }
  sol.x = (v * xhat).normalized();
  sol.value = 0.5 * sol.x.dot(q * sol.x) + c.dot(sol.x);
  return sol;
}

namespace {

struct BlockData {
  Mat3 a;
  Mat3 b;
  Mat3 c;
};

BlockData block_data(const CurvatureOperator& r, Quantity quantity, Target target) {
  const Mat6 blocks = selfdual_blocks(r);
  BlockData out{blocks.topLeftCorner<3, 3>(), blocks.topRightCorner<3, 3>(), blocks.bottomRightCorner<3, 3>()};
  if (quantity == Quantity::Biorthogonal) out.b.setZero();
  if (target == Target::Min) {
    out.a = -out.a;
    out.b = -out.b;
    out.c = -out.c;
  }
  return out;
}

double objective(const BlockData& m, const Vec3& phi, const Vec3& psi) {
  return 0.5 * phi.dot(m.a * phi) + phi.dot(m.b * psi) + 0.5 * psi.dot(m.c * psi);
}

struct RunResult {
  Vec3 phi;
  Vec3 psi;
  double value;
  int iterations;
  bool converged;
};

RunResult ascend(const BlockData& m, Vec3 phi, Vec3 psi, const OptimizeOptions& opt) {
  RunResult out{phi, psi, 0.0, 0, false};
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const Vec3 phi_next = maximize_on_sphere(m.a, m.b * psi, &phi).x;
    const Vec3 psi_next = maximize_on_sphere(m.c, m.b.transpose() * phi_next, &psi).x;
    const double step = (phi_next - phi).norm() + (psi_next - psi).norm();
    phi = phi_next;
    psi = psi_next;
    out.iterations = it;
    if (step < opt.step_tolerance) {
      out.converged = true;
      break;
    }
  }
  out.phi = phi;
  out.psi = psi;
  out.value = objective(m, phi, psi);
  return out;
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec3 x;
  do {
    x = Vec3(normal(rng), normal(rng), normal(rng));
  } while (x.norm() < 1e-8);
  return x.normalized();
}

Mat3 random_rotation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
  q.normalize();
  return q.toRotationMatrix();
}

}  // namespace

ExtremeResult extremes_optimize(const CurvatureOperator& r, Quantity quantity, Target target,
                                const OptimizeOptions& options) {
  const BlockData m = block_data(r, quantity, target);
  const Mat3 va = sym_eigen(m.a).vectors;
  const Mat3 vc = sym_eigen(m.c).vectors;

  std::vector<std::pair<Vec3, Vec3>> starts;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) starts.emplace_back(va.col(i), vc.col(j));
  for (int k = 0; k < options.random_starts; ++k) {
    std::mt19937_64 rng(derive_seed(options.seed, 0x5354415254ULL, static_cast<std::uint64_t>(k)));
    const Vec3 phi = random_unit(rng);
    const Vec3 psi = random_unit(rng);
    starts.emplace_back(phi, psi);
  }

  RunResult best{};
  bool have = false;
  std::size_t unconverged = 0;
  std::size_t total_iterations = 0;
  for (const auto& [phi, psi] : starts) {
    const RunResult run = ascend(m, phi, psi, options);
    total_iterations += static_cast<std::size_t>(run.iterations);
    if (!run.converged) ++unconverged;
    if (!have || run.value > best.value) {
      best = run;
      have = true;
    }
  }

  ExtremeResult out;
  out.method = Method::Optimize;
  out.value = target == Target::Max ? best.value : -best.value;
  out.witness = plane_from_selfdual(best.phi, best.psi);
  out.iterations = total_iterations;
  out.converged = best.converged;
  out.unconverged_restarts = unconverged;
  return out;
}

std::vector<Vec3> sphere_points(std::size_t count, bool hemisphere, std::uint64_t seed) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const Mat3 rot = seed == 0 ? Mat3::Identity() : random_rotation(seed);
  std::vector<Vec3> pts;
  pts.reserve(count);
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double k = static_cast<double>(i) + 0.5;
    const double z = hemisphere ? 1.0 - k / n : 1.0 - 2.0 * k / n;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double th = golden * static_cast<double>(i);
    pts.push_back(rot * Vec3(rad * std::cos(th), rad * std::sin(th), z));
  }
  return pts;
}

ExtremeResult extremes_sample(const CurvatureOperator& r, Quantity quantity, Target target, std::size_t n,
                              std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::BadParams, "sample count must be at least 1");
  const BlockData m = block_data(r, quantity, target);

  std::size_t m1, m2;
  bool psi_hemisphere;
  if (quantity == Quantity::Sectional) {
    m1 = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n) / 2.0))));
    m2 = std::max<std::size_t>(1, n / m1);
    psi_hemisphere = false;
  } else {
    m1 = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)))));
    m2 = std::max<std::size_t>(1, n / m1);
    psi_hemisphere = true;
  }
  const std::vector<Vec3> phis = sphere_points(m1, true, derive_seed(seed, 1, 0));
  const std::vector<Vec3> psis = sphere_points(m2, psi_hemisphere, derive_seed(seed, 2, 0));

  std::vector<double> qpsi(m2);
  for (std::size_t j = 0; j < m2; ++j) qpsi[j] = 0.5 * psis[j].dot(m.c * psis[j]);

  double best = -std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < m1; ++i) {
    const Vec3& phi = phis[i];
    const double qa = 0.5 * phi.dot(m.a * phi);
    const Vec3 cross = m.b.transpose() * phi;
    for (std::size_t j = 0; j < m2; ++j) {
      const double val = qa + cross.dot(psis[j]) + qpsi[j];
      if (val > best) {
        best = val;
        bi = i;
        bj = j;
      }
    }
  }

  ExtremeResult out;
  out.method = Method::Sample;
  out.value = target == Target::Max ? best : -best;
  out.witness = plane_from_selfdual(phis[bi], psis[bj]);
  out.iterations = m1 * m2;
  return out;
}

}  // namespace curv4
