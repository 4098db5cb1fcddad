#include "curv4/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace curv4 {

double SuiteResult::metric(const std::string& key) const {
  for (const auto& m : metrics)
    if (m.name == key) return m.value;
  throw Error(ErrorCode::BadParams, "no metric '" + key + "' in suite " + name);
}

namespace {

class Tracker {
 public:
  explicit Tracker(SuiteResult& r) : r_(r) {}

  void max(const std::string& key, double v) { update(key, v, true); }
  void min(const std::string& key, double v) { update(key, v, false); }
  void set(const std::string& key, double v) { slot(key, v) = v; }

  /// Records a falsification unless `ok`.
  void expect(bool ok, const std::function<json()>& describe) {
    if (ok) return;
    ++r_.falsifications;
    if (!r_.counterexample) r_.counterexample = describe();
  }

 private:
  double& slot(const std::string& key, double init) {
    for (auto& m : r_.metrics)
      if (m.name == key) return m.value;
    r_.metrics.push_back(Metric{key, init});
    return r_.metrics.back().value;
  }
  void update(const std::string& key, double v, bool is_max) {
    double& s = slot(key, v);
    s = is_max ? std::max(s, v) : std::min(s, v);
  }

  SuiteResult& r_;
};

json case_json(const std::string& suite, std::uint64_t seed, std::size_t index, const CurvatureOperator& r) {
  json out;
  out["suite"] = suite;
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(seed));
  out["case_seed"] = buf;
  out["index"] = index;
  out["tensor"] = tensor_to_json(r);
  return out;
}

std::uint64_t suite_stream(const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return h;
}

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

double log_uniform(std::mt19937_64& rng, double a, double b) {
  return std::exp(uniform(rng, std::log(a), std::log(b)));
}

Vec3 random_vec3(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return Vec3(normal(rng), normal(rng), normal(rng));
}

double max_abs(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }

// Lambda1 at which threshold(S, lambda1) equals delta; valid for
// S/6 < delta < S/4.
std::optional<double> boundary_lambda(double s, double delta) {
  if (!(delta > s / 6.0 && delta < s / 4.0)) return std::nullopt;
  return s * (12.0 * delta - 2.0 * s) / (9.0 * (s - 4.0 * delta));
}

// --- suites ---------------------------------------------------------------

void suite_decomposition(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, stream, i);
    const CurvatureOperator r = random_curvature(seed);
    const CurvatureDecomposition d = decompose(r);
    const double orth = std::max({std::abs(frobenius(d.scalar_part, d.ricci_part)),
                                  std::abs(frobenius(d.scalar_part, d.weyl_part)),
                                  std::abs(frobenius(d.ricci_part, d.weyl_part))});
    const double recon = max_abs((d.scalar_part + d.ricci_part + d.weyl_part).matrix() - r.matrix());
    const double wric = ricci_contract(d.weyl_part).matrix.cwiseAbs().maxCoeff();
    const double scal = max_abs(d.scalar_part.matrix() - (r.scalar() / 12.0) * Mat6::Identity());
    const double trace = std::abs(ricci_contract(r).scalar() - r.scalar());
    const Mat6 wb = selfdual_blocks(d.weyl_part);
    const double offblock = wb.topRightCorner<3, 3>().cwiseAbs().maxCoeff();
    const Mat6 rb = selfdual_blocks(d.ricci_part);
    const double ricci_diag =
        std::max(rb.topLeftCorner<3, 3>().cwiseAbs().maxCoeff(), rb.bottomRightCorner<3, 3>().cwiseAbs().maxCoeff());
    const double ein = max_abs(decompose(random_curvature(seed, RandomStyle::Einstein)).ricci_part.matrix());
    const CurvatureOperator wo = random_curvature(seed, RandomStyle::WeylOnly);
    const double wonly = std::max(std::abs(wo.scalar()), ricci_contract(wo).matrix.cwiseAbs().maxCoeff());
    t.max("orthogonality", orth);
    t.max("reconstruction", recon);
    t.max("weyl_ricci", wric);
    t.max("scalar_part", scal);
    t.max("ricci_trace", trace);
    t.max("weyl_offblock", offblock);
    t.max("ricci_diagblock", ricci_diag);
    t.max("einstein_ricci", ein);
    t.max("weyl_only_ricci", wonly);
    t.expect(orth < 1e-9 && recon < 1e-10 && wric < 1e-9 && scal < 1e-9 && trace < 1e-9 && offblock < 1e-9 &&
                 ricci_diag < 1e-9 && ein < 1e-10 && wonly < 1e-10,
             [&] {
               json c = case_json(res.name, seed, i, r);
               c["orthogonality"] = orth;
               c["reconstruction"] = recon;
               c["weyl_ricci"] = wric;
               return c;
             });
  }
  res.cases = n;
}

void suite_normal_form(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, stream, i);
    const CurvatureOperator r = random_curvature(seed);
    const BergerNormalForm nf = berger_normal_form(r);
    NormalFormOptions opt;
    opt.samples = o.samples;
    opt.seed = derive_seed(seed, 1, 0);
    try {
      const NormalFormReport rep = verify_normal_form(r, nf, opt);
      t.max("block_residual", rep.block_residual);
      t.max("entry_residual", rep.entry_residual);
      t.max("sum_residual", rep.sum_residual);
      t.min("interlacing_slack", rep.interlacing_slack);
      t.max("optimizer_gap", std::max(rep.min_gap_optimized, rep.max_gap_optimized));
      if (rep.sampled) {
        t.max("sampler_gap", std::max(rep.min_gap_sampled, rep.max_gap_sampled));
        // The sampler can only under-reach the true extremes.
        const double overshoot = -std::min(rep.min_gap_sampled, rep.max_gap_sampled);
        t.max("sampler_overshoot", overshoot);
        t.expect(overshoot <= 1e-9, [&] {
          json c = case_json(res.name, seed, i, r);
          c["report"] = to_json(rep);
          return c;
        });
      }
      t.expect(rep.block_residual < 1e-8, [&] {
        json c = case_json(res.name, seed, i, r);
        c["report"] = to_json(rep);
        return c;
      });
    } catch (const Error& e) {
      t.expect(false, [&] {
        json c = case_json(res.name, seed, i, r);
        c["error"] = e.what();
        return c;
      });
    }
  }
  res.cases = n;
}

void suite_kperp(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, stream, i);
    const CurvatureOperator r = random_curvature(seed);
    const KperpExtremes cf = kperp_extremes_closed_form(r);
    const ExtremeResult omax = extremes_optimize(r, Quantity::Biorthogonal, Target::Max);
    const ExtremeResult omin = extremes_optimize(r, Quantity::Biorthogonal, Target::Min);
    const ExtremeResult smax = extremes_sample(r, Quantity::Biorthogonal, Target::Max, o.samples, derive_seed(seed, 1, 0));
    const ExtremeResult smin = extremes_sample(r, Quantity::Biorthogonal, Target::Min, o.samples, derive_seed(seed, 1, 0));
    const double opt_gap = std::max(std::abs(omax.value - cf.max.value), std::abs(omin.value - cf.min.value));
    const double witness = std::max({std::abs(biorthogonal(r, cf.max.witness) - cf.max.value),
                                     std::abs(biorthogonal(r, cf.min.witness) - cf.min.value),
                                     std::abs(biorthogonal(r, omax.witness) - omax.value),
                                     std::abs(biorthogonal(r, omin.witness) - omin.value)});
    const double dominance = std::max(smax.value - cf.max.value, cf.min.value - smin.value);

    // Sum over the three biorthogonal pairs of a random frame.
    const FrameRotation f = random_frame(derive_seed(seed, 2, 0));
    double sum = 0.0;
    for (int k = 1; k < 4; ++k) sum += biorthogonal(r, Plane(f.matrix.col(0), f.matrix.col(k)));
    const double pair_sum = std::abs(sum - r.scalar() / 4.0);

    const Plane p = random_plane(derive_seed(seed, 3, 0));
    const double sym = std::abs(biorthogonal(r, p) - biorthogonal(r, orthogonal_complement(p)));
    const auto [phi, psi] = selfdual_of_plane(p);
    const Mat6 b = selfdual_blocks(r);
    const double kblocks = 0.5 * phi.dot(b.topLeftCorner<3, 3>() * phi) + phi.dot(b.topRightCorner<3, 3>() * psi) +
                           0.5 * psi.dot(b.bottomRightCorner<3, 3>() * psi);
    const double sect_blocks = std::abs(sectional(r, p) - kblocks);
    const WeylBlocks w = weyl_blocks(r);
    const double kp_blocks =
        r.scalar() / 12.0 + 0.5 * (phi.dot(w.wplus * phi) + psi.dot(w.wminus * psi));
    const double kperp_blocks = std::abs(biorthogonal(r, p) - kp_blocks);

    const ExtremeResult kmax = extremes_optimize(r, Quantity::Sectional, Target::Max);
    const ExtremeResult ksmp = extremes_sample(r, Quantity::Sectional, Target::Max, o.samples, derive_seed(seed, 4, 0));
    const double sect_dom = ksmp.value - kmax.value;

    const CurvatureOperator e = random_curvature(seed, RandomStyle::Einstein);
    const double einstein_sym = std::abs(sectional(e, p) - sectional(e, orthogonal_complement(p)));

    t.max("optimizer_gap", opt_gap);
    t.max("witness_residual", witness);
    t.max("sample_excess", dominance);
    t.max("pair_sum", pair_sum);
    t.max("complement_symmetry", sym);
    t.max("sectional_blocks", sect_blocks);
    t.max("kperp_blocks", kperp_blocks);
    t.max("sectional_sample_excess", sect_dom);
    t.max("einstein_complement", einstein_sym);
    t.max("unconverged", static_cast<double>(!omax.converged || !omin.converged || !kmax.converged));
    t.expect(opt_gap <= 1e-8 && witness <= 1e-8 && dominance <= 1e-9 && pair_sum < 1e-9 && sym < 1e-12 &&
                 sect_blocks < 1e-10 && kperp_blocks < 1e-10 && sect_dom <= 1e-9 && einstein_sym < 1e-9,
             [&] {
               json c = case_json(res.name, seed, i, r);
               c["closed_form"] = {cf.min.value, cf.max.value};
               c["optimized"] = {omin.value, omax.value};
               c["sampled"] = {smin.value, smax.value};
               c["pair_sum"] = pair_sum;
               return c;
             });
  }
  res.cases = n;
}

void suite_lemma25(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  std::size_t equality_cases = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, stream, i);
    const CurvatureOperator r = random_curvature(seed);
    const LemmaBoundsReport rep = lemma_bounds(r);
    t.min("min_slack", std::min({rep.slack1, rep.slack2, rep.slack3}));
    t.max("ineq1_residual", std::abs(rep.slack1));
    const bool iff = rep.equality2 == rep.weyl_product_zero && rep.equality3 == rep.weyl_product_zero;
    t.expect(rep.holds && iff, [&] {
      json c = case_json(res.name, seed, i, r);
      c["report"] = to_json(rep);
      return c;
    });
  }
  // Equality family: one of W+ and W- vanishes.
  const std::size_t m = std::max<std::size_t>(1, n / 10);
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, stream ^ 0xE0, i);
    const CurvatureOperator r = random_half_weyl(seed, i % 2 == 0);
    const LemmaBoundsReport rep = lemma_bounds(r);
    t.max("equality_family_slack", std::max(std::abs(rep.slack2), std::abs(rep.slack3)));
    t.max("equality_family_product", rep.weyl_product);
    t.expect(rep.holds && rep.equality2 && rep.equality3 && rep.weyl_product_zero, [&] {
      json c = case_json(res.name, seed, i, r);
      c["family"] = i % 2 == 0 ? "wminus_zero" : "wplus_zero";
      c["report"] = to_json(rep);
      return c;
    });
    ++equality_cases;
  }
  res.cases = n + equality_cases;
}

void suite_lemma26(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, stream, i);
    const Mat3 w = random_traceless3(seed);
    const DetBoundReport rep = det_bound(w);
    t.min("min_gap", rep.rhs - rep.lhs);
    t.max("identity_residual", rep.identity_residual);
    t.expect(rep.holds && rep.identity_residual < 1e-9, [&] {
      json c;
      c["suite"] = res.name;
      c["index"] = i;
      c["matrix"] = to_json(w);
      c["report"] = to_json(rep);
      return c;
    });
  }
  // Equality family diag(-s, -s, 2s), s > 0, up to rotation.
  for (std::size_t i = 0; i < 100; ++i) {
    std::mt19937_64 rng(derive_seed(o.seed, stream ^ 0xE0, i));
    const double s = uniform(rng, 0.01, 3.0);
    const Mat3 q = random_frame(rng()).q.toRotationMatrix();
    const Mat3 w = q * Vec3(-s, -s, 2.0 * s).asDiagonal() * q.transpose();
    const DetBoundReport rep = det_bound(Mat3(w - (w.trace() / 3.0) * Mat3::Identity()));
    t.max("equality_family_gap", std::abs(rep.rhs - rep.lhs));
    t.expect(rep.equality && std::abs(rep.rhs - rep.lhs) < 1e-9, [&] {
      json c;
      c["suite"] = res.name;
      c["family"] = "repeated_eigenvalue";
      c["matrix"] = to_json(w);
      return c;
    });
  }
  res.cases = n + 100;
}

void suite_lemma27(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  std::size_t total = 0;
  for (int branch = 0; branch < 3; ++branch) {
    std::size_t accepted = 0;
    std::size_t attempts = 0;
    const std::size_t cap = 200 * n;
    while (accepted < n && attempts < cap) {
      const std::uint64_t seed = derive_seed(o.seed, stream + static_cast<std::uint64_t>(branch), attempts++);
      std::mt19937_64 rng(derive_seed(seed, 1, 0));
      const CurvatureOperator r = random_positive_curvature(seed);
      if (!(r.scalar() > 0.0)) continue;
      SpectralContext ctx;
      if (branch < 2) {
        ctx.lambda1 = log_uniform(rng, 0.05, 50.0);
      } else {
        const double rmin = ricci_contract(r).min_eigenvalue();
        if (!(rmin > 0.0)) continue;
        const double k = rmin * uniform(rng, 0.3, 1.0);
        ctx.k = k;
        ctx.lambda1 = lichnerowicz_lower(k) * (1.0 + log_uniform(rng, 1e-6, 10.0));
      }
      const Lemma27Report rep = lemma27_implication(r, ctx);
      if (!rep.hypotheses[static_cast<std::size_t>(branch)]) continue;
      ++accepted;
      t.min("min_margin_branch" + std::to_string(branch + 1), rep.margin);
      t.expect(rep.conclusion, [&] {
        json c = case_json(res.name, seed, attempts - 1, r);
        c["branch"] = branch + 1;
        c["lambda1"] = ctx.lambda1;
        c["k"] = ctx.k ? json(*ctx.k) : json(nullptr);
        c["report"] = to_json(rep);
        return c;
      });
    }
    t.set("accepted_branch" + std::to_string(branch + 1), static_cast<double>(accepted));
    t.set("attempts_branch" + std::to_string(branch + 1), static_cast<double>(attempts));
    if (accepted < n) {
      t.expect(false, [&] {
        json c;
        c["suite"] = res.name;
        c["branch"] = branch + 1;
        c["error"] = "not enough instances satisfy the branch hypothesis";
        c["accepted"] = accepted;
        return c;
      });
    }
    total += accepted;
  }
  res.cases = total;
}

void suite_certificate(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  std::size_t accepted = 0;
  std::size_t attempts = 0;
  std::size_t boundary = 0;
  const std::size_t cap = 200 * n;
  while (accepted < n && attempts < cap) {
    const std::uint64_t seed = derive_seed(o.seed, stream, attempts++);
    std::mt19937_64 rng(derive_seed(seed, 1, 0));
    const CurvatureOperator r = random_positive_curvature(seed);
    const double s = r.scalar();
    if (!(s > 0.0)) continue;
    SpectralContext ctx;
    ctx.lambda1 = log_uniform(rng, 0.05, 50.0);
    // Every third attempt places lambda1 just above the value where the
    // hypothesis becomes tight.
    if (attempts % 3 == 0) {
      const double delta = kperp_extremes_closed_form(r).max.value;
      if (const auto lb = boundary_lambda(s, delta)) ctx.lambda1 = *lb * (1.0 + log_uniform(rng, 1e-12, 1e-1));
    }
    const CertificateReport two = discriminant_certificate(r, ctx, CertificateFlavor::TwoForm);
    if (two.outcome == Outcome::NotApplicable) continue;
    ++accepted;
    if (two.threshold - two.delta < 1e-6 * s) ++boundary;
    const CertificateReport weyl = discriminant_certificate(r, ctx, CertificateFlavor::Weyl);
    for (const CertificateReport* c : {&two, &weyl}) {
      t.min("min_lead", std::min(c->lead_minus, c->lead_plus));
      t.max("max_disc_quadratic", c->disc_quadratic);
      t.max("max_disc_final", c->disc_final);
      t.max("chain_excess", c->disc_chain - c->disc_final);
      if (c->lead_det) t.min("lead_det_excess", *c->lead_det - c->lead_minus);
      t.expect(c->outcome == Outcome::Pass, [&] {
        json e = case_json(res.name, seed, attempts - 1, r);
        e["lambda1"] = ctx.lambda1;
        e["report"] = to_json(*c);
        return e;
      });
    }
  }
  t.set("accepted", static_cast<double>(accepted));
  t.set("attempts", static_cast<double>(attempts));
  t.set("near_boundary", static_cast<double>(boundary));
  if (accepted < n) {
    t.expect(false, [&] {
      json c;
      c["suite"] = res.name;
      c["error"] = "not enough instances satisfy the hypothesis";
      return c;
    });
  }
  res.cases = 2 * accepted;
}

void suite_r2_bounds(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, stream, i);
    std::mt19937_64 rng(derive_seed(seed, 1, 0));
    const CurvatureOperator r = random_curvature(seed);
    const WeitzenbockOperator r2 = weitzenbock_r2(r);
    const WeylBlocks w = weyl_blocks(r);
    const double s = r.scalar();
    std::vector<double> expect;
    for (int k = 0; k < 3; ++k) {
      expect.push_back(s / 3.0 - 2.0 * w.lambda_plus[k]);
      expect.push_back(s / 3.0 - 2.0 * w.lambda_minus[k]);
    }
    std::sort(expect.begin(), expect.end());
    double spec = 0.0;
    for (int k = 0; k < 6; ++k) spec = std::max(spec, std::abs(r2.spectrum[k] - expect[static_cast<std::size_t>(k)]));

    const Mat6 b = selfdual_basis() * r2.matrix * selfdual_basis().transpose();
    const Vec3 x = random_vec3(rng);
    const Vec3 y = random_vec3(rng);
    const double qp = x.dot(b.topLeftCorner<3, 3>() * x);
    const double qm = y.dot(b.bottomRightCorner<3, 3>() * y);
    const double viol = std::max({qp - (s / 3.0 - 2.0 * w.lambda_plus[0]) * x.squaredNorm(),
                                  (s / 3.0 - 2.0 * w.lambda_plus[2]) * x.squaredNorm() - qp,
                                  qm - (s / 3.0 - 2.0 * w.lambda_minus[0]) * y.squaredNorm(),
                                  (s / 3.0 - 2.0 * w.lambda_minus[2]) * y.squaredNorm() - qm});
    const double offblock = b.topRightCorner<3, 3>().cwiseAbs().maxCoeff();
    t.max("spectrum_residual", spec);
    t.max("bound_violation", viol);
    t.max("offblock", offblock);
    t.expect(spec < 1e-9 && viol <= 1e-9 && offblock < 1e-9, [&] {
      json c = case_json(res.name, seed, i, r);
      c["spectrum_residual"] = spec;
      c["bound_violation"] = viol;
      return c;
    });
  }
  res.cases = n;
}

void suite_frame_invariance(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const std::uint64_t stream = suite_stream(res.name);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, stream, i);
    const CurvatureOperator r = random_curvature(seed);
    const FrameRotation f = random_frame(derive_seed(seed, 1, 0));
    const CurvatureOperator rf = conjugate(r, f);
    const Plane p = random_plane(derive_seed(seed, 2, 0));
    const double sect = std::abs(sectional(r, p) - sectional(rf, f.apply(p)));

    const KperpExtremes a = kperp_extremes_closed_form(r);
    const KperpExtremes b = kperp_extremes_closed_form(rf);
    const double kmax_a = extremes_optimize(r, Quantity::Sectional, Target::Max).value;
    const double kmax_b = extremes_optimize(rf, Quantity::Sectional, Target::Max).value;
    const double kmin_a = extremes_optimize(r, Quantity::Sectional, Target::Min).value;
    const double kmin_b = extremes_optimize(rf, Quantity::Sectional, Target::Min).value;
    const double ext = std::max({std::abs(a.max.value - b.max.value), std::abs(a.min.value - b.min.value),
                                 std::abs(kmax_a - kmax_b), std::abs(kmin_a - kmin_b)});

    const BergerNormalForm na = berger_normal_form(r);
    const BergerNormalForm nb = berger_normal_form(rf);
    const double ab = std::max((na.a - nb.a).cwiseAbs().maxCoeff(), (na.b - nb.b).cwiseAbs().maxCoeff());

    const FrameRotation g = so4_from_quaternions(Eigen::Quaterniond(-f.p.coeffs()), Eigen::Quaterniond(-f.q.coeffs()));
    const double kernel = (g.matrix - f.matrix).cwiseAbs().maxCoeff();
    const double so4 = std::max((f.matrix.transpose() * f.matrix - Mat4::Identity()).cwiseAbs().maxCoeff(),
                                std::abs(f.matrix.determinant() - 1.0));

    t.max("sectional", sect);
    t.max("extremes", ext);
    t.max("normal_form", ab);
    t.max("double_cover_kernel", kernel);
    t.max("so4_residual", so4);
    t.expect(sect < 1e-10 && ext <= 1e-8 && ab < 1e-9 && kernel < 1e-14 && so4 < 1e-12, [&] {
      json c = case_json(res.name, seed, i, r);
      c["p"] = {f.p.w(), f.p.x(), f.p.y(), f.p.z()};
      c["q"] = {f.q.w(), f.q.x(), f.q.y(), f.q.z()};
      c["extremes"] = ext;
      return c;
    });
  }
  res.cases = n;
}

void suite_einstein(const VerifyOptions& o, std::size_t n, SuiteResult& res, Tracker& t) {
  const EinsteinReport rep = positive_intersection_contradiction(1.0);
  const double beta_closed = (7.0 - std::sqrt(105.0)) / 28.0;
  const double beta_err = std::abs(rep.beta - beta_closed);
  const double coeff_err = std::abs(rep.euler_bound_coeff - (8.0 * rep.beta * rep.beta + 10.0 / 3.0));
  t.set("beta", rep.beta);
  t.set("euler_coefficient", rep.euler_bound_coeff);
  t.set("two_minus_four_over_c", rep.ratio);
  t.max("beta_error", beta_err);
  t.expect(beta_err < 1e-12 && coeff_err < 1e-12 && rep.contradiction &&
               std::abs(rep.euler_bound_coeff - 3.44091) < 1e-4,
           [&] {
             json c;
             c["suite"] = res.name;
             c["report"] = to_json(rep);
             return c;
           });

  const std::uint64_t stream = suite_stream(res.name);
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 rng(derive_seed(o.seed, stream, i));
    const double beta = uniform(rng, -1.0, 1.0);
    const double resid = std::abs(euler_upper_coefficient(1.0, beta) - (8.0 * beta * beta + 10.0 / 3.0));
    t.max("coefficient_identity", resid);
    t.expect(resid < 1e-12, [&] {
      json c;
      c["suite"] = res.name;
      c["beta"] = beta;
      return c;
    });
  }

  // Lower-from-upper bound on catalog Einstein tensors with Rc = g.
  for (ModelKind kind : {ModelKind::Sphere4, ModelKind::CP2, ModelKind::ProductS2S2}) {
    const ModelSpace m = model_with_scalar(kind, 4.0);
    const double kmax = extremes_optimize(m.curvature, Quantity::Sectional, Target::Max).value;
    const double kmin = extremes_optimize(m.curvature, Quantity::Sectional, Target::Min).value;
    const bool ok = kmax > 1.0 + 1e-12 || kmin >= kmin_from_kmax(std::min(kmax, 1.0)) - 1e-8;
    t.min("catalog_lower_bound_margin", kmin - kmin_from_kmax(std::min(kmax, 1.0)));
    t.expect(ok, [&] {
      json c;
      c["suite"] = res.name;
      c["kind"] = to_string(kind);
      c["kmin"] = kmin;
      c["kmax"] = kmax;
      return c;
    });
    const WeylGapReport gap = weyl_gap_check(m.curvature);
    const bool expect_eq = kind != ModelKind::Sphere4;
    t.max("weyl_gap_residual", expect_eq ? std::abs(gap.residual) : 0.0);
    t.expect(gap.applicable == expect_eq && gap.equality == expect_eq, [&] {
      json c;
      c["suite"] = res.name;
      c["kind"] = to_string(kind);
      c["report"] = to_json(gap);
      return c;
    });
  }
  res.cases = n + 7;
}

void suite_catalog(const VerifyOptions&, std::size_t, SuiteResult& res, Tracker& t) {
  const double scales[] = {0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 7.5, 10.0, 20.0};
  std::size_t cases = 0;
  std::vector<ModelSpace> spaces;
  for (ModelKind kind : all_model_kinds()) spaces.push_back(model_curvature(kind));
  spaces.push_back(model_curvature(ModelKind::ProductS2S2, {{"r1", 1.0}, {"r2", 2.0}}));
  for (const ModelSpace& base : spaces) {
    for (double c : scales) {
      const ModelSpace m = base.scaled(c);
      const InvariantReport inv = invariants(m);
      const double chi_err = std::abs(inv.chi - m.known_chi) / std::max(1.0, std::abs(double(m.known_chi)));
      const double tau_err = std::abs(inv.tau - m.known_tau) / std::max(1.0, std::abs(double(m.known_tau)));
      t.max("chi_error", chi_err);
      t.max("tau_error", tau_err);
      const double s = m.curvature.scalar();
      double extra = 0.0;
      if (base.kind == ModelKind::CP2) {
        // 2 chi - 3 tau = (2 |W-|^2 + S^2/24) Vol / (4 pi^2)
        const double lhs = 2.0 * inv.chi - 3.0 * inv.tau;
        const double rhs = (2.0 * inv.wminus_norm2 + s * s / 24.0) * m.volume / (4.0 * std::numbers::pi * std::numbers::pi);
        extra = std::max(extra, std::abs(lhs - rhs));
      }
      if (base.kind == ModelKind::CP2 || (base.kind == ModelKind::ProductS2S2 && base.params.at("r1") == base.params.at("r2"))) {
        extra = std::max(extra, std::abs(inv.wplus_norm2 - s * s / 24.0) / std::max(1.0, s * s));
      }
      if (base.kind == ModelKind::ProductS2S2 && base.params.at("r1") == base.params.at("r2")) {
        extra = std::max(extra, std::abs(weitzenbock_r2(m.curvature).min_eigenvalue));
      }
      t.max("identity_residual", extra);
      t.expect(chi_err <= 1e-8 && tau_err <= 1e-8 && extra < 1e-10, [&] {
        json e;
        e["suite"] = res.name;
        e["catalog"] = model_to_json(m);
        e["report"] = to_json(inv);
        return e;
      });
      ++cases;
    }
  }
  res.cases = cases;
}

using SuiteFn = void (*)(const VerifyOptions&, std::size_t, SuiteResult&, Tracker&);

struct SuiteEntry {
  SuiteFn fn;
  std::size_t default_n;
};

const std::map<std::string, SuiteEntry>& registry() {
  static const std::map<std::string, SuiteEntry> r = {
      {"decomposition", {suite_decomposition, 10000}},
      {"normal_form", {suite_normal_form, 1000}},
      {"kperp", {suite_kperp, 200}},
      {"lemma25", {suite_lemma25, 10000}},
      {"lemma26", {suite_lemma26, 100000}},
      {"lemma27", {suite_lemma27, 10000}},
      {"certificate", {suite_certificate, 10000}},
      {"r2_bounds", {suite_r2_bounds, 1000}},
      {"frame_invariance", {suite_frame_invariance, 100}},
      {"einstein", {suite_einstein, 1000}},
      {"catalog", {suite_catalog, 50}},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"decomposition", "normal_form", "kperp",    "lemma25",
                                                 "lemma26",       "lemma27",     "certificate", "r2_bounds",
                                                 "frame_invariance", "einstein", "catalog"};
  return names;
}

std::size_t default_cases(const std::string& suite) {
  const auto it = registry().find(suite);
  if (it == registry().end()) throw Error(ErrorCode::BadParams, "unknown suite '" + suite + "'");
  return it->second.default_n;
}

SuiteResult run_suite(const std::string& suite, const VerifyOptions& options) {
  const auto it = registry().find(suite);
  if (it == registry().end()) throw Error(ErrorCode::BadParams, "unknown suite '" + suite + "'");
  SuiteResult res;
  res.name = suite;
  Tracker t(res);
  it->second.fn(options, options.n.value_or(it->second.default_n), res, t);
  return res;
}

std::string format_summary(const std::vector<SuiteResult>& results, const VerifyOptions& options) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "seed 0x%016llx  samples %zu\n", static_cast<unsigned long long>(options.seed),
                options.samples);
  os << buf;
  std::snprintf(buf, sizeof buf, "%-17s %9s %9s  %s\n", "suite", "cases", "falsified", "metrics");
  os << buf;
  std::size_t total = 0;
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%-17s %9zu %9zu ", r.name.c_str(), r.cases, r.falsifications);
    os << buf;
    for (const auto& m : r.metrics) {
      std::snprintf(buf, sizeof buf, " %s=%.6g", m.name.c_str(), m.value);
      os << buf;
    }
    os << '\n';
    total += r.falsifications;
  }
  os << "total falsifications: " << total << '\n';
  return os.str();
}

// --- generators ---------------------------------------------------------------

CurvatureOperator random_positive_curvature(std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 0x505, 0));
  const double level = uniform(rng, 0.2, 3.0);
  const double eps = log_uniform(rng, 0.01, 1.5);
  const CurvatureOperator g = random_curvature(derive_seed(seed, 0x505, 1));
  return CurvatureOperator::assume_valid(level * Mat6::Identity() + eps * g.matrix());
}

CurvatureOperator random_half_weyl(std::uint64_t seed, bool zero_minus) {
  const CurvatureOperator g = random_curvature(seed);
  const CurvatureDecomposition d = decompose(g);
  Mat6 wb = selfdual_blocks(d.weyl_part);
  if (zero_minus) {
    wb.bottomRightCorner<3, 3>().setZero();
  } else {
    wb.topLeftCorner<3, 3>().setZero();
  }
  wb.topRightCorner<3, 3>().setZero();
  wb.bottomLeftCorner<3, 3>().setZero();
  const Mat6& u = selfdual_basis();
  const CurvatureOperator w = CurvatureOperator::assume_valid(u.transpose() * wb * u);
  return d.scalar_part + d.ricci_part + w;
}

Mat3 random_traceless3(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = normal(rng);
  Mat3 w = 0.5 * (g + g.transpose());
  w -= (w.trace() / 3.0) * Mat3::Identity();
  return w;
}

FrameRotation random_frame(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Quaterniond p(normal(rng), normal(rng), normal(rng), normal(rng));
  Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
  p.normalize();
  q.normalize();
  return so4_from_quaternions(p, q);
}

Plane random_plane(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec4 u(normal(rng), normal(rng), normal(rng), normal(rng));
  Vec4 v(normal(rng), normal(rng), normal(rng), normal(rng));
  u.normalize();
  v -= v.dot(u) * u;
  v.normalize();
  return Plane(u, v);
}

}  // namespace curv4
