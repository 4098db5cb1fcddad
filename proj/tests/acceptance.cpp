// Acceptance run: one PASS/FAIL line per criterion. The path of the curv4
// executable is the first argument (criterion 11 runs it twice).

#include "curv4/verify.hpp"

#include "oracles.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace curv4;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Verdict model_invariants() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Expect {
    ModelKind kind;
    double chi, tau;
  };
  double worst = 0.0;
  for (const Expect& e : {Expect{ModelKind::Sphere4, 2, 0}, Expect{ModelKind::CP2, 3, 1},
                          Expect{ModelKind::ProductS2S2, 4, 0}, Expect{ModelKind::RP4, 1, 0}}) {
    const InvariantReport inv = invariants(model_curvature(e.kind));
    worst = std::max(worst, std::abs(inv.chi - e.chi) / std::abs(e.chi));
    worst = std::max(worst, std::abs(inv.tau - e.tau) / std::max(1.0, std::abs(e.tau)));
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-8 && dt < 1.0, "max relative error " + fmt("%.2e", worst) + ", " + fmt("%.4f", dt) + " s"};
}

Verdict decomposition_roundtrip() {
  double orth = 0.0, recon = 0.0, wric = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const CurvatureOperator r = random_curvature(derive_seed(kDefaultVerifySeed, 2, i));
    const CurvatureDecomposition d = decompose(r);
    orth = std::max({orth, std::abs(frobenius(d.scalar_part, d.ricci_part)),
                     std::abs(frobenius(d.scalar_part, d.weyl_part)), std::abs(frobenius(d.ricci_part, d.weyl_part))});
    recon = std::max(recon, ((d.scalar_part + d.ricci_part + d.weyl_part).matrix() - r.matrix()).cwiseAbs().maxCoeff());
    wric = std::max(wric, oracle::ricci(oracle::from_operator(d.weyl_part.matrix())).cwiseAbs().maxCoeff());
  }
  return {orth < 1e-9 && recon < 1e-10 && wric < 1e-9, "orthogonality " + fmt("%.2e", orth) + ", reconstruction " +
                                                           fmt("%.2e", recon) + ", Weyl Ricci " + fmt("%.2e", wric)};
}

Verdict berger_normal_form_check() {
  double block = 0.0, opt_gap = 0.0, samp_gap = 0.0, exact = 0.0, interlace = 1e300;
  std::size_t samp_fail = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const std::uint64_t seed = derive_seed(kDefaultVerifySeed, 3, i);
    const CurvatureOperator r = random_curvature(seed);
    const BergerNormalForm nf = berger_normal_form(r);
    NormalFormOptions opt;
    opt.samples = 100000;
    opt.seed = derive_seed(seed, 1, 0);
    const NormalFormReport rep = verify_normal_form(r, nf, opt);
    block = std::max(block, rep.block_residual);
    exact = std::max({exact, rep.entry_residual, rep.sum_residual, rep.spectrum_residual});
    interlace = std::min(interlace, rep.interlacing_slack);
    opt_gap = std::max({opt_gap, std::abs(rep.min_gap_optimized), std::abs(rep.max_gap_optimized)});
    const double g = std::max(std::abs(rep.min_gap_sampled), std::abs(rep.max_gap_sampled));
    samp_gap = std::max(samp_gap, g);
    samp_fail += g > 1e-3;
  }
  const bool pass = block < 1e-8 && exact < 1e-9 && interlace >= -1e-12 && opt_gap <= 1e-7 && samp_fail == 0;
  return {pass, "block " + fmt("%.2e", block) + ", items " + fmt("%.2e", exact) + ", interlacing slack " +
                    fmt("%.2e", interlace) + ", optimizer gap " + fmt("%.2e", opt_gap) + ", sampler gap max " +
                    fmt("%.2e", samp_gap) + " (" + std::to_string(samp_fail) + "/1000 cases above 1e-3)"};
}

Verdict kperp_closed_form() {
  double excess = -1e300, attain = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::uint64_t seed = derive_seed(kDefaultVerifySeed, 4, i);
    const CurvatureOperator r = random_curvature(seed);
    const KperpExtremes cf = kperp_extremes_closed_form(r);
    const double smax = extremes_sample(r, Quantity::Biorthogonal, Target::Max, 10000, seed).value;
    const double smin = extremes_sample(r, Quantity::Biorthogonal, Target::Min, 10000, seed).value;
    excess = std::max({excess, smax - cf.max.value, cf.min.value - smin});
    const double omax = extremes_optimize(r, Quantity::Biorthogonal, Target::Max).value;
    const double omin = extremes_optimize(r, Quantity::Biorthogonal, Target::Min).value;
    attain = std::max({attain, std::abs(omax - cf.max.value), std::abs(omin - cf.min.value)});
  }
  return {excess <= 1e-9 && attain <= 1e-8,
          "largest sample excess " + fmt("%.2e", excess) + ", optimizer gap " + fmt("%.2e", attain)};
}

Verdict det_bound_suite() {
  std::size_t violations = 0;
  double resid = 0.0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const Mat3 w = random_traceless3(derive_seed(kDefaultVerifySeed, 5, i));
    const DetBoundReport rep = det_bound(w);
    violations += !rep.holds;
    resid = std::max(resid, rep.identity_residual);
  }
  return {violations == 0 && resid <= 1e-9,
          std::to_string(violations) + " violations, identity residual " + fmt("%.2e", resid)};
}

Verdict suite_outcome(const std::string& name, std::size_t n, const std::function<bool(const SuiteResult&)>& extra,
                      const std::string& detail_keys) {
  VerifyOptions o;
  o.n = n;
  const SuiteResult r = run_suite(name, o);
  std::ostringstream os;
  os << r.cases << " cases, " << r.falsifications << " falsifications";
  std::istringstream keys(detail_keys);
  std::string k;
  while (keys >> k) os << ", " << k << " " << fmt("%.3g", r.metric(k));
  return {r.falsifications == 0 && extra(r), os.str()};
}

Verdict corollary_checks() {
  const CurvatureOperator prod = model_curvature(ModelKind::ProductS2S2).curvature;
  std::size_t grid = 0, passes = 0;
  for (PinchMode mode : {PinchMode::Biorthogonal, PinchMode::Sectional}) {
    for (int i = 0; i <= 80; ++i) {
      SpectralContext ctx;
      ctx.lambda1 = 0.1 * std::pow(10.0, i * 0.05);
      ctx.k = 1.0;
      const PinchReport rep = check_conditions(prod, ctx, mode);
      ++grid;
      for (const auto& c : rep.conditions) passes += c.pass;
    }
  }
  const CurvatureOperator cp2 = model_with_scalar(ModelKind::CP2, 4.0).curvature;
  SpectralContext ctx;
  ctx.lambda1 = 4.0 / 3.0;
  ctx.k = 1.0;
  const PinchReport c = check_conditions(cp2, ctx, PinchMode::Biorthogonal, {2});
  const double margin = c.conditions[0].threshold - c.conditions[0].measured;
  const bool pass = passes == 0 && c.conditions[0].pass && std::abs(margin - 1.0 / 6.0) < 1e-12 &&
                    (ricci_contract(cp2).matrix - Mat4::Identity()).norm() < 1e-12;
  return {pass, "product: " + std::to_string(passes) + " passing conditions over " + std::to_string(grid) +
                    " (mode, lambda1) points; CP2 margin - 1/6 = " + fmt("%.2e", margin - 1.0 / 6.0)};
}

Verdict einstein_pipeline() {
  const EinsteinReport rep = positive_intersection_contradiction(1.0);
  const double beta_err = std::abs(rep.beta - (7.0 - std::sqrt(105.0)) / 28.0);
  const double c_err = std::abs(rep.euler_bound_coeff - 3.44091);
  double gap = 0.0;
  for (double s : {1.0, 4.0, 12.0, 30.0}) {
    for (ModelKind k : {ModelKind::CP2, ModelKind::ProductS2S2}) {
      const WeylGapReport w = weyl_gap_check(model_with_scalar(k, s).curvature);
      gap = std::max(gap, std::abs(w.residual));
    }
  }
  return {beta_err < 1e-12 && c_err <= 1e-4 && rep.contradiction && gap < 1e-10,
          "beta error " + fmt("%.2e", beta_err) + ", c = " + fmt("%.6f", rep.euler_bound_coeff) +
              ", contradiction " + (rep.contradiction ? "true" : "false") + ", |W+|^2 - S^2/24 " + fmt("%.2e", gap)};
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  status = pclose(pipe.release());
  return out;
}

Verdict determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no curv4 executable given"};
  const std::string cmd = "env -u CURV4_SEED '" + cli + "' verify 2>/dev/null";
  int s1 = 0, s2 = 0;
  const std::string a = run_capture(cmd, s1);
  const std::string b = run_capture(cmd, s2);
  const bool same = !a.empty() && a == b;
  return {same && s1 == 0 && s2 == 0, std::to_string(a.size()) + " bytes, " + (same ? "identical" : "different") +
                                          ", exit statuses " + std::to_string(s1) + "/" + std::to_string(s2)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"model-space invariants", model_invariants},
      {"decomposition round-trip", decomposition_roundtrip},
      {"Berger normal form", berger_normal_form_check},
      {"closed-form K-perp extremes", kperp_closed_form},
      {"determinant bound suite", det_bound_suite},
      {"delta inequalities suite",
       [] {
         return suite_outcome(
             "lemma25", 10000, [](const SuiteResult& r) { return r.metric("equality_family_product") < 1e-9; },
             "min_slack equality_family_product");
       }},
      {"K-perp implication suite",
       [] {
         return suite_outcome(
             "lemma27", 10000,
             [](const SuiteResult& r) {
               return r.metric("accepted_branch1") == 10000 && r.metric("accepted_branch2") == 10000 &&
                      r.metric("accepted_branch3") == 10000;
             },
             "min_margin_branch1 min_margin_branch2 min_margin_branch3");
       }},
      {"discriminant certificates",
       [] {
         return suite_outcome(
             "certificate", 10000,
             [](const SuiteResult& r) {
               return r.metric("accepted") == 10000 && r.metric("min_lead") > 0.0 &&
                      r.metric("max_disc_quadratic") <= 1e-10 && r.metric("max_disc_final") <= 1e-10;
             },
             "min_lead max_disc_quadratic max_disc_final near_boundary");
       }},
      {"pinching checks on model spaces", corollary_checks},
      {"Einstein pipeline", einstein_pipeline},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria pass\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
