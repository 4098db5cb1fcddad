// curv4: command-line front end for the curvature library.
//
// Exit codes: 0 success or pass, 1 semantic failure (a condition fails, a
// cross-check gap is too large, a suite finds a counterexample), 2 invalid
// input.

#include "curv4/io.hpp"
#include "curv4/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace curv4;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CURV4_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, std::string("CURV4_SEED is not an integer: ") + env);
    }
  }
  return kDefaultVerifySeed;
}

struct InputOptions {
  std::string file;
  std::string catalog;
  std::vector<std::string> params;
  std::string scale;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  double validation_tol = tol::kValidation;
  double gap_tol = 1e-6;
  std::string format = "json";
  std::string output;
};

struct ResolvedInput {
  CurvatureOperator curvature;
  std::optional<double> volume;
  int quotient_factor = 1;
  std::optional<ModelSpace> model;
  json echo;
};

std::pair<std::string, double> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::BadParams, "expected key=value, got '" + s + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(s.substr(eq + 1), &used);
    if (used != s.size() - eq - 1) throw std::invalid_argument("trailing");
    return {s.substr(0, eq), v};
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParams, "value in '" + s + "' is not a number");
  }
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
  auto* file = cmd->add_option("-i,--input", in.file, "Tensor JSON file");
  auto* cat = cmd->add_option("-c,--catalog", in.catalog, "Catalog model: sphere4, rp4, cp2, product_s2s2");
  file->excludes(cat);
  cmd->add_option("-p,--param", in.params, "Catalog parameter key=value (r, r1, r2, S)")->needs(cat);
  cmd->add_option("--scale", in.scale, "Rescale: S=<scalar curvature> or c=<factor>")->needs(cat);
}

void add_global_options(CLI::App* cmd, GlobalOptions& g) {
  cmd->add_option("--seed", g.seed, "Base seed (default: CURV4_SEED or the built-in constant)");
  cmd->add_option("--samples", g.samples, "Grassmannian samples for sampler cross-checks");
  cmd->add_option("--tol", g.validation_tol, "Symmetry/Bianchi validation tolerance");
  cmd->add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("-o,--output", g.output, "Write to a file instead of stdout");
}

ResolvedInput resolve_input(const InputOptions& in, const GlobalOptions& g) {
  ResolvedInput out;
  if (!in.file.empty()) {
    TensorFile tf = load_tensor_file(in.file);
    if (tf.tolerance > g.validation_tol) {
      // Stricter of the file tolerance and the command-line one.
      tf.curvature = CurvatureOperator(tf.curvature.matrix(), g.validation_tol);
    }
    out.curvature = tf.curvature;
    out.volume = tf.volume;
    out.quotient_factor = tf.quotient_factor;
    out.echo = {{"file", in.file}};
    return out;
  }
  if (in.catalog.empty()) throw Error(ErrorCode::BadParams, "one of --input or --catalog is required");
  const ModelKind kind = parse_model_kind(in.catalog);
  std::map<std::string, double> params;
  for (const auto& p : in.params) params.insert(split_assignment(p));
  ModelSpace m = model_curvature(kind, params);
  if (!in.scale.empty()) {
    const auto [key, value] = split_assignment(in.scale);
    if (key == "S") {
      m = model_with_scalar(kind, value, params);
    } else if (key == "c") {
      m = m.scaled(value);
    } else {
      throw Error(ErrorCode::BadParams, "--scale expects S=<value> or c=<value>");
    }
  }
  out.curvature = m.curvature;
  out.volume = m.volume;
  out.quotient_factor = m.quotient_factor;
  out.model = m;
  json params_json = json::object();
  for (const auto& [k, v] : m.params) params_json[k] = v;
  out.echo = {{"catalog", to_string(kind)}, {"params", params_json}};
  if (!in.scale.empty()) out.echo["scale"] = in.scale;
  return out;
}

json config_echo(const std::string& command, const GlobalOptions& g, const json& input) {
  json c;
  c["command"] = command;
  c["seed"] = g.seed;
  c["samples"] = g.samples;
  c["tolerances"] = {{"validation", g.validation_tol}, {"cross_check_gap", g.gap_tol}};
  if (!input.is_null()) c["input"] = input;
  return c;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array() && !j.empty() && j.front().is_structured()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    std::string s = dump(j, -1);
    rows.emplace_back(prefix, s);
  }
}

std::string render(const json& envelope, const GlobalOptions& g) {
  if (g.format == "json") return dump(envelope) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(envelope, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width + 2 - k.size(), ' ') + v + "\n";
  return out;
}

void emit(const std::string& text, const GlobalOptions& g) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadParams, "cannot write '" + g.output + "'");
  f << text;
}

json envelope(const std::string& command, const GlobalOptions& g, const json& input, json result) {
  json e;
  e["config"] = config_echo(command, g, input);
  e["result"] = std::move(result);
  return e;
}

// --- subcommands ------------------------------------------------------------

int cmd_decompose(const InputOptions& in, const GlobalOptions& g) {
  const ResolvedInput ri = resolve_input(in, g);
  const CurvatureOperator& r = ri.curvature;
  const CurvatureDecomposition d = decompose(r);
  const RicciTensor ric = ricci_contract(r);
  const WeylBlocks w = weyl_blocks(r);
  json res;
  res["S"] = d.scalar;
  res["ricci"] = to_json(ric.matrix);
  res["ricci_traceless"] = to_json(ric.traceless());
  res["wplus"] = to_json(w.wplus);
  res["wminus"] = to_json(w.wminus);
  res["wplus_spectrum"] = to_json(w.lambda_plus);
  res["wminus_spectrum"] = to_json(w.lambda_minus);
  res["norms"] = {{"scalar_part", d.scalar_part.matrix().norm()},
                  {"ricci_part", d.ricci_part.matrix().norm()},
                  {"weyl_part", d.weyl_part.matrix().norm()},
                  {"wplus", std::sqrt(w.norm2_plus())},
                  {"wminus", std::sqrt(w.norm2_minus())}};
  const double orth = std::max({std::abs(frobenius(d.scalar_part, d.ricci_part)),
                                std::abs(frobenius(d.scalar_part, d.weyl_part)),
                                std::abs(frobenius(d.ricci_part, d.weyl_part))});
  res["residuals"] = {
      {"symmetry", symmetry_residual(r.matrix())},
      {"bianchi", bianchi_residual(r.matrix())},
      {"orthogonality", orth},
      {"reconstruction", ((d.scalar_part + d.ricci_part + d.weyl_part).matrix() - r.matrix()).cwiseAbs().maxCoeff()},
      {"weyl_ricci", ricci_contract(d.weyl_part).matrix.cwiseAbs().maxCoeff()}};
  emit(render(envelope("decompose", g, ri.echo, res), g), g);
  return kExitOk;
}

int cmd_extremes(const InputOptions& in, GlobalOptions g, const std::string& method) {
  const ResolvedInput ri = resolve_input(in, g);
  const CurvatureOperator& r = ri.curvature;
  OptimizeOptions oo;
  oo.seed = derive_seed(g.seed, 0x4f5054, 0);
  const KperpExtremes cf = kperp_extremes_closed_form(r);
  const ExtremeResult kmin = extremes_optimize(r, Quantity::Sectional, Target::Min, oo);
  const ExtremeResult kmax = extremes_optimize(r, Quantity::Sectional, Target::Max, oo);
  const ExtremeResult pmin = extremes_optimize(r, Quantity::Biorthogonal, Target::Min, oo);
  const ExtremeResult pmax = extremes_optimize(r, Quantity::Biorthogonal, Target::Max, oo);

  json res;
  res["method"] = method;
  res["kmin"] = to_json(kmin);
  res["kmax"] = to_json(kmax);
  res["kperp_min"] = to_json(pmin);
  res["kperp_max"] = to_json(pmax);
  res["closed_form"] = {{"kperp_min", to_json(cf.min)}, {"kperp_max", to_json(cf.max)}};

  // The optimizer against the closed form gates the exit code.
  const double gap = std::max(std::abs(pmin.value - cf.min.value), std::abs(pmax.value - cf.max.value));
  json gaps = {{"kperp_optimize_vs_closed_form", gap}};
  bool ok = gap <= g.gap_tol;
  json warnings = json::array();
  for (const auto* e : {&kmin, &kmax, &pmin, &pmax})
    if (!e->converged || e->unconverged_restarts > 0)
      warnings.push_back("optimizer: " + std::to_string(e->unconverged_restarts) + " restart(s) hit the iteration cap");

  if (method == "sample") {
    const std::uint64_t s = derive_seed(g.seed, 0x534d50, 0);
    const ExtremeResult skmin = extremes_sample(r, Quantity::Sectional, Target::Min, g.samples, s);
    const ExtremeResult skmax = extremes_sample(r, Quantity::Sectional, Target::Max, g.samples, s);
    const ExtremeResult spmin = extremes_sample(r, Quantity::Biorthogonal, Target::Min, g.samples, s);
    const ExtremeResult spmax = extremes_sample(r, Quantity::Biorthogonal, Target::Max, g.samples, s);
    res["sampled"] = {{"kmin", to_json(skmin)},
                      {"kmax", to_json(skmax)},
                      {"kperp_min", to_json(spmin)},
                      {"kperp_max", to_json(spmax)}};
    // Resolution gaps of the sampler (>= 0 up to roundoff); informational.
    gaps["sample_kmin"] = skmin.value - kmin.value;
    gaps["sample_kmax"] = kmax.value - skmax.value;
    gaps["sample_kperp_min"] = spmin.value - cf.min.value;
    gaps["sample_kperp_max"] = cf.max.value - spmax.value;
    // A sampled plane beating an exact extreme is a real inconsistency.
    const double overshoot = -std::min({gaps["sample_kmin"].get<double>(), gaps["sample_kmax"].get<double>(),
                                        gaps["sample_kperp_min"].get<double>(),
                                        gaps["sample_kperp_max"].get<double>()});
    gaps["sample_overshoot"] = std::max(0.0, overshoot);
    ok = ok && overshoot <= 1e-9;
  }
  res["gaps"] = gaps;
  res["warnings"] = warnings;
  res["ok"] = ok;
  emit(render(envelope("extremes", g, ri.echo, res), g), g);
  return ok ? kExitOk : kExitFail;
}

std::vector<int> parse_conditions(const std::string& s) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok != "1" && tok != "2" && tok != "3" && tok != "4")
      throw Error(ErrorCode::BadParams, "conditions must be a comma list drawn from 1,2,3,4");
    out.push_back(tok[0] - '0');
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_check(const InputOptions& in, const GlobalOptions& g, double lambda1, std::optional<double> k,
              const std::string& conditions, const std::string& mode) {
  const ResolvedInput ri = resolve_input(in, g);
  SpectralContext ctx;
  ctx.lambda1 = lambda1;
  ctx.k = k;
  const PinchReport rep = check_conditions(ri.curvature, ctx, parse_pinch_mode(mode), parse_conditions(conditions));
  json echo = ri.echo;
  echo["lambda1"] = lambda1;
  echo["k"] = k ? json(*k) : json(nullptr);
  echo["conditions"] = conditions;
  echo["mode"] = mode;
  emit(render(envelope("check", g, echo, to_json(rep)), g), g);
  return rep.any_pass ? kExitOk : kExitFail;
}

int cmd_invariants(const InputOptions& in, const GlobalOptions& g) {
  const ResolvedInput ri = resolve_input(in, g);
  if (!ri.volume) throw Error(ErrorCode::BadParams, "invariants need a volume (catalog entry or \"volume\" in the file)");
  json res = to_json(invariants(ri.curvature, *ri.volume, ri.quotient_factor));
  if (ri.model) res["known"] = {{"chi", ri.model->known_chi}, {"tau", ri.model->known_tau}};
  emit(render(envelope("invariants", g, ri.echo, res), g), g);
  return kExitOk;
}

int cmd_einstein(const GlobalOptions& g, double alpha) {
  const EinsteinReport rep = positive_intersection_contradiction(alpha);
  emit(render(envelope("einstein", g, json{{"alpha", alpha}}, to_json(rep)), g), g);
  return kExitOk;
}

int cmd_export(const InputOptions& in, const GlobalOptions& g) {
  if (in.catalog.empty()) throw Error(ErrorCode::BadParams, "export needs --catalog");
  const ResolvedInput ri = resolve_input(in, g);
  emit(dump(model_to_json(*ri.model)) + "\n", g);
  return kExitOk;
}

int cmd_verify(const GlobalOptions& g, std::vector<std::string> suites, std::optional<std::size_t> n) {
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
  for (const auto& s : suites) default_cases(s);  // validates names up front
  VerifyOptions vo;
  vo.seed = g.seed;
  vo.n = n;
  vo.samples = g.samples;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SuiteResult> results;
  for (const auto& s : suites) {
    const auto ts = std::chrono::steady_clock::now();
    results.push_back(run_suite(s, vo));
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - ts).count();
    std::fprintf(stderr, "%-17s %.3f s\n", s.c_str(), dt);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "elapsed %.3f s\n", total);

  std::size_t falsified = 0;
  const SuiteResult* first = nullptr;
  for (const auto& r : results) {
    falsified += r.falsifications;
    if (!first && r.counterexample) first = &r;
  }
  if (g.format == "table") {
    std::string text = format_summary(results, vo);
    if (first) text += "counterexample (" + first->name + "):\n" + dump(*first->counterexample) + "\n";
    emit(text, g);
  } else {
    json res = json::array();
    for (const auto& r : results) {
      json m = json::object();
      for (const auto& metric : r.metrics) m[metric.name] = metric.value;
      json s = {{"suite", r.name}, {"cases", r.cases}, {"falsifications", r.falsifications}, {"metrics", m}};
      if (r.counterexample) s["counterexample"] = *r.counterexample;
      res.push_back(s);
    }
    json echo = {{"suites", suites}, {"n", n ? json(*n) : json(nullptr)}};
    emit(render(envelope("verify", g, echo, {{"suites", res}, {"falsifications", falsified}}), g), g);
  }
  return falsified == 0 ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointwise curvature algebra in dimension four"};
  app.require_subcommand(1);

  InputOptions in;
  GlobalOptions g;
  try {
    g.seed = default_seed();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  auto* decompose_cmd = app.add_subcommand("decompose", "Scalar, Ricci and Weyl parts with W+- spectra");
  add_input_options(decompose_cmd, in);
  add_global_options(decompose_cmd, g);

  std::string method = "optimize";
  auto* extremes_cmd = app.add_subcommand("extremes", "Sectional and biorthogonal curvature extremes");
  add_input_options(extremes_cmd, in);
  add_global_options(extremes_cmd, g);
  extremes_cmd->add_option("--method", method, "Cross-check method")->check(CLI::IsMember({"optimize", "sample"}));
  extremes_cmd->add_option("--gap-tol", g.gap_tol, "Largest accepted optimizer vs closed-form gap");

  double lambda1 = 0.0;
  std::optional<double> k;
  std::string conditions = "1,2,3,4";
  std::string mode = "biorthogonal";
  auto* check_cmd = app.add_subcommand("check", "Pinching conditions against a first eigenvalue");
  add_input_options(check_cmd, in);
  add_global_options(check_cmd, g);
  check_cmd->add_option("--lambda1", lambda1, "First nonzero Laplace eigenvalue")->required();
  check_cmd->add_option("--k", k, "Lower Ricci bound (condition 2)");
  check_cmd->add_option("--conditions", conditions, "Comma list drawn from 1,2,3,4");
  check_cmd->add_option("--mode", mode, "biorthogonal or sectional")
      ->check(CLI::IsMember({"biorthogonal", "sectional"}));

  auto* invariants_cmd = app.add_subcommand("invariants", "Euler characteristic and signature of homogeneous data");
  add_input_options(invariants_cmd, in);
  add_global_options(invariants_cmd, g);

  std::vector<std::string> suites;
  std::optional<std::size_t> n;
  auto* verify_cmd = app.add_subcommand("verify", "Seeded property suites");
  add_global_options(verify_cmd, g);
  g.format = "table";
  verify_cmd->add_option("--suite", suites, "Suite name (repeatable) or 'all'");
  verify_cmd->add_option("-n", n, "Cases per suite");

  double alpha = 1.0;
  auto* einstein_cmd = app.add_subcommand("einstein", "Einstein pipeline for K <= 1 normalized to Rc = g");
  add_global_options(einstein_cmd, g);
  einstein_cmd->add_option("--alpha", alpha, "Upper sectional curvature bound");

  auto* export_cmd = app.add_subcommand("export", "Catalog entry as a tensor JSON document");
  add_input_options(export_cmd, in);
  add_global_options(export_cmd, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  // The table default only applies to verify.
  if (!verify_cmd->parsed() && verify_cmd->count("--format") == 0) {
    bool explicit_format = false;
    for (auto* c : app.get_subcommands()) explicit_format = explicit_format || c->count("--format") > 0;
    if (!explicit_format) g.format = "json";
  }

  try {
    if (decompose_cmd->parsed()) return cmd_decompose(in, g);
    if (extremes_cmd->parsed()) return cmd_extremes(in, g, method);
    if (check_cmd->parsed()) return cmd_check(in, g, lambda1, k, conditions, mode);
    if (invariants_cmd->parsed()) return cmd_invariants(in, g);
    if (verify_cmd->parsed()) return cmd_verify(g, suites, n);
    if (einstein_cmd->parsed()) return cmd_einstein(g, alpha);
    if (export_cmd->parsed()) return cmd_export(in, g);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what();
    const bool has_residual = std::string(e.what()).find("residual") != std::string::npos;
    if (e.residual() != 0.0 && !has_residual) std::cerr << " (residual " << e.residual() << ")";
    std::cerr << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
