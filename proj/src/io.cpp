#include "curv4/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace curv4 {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <int R, int C>
json matrix_json(const Eigen::Matrix<double, R, C>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <int N>
json vector_json(const Eigen::Matrix<double, N, 1>& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

void write_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void write_value(std::string& out, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line so matrices read row by row.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write_value(out, v, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::optional<double> opt_number(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  if (!doc[key].is_number()) parse_error(std::string("member '") + key + "' must be a number");
  return doc[key].get<double>();
}

}  // namespace

TensorFile tensor_from_json(const json& doc) {
  if (!doc.is_object()) parse_error("tensor document must be a JSON object");
  if (doc.contains("basis")) {
    if (!doc["basis"].is_string() || doc["basis"].get<std::string>() != "lex-eij")
      parse_error("unsupported basis (expected \"lex-eij\")");
  }
  if (!doc.contains("matrix")) parse_error("missing member 'matrix'");
  const json& m = doc["matrix"];
  if (!m.is_array() || m.size() != 6) parse_error("'matrix' must be a 6 x 6 array");
  Mat6 mat;
  for (int i = 0; i < 6; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 6) parse_error("'matrix' must be a 6 x 6 array");
    for (int j = 0; j < 6; ++j) {
      const json& x = row[static_cast<std::size_t>(j)];
      if (!x.is_number()) parse_error("matrix entries must be numbers");
      mat(i, j) = x.get<double>();
    }
  }
  TensorFile out;
  if (const auto t = opt_number(doc, "tolerance")) {
    if (!(*t > 0.0)) parse_error("'tolerance' must be positive");
    out.tolerance = *t;
  }
  out.curvature = CurvatureOperator(mat, out.tolerance);
  out.volume = opt_number(doc, "volume");
  if (doc.contains("quotient_factor")) {
    if (!doc["quotient_factor"].is_number_integer()) parse_error("'quotient_factor' must be an integer");
    out.quotient_factor = doc["quotient_factor"].get<int>();
  }
  if (doc.contains("metadata")) {
    out.metadata = doc["metadata"];
    if (out.metadata.is_object()) {
      if (!out.volume) out.volume = opt_number(out.metadata, "volume");
      if (!doc.contains("quotient_factor") && out.metadata.contains("quotient_factor")) {
        if (!out.metadata["quotient_factor"].is_number_integer())
          parse_error("'metadata.quotient_factor' must be an integer");
        out.quotient_factor = out.metadata["quotient_factor"].get<int>();
      }
    }
  }
  return out;
}

TensorFile load_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error("invalid JSON in '" + path + "': " + e.what());
  }
  return tensor_from_json(doc);
}

json tensor_to_json(const CurvatureOperator& r) {
  json out;
  out["basis"] = "lex-eij";
  out["matrix"] = to_json(r.matrix());
  return out;
}

json model_to_json(const ModelSpace& m) {
  json out = tensor_to_json(m.curvature);
  json meta;
  meta["kind"] = to_string(m.kind);
  json params = json::object();
  for (const auto& [k, v] : m.params) params[k] = v;
  meta["params"] = params;
  meta["volume"] = m.volume;
  meta["quotient_factor"] = m.quotient_factor;
  meta["lambda1"] = m.lambda1 ? json(*m.lambda1) : json(nullptr);
  meta["known_invariants"] = {{"chi", m.known_chi}, {"tau", m.known_tau}};
  out["metadata"] = meta;
  return out;
}

std::string dump(const json& j, int indent) {
  std::string out;
  write_value(out, j, indent, 0);
  return out;
}

json to_json(const Mat3& m) { return matrix_json(m); }
json to_json(const Mat4& m) { return matrix_json(m); }
json to_json(const Mat6& m) { return matrix_json(m); }
json to_json(const Vec3& v) { return vector_json(v); }
json to_json(const Vec4& v) { return vector_json(v); }
json to_json(const Vec6& v) { return vector_json(v); }

json to_json(const Plane& p) { return {{"u", to_json(p.u())}, {"v", to_json(p.v())}}; }

json to_json(const ExtremeResult& e) {
  json out;
  out["value"] = e.value;
  out["method"] = to_string(e.method);
  out["witness"] = to_json(e.witness);
  out["iterations"] = e.iterations;
  out["converged"] = e.converged;
  if (e.method == Method::Optimize) out["unconverged_restarts"] = e.unconverged_restarts;
  if (e.certificate) out["certificate"] = *e.certificate;
  return out;
}

json to_json(const BergerNormalForm& nf) {
  json out;
  out["a"] = to_json(nf.a);
  out["b"] = to_json(nf.b);
  const auto& p = nf.frame.p;
  const auto& q = nf.frame.q;
  out["p"] = {p.w(), p.x(), p.y(), p.z()};
  out["q"] = {q.w(), q.x(), q.y(), q.z()};
  out["frame"] = to_json(nf.frame.matrix);
  return out;
}

json to_json(const NormalFormReport& r) {
  json out;
  out["block_residual"] = r.block_residual;
  out["entry_residual"] = r.entry_residual;
  out["w1414"] = r.w1414;
  out["w2323"] = r.w2323;
  out["sum_residual"] = r.sum_residual;
  out["interlacing_slack"] = r.interlacing_slack;
  out["spectrum_residual"] = r.spectrum_residual;
  out["min_optimized"] = r.min_optimized;
  out["max_optimized"] = r.max_optimized;
  out["min_gap_optimized"] = r.min_gap_optimized;
  out["max_gap_optimized"] = r.max_gap_optimized;
  if (r.sampled) {
    out["min_sampled"] = r.min_sampled;
    out["max_sampled"] = r.max_sampled;
    out["min_gap_sampled"] = r.min_gap_sampled;
    out["max_gap_sampled"] = r.max_gap_sampled;
  }
  out["ok"] = r.ok;
  return out;
}

json to_json(const PinchReport& r) {
  json out;
  out["mode"] = to_string(r.mode);
  out["S"] = r.scalar;
  out["lambda1"] = r.lambda1;
  out["k"] = r.k ? json(*r.k) : json(nullptr);
  out["kmin"] = r.kmin;
  out["kmax"] = r.kmax;
  json conds = json::array();
  for (const auto& c : r.conditions) {
    json e;
    e["id"] = c.id;
    e["direction"] = c.direction;
    e["measured"] = c.measured;
    e["threshold"] = c.threshold;
    if (c.ricci_min) {
      e["ricci_min"] = *c.ricci_min;
      e["ricci_ok"] = *c.ricci_ok;
    }
    e["pass"] = c.pass;
    conds.push_back(e);
  }
  out["conditions"] = conds;
  out["any_pass"] = r.any_pass;
  return out;
}

json to_json(const LemmaBoundsReport& r) {
  json out;
  out["delta"] = r.delta;
  out["S"] = r.scalar;
  out["lambda3_plus"] = r.l3_plus;
  out["lambda3_minus"] = r.l3_minus;
  out["slack"] = {r.slack1, r.slack2, r.slack3};
  out["holds"] = r.holds;
  out["equality"] = {r.equality2, r.equality3};
  out["weyl_product"] = r.weyl_product;
  out["weyl_product_zero"] = r.weyl_product_zero;
  return out;
}

json to_json(const DetBoundReport& r) {
  json out;
  out["lambda"] = to_json(r.lambda);
  out["det"] = r.det;
  out["norm2"] = r.norm2;
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["identity_residual"] = r.identity_residual;
  out["holds"] = r.holds;
  out["equality"] = r.equality;
  return out;
}

json to_json(const Lemma27Report& r) {
  json out;
  out["S"] = r.scalar;
  out["kperp_min"] = r.kperp_min;
  out["kperp_max"] = r.kperp_max;
  out["hypotheses"] = {r.hypotheses[0], r.hypotheses[1], r.hypotheses[2]};
  if (r.ricci_min) out["ricci_min"] = *r.ricci_min;
  out["applicable"] = r.applicable;
  out["threshold"] = r.threshold;
  out["margin"] = r.margin;
  out["conclusion"] = r.applicable ? json(r.conclusion) : json("not-applicable");
  return out;
}

json to_json(const CertificateReport& r) {
  json out;
  out["flavor"] = to_string(r.flavor);
  out["alpha"] = r.alpha;
  out["kato"] = r.kato;
  out["kato_coefficient"] = r.kato_coefficient;
  out["delta"] = r.delta;
  out["threshold"] = r.threshold;
  out["lead_minus"] = r.lead_minus;
  out["lead_plus"] = r.lead_plus;
  if (r.lead_det) out["lead_det"] = *r.lead_det;
  out["disc_quadratic"] = r.disc_quadratic;
  out["disc_chain"] = r.disc_chain;
  out["disc_final"] = r.disc_final;
  out["outcome"] = to_string(r.outcome);
  return out;
}

json to_json(const WeylGapReport& r) {
  json out;
  out["interpretation"] = r.interpretation;
  out["S"] = r.scalar;
  out["wplus_norm2"] = r.wplus_norm2;
  out["bound"] = r.bound;
  out["residual"] = r.residual;
  out["applicable"] = r.applicable;
  out["holds"] = r.holds;
  out["equality"] = r.equality;
  return out;
}

json to_json(const EinsteinReport& r) {
  json out;
  out["alpha"] = r.alpha;
  out["beta"] = r.beta;
  out["euler_bound_coeff"] = r.euler_bound_coeff;
  out["two_minus_four_over_c"] = r.ratio;
  out["contradiction"] = r.contradiction;
  json chain = json::array();
  for (const auto& e : r.chain) chain.push_back({{"name", e.name}, {"value", e.value}});
  out["chain"] = chain;
  return out;
}

json to_json(const InvariantReport& r) {
  json out;
  out["S"] = r.scalar;
  out["volume"] = r.volume;
  out["quotient_factor"] = r.quotient_factor;
  out["gb_integrand"] = r.gb_integrand;
  out["signature_integrand"] = r.signature_integrand;
  out["chi"] = r.chi;
  out["tau"] = r.tau;
  out["weyl_norms"] = {r.wplus_norm2, r.wminus_norm2};
  out["ricci0_norm2"] = r.ricci0_norm2;
  out["isotropic_nonneg"] = r.isotropic_nonneg;
  return out;
}

}  // namespace curv4
