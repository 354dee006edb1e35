#include "lieherm/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace lieherm {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

cdouble parse_complex(const json& node, const std::string& where) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
      !node[1].is_number())
    throw ParseError("expected [re, im] pair for " + where);
  return {node[0].get<double>(), node[1].get<double>()};
}

Eigen::VectorXcd parse_cvector(const json& node, int m, const std::string& where) {
  if (!node.is_array() || static_cast<int>(node.size()) != m)
    throw ParseError(where + " must be an array of length n-1");
  Eigen::VectorXcd v(m);
  for (int i = 0; i < m; ++i) v(i) = parse_complex(node[i], where);
  return v;
}

Eigen::MatrixXcd parse_cmatrix(const json& node, int m, const std::string& where) {
  if (!node.is_array() || static_cast<int>(node.size()) != m)
    throw ParseError(where + " must be an (n-1) x (n-1) matrix");
  Eigen::MatrixXcd mat(m, m);
  for (int i = 0; i < m; ++i) {
    if (!node[i].is_array() || static_cast<int>(node[i].size()) != m)
      throw ParseError(where + " must be an (n-1) x (n-1) matrix");
    for (int j = 0; j < m; ++j) mat(i, j) = parse_complex(node[i][j], where);
  }
  return mat;
}

int parse_dim(const json& doc) {
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("instance needs an integer field \"n\"");
  const int n = doc["n"].get<int>();
  if (n < 1 || n > 16) throw ParseError("n out of supported range");
  return n;
}

StructureConstants parse_raw(const json& doc) {
  const int n = parse_dim(doc);
  const auto sz = static_cast<std::size_t>(n) * n * n;
  std::vector<cdouble> c(sz), d(sz);
  auto flat = [n](int a, int b, int cc) {
    return (static_cast<std::size_t>(a) * n + b) * n + cc;
  };

  std::map<std::array<int, 3>, cdouble> c_entries;
  if (doc.contains("C")) {
    for (const auto& e : doc["C"]) {
      const int k = e.at("k").get<int>(), i = e.at("i").get<int>(),
                j = e.at("j").get<int>();
      if (k < 1 || k > n || i < 1 || i > n || j < 1 || j > n)
        throw ParseError("C entry index out of range");
      const cdouble val{e.value("re", 0.0), e.value("im", 0.0)};
      if (i == j && std::abs(val) != 0.0)
        throw ParseError("C entry with repeated lower index must vanish");
      const std::array<int, 3> key{k, i, j};
      if (c_entries.count(key)) throw ParseError("duplicate C entry");
      c_entries[key] = val;
    }
    for (const auto& [key, val] : c_entries) {
      const std::array<int, 3> partner{key[0], key[2], key[1]};
      const auto it = c_entries.find(partner);
      if (it != c_entries.end() && key[1] < key[2] &&
          std::abs(it->second + val) != 0.0)
        throw ParseError("conflicting C orientations for the same entry");
      c[flat(key[0] - 1, key[1] - 1, key[2] - 1)] = val;
      if (it == c_entries.end())
        c[flat(key[0] - 1, key[2] - 1, key[1] - 1)] = -val;
    }
  }
  if (doc.contains("D")) {
    std::map<std::array<int, 3>, bool> seen;
    for (const auto& e : doc["D"]) {
      const int j = e.at("j").get<int>(), i = e.at("i").get<int>(),
                k = e.at("k").get<int>();
      if (k < 1 || k > n || i < 1 || i > n || j < 1 || j > n)
        throw ParseError("D entry index out of range");
      if (seen[{j, i, k}]) throw ParseError("duplicate D entry");
      seen[{j, i, k}] = true;
      d[flat(j - 1, i - 1, k - 1)] = {e.value("re", 0.0), e.value("im", 0.0)};
    }
  }
  return StructureConstants(n, std::move(c), std::move(d));
}

ordered_json complex_to_json(cdouble z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json cvector_to_json(const Eigen::VectorXcd& v) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

ordered_json cmatrix_to_json(const Eigen::MatrixXcd& m) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

ordered_json verdict_json(const Verdict& v, const std::string& criterion) {
  ordered_json out;
  out["value"] = v.value;
  out["residual"] = v.residual;
  out["criterion"] = criterion;
  return out;
}

}  // namespace

StructureConstants ParsedInstance::build(const Tolerance& tol) const {
  if (const auto* sc = raw()) return *sc;
  if (const auto* data = aa()) return build_almost_abelian(*data);
  return build_codim2(*c2(), tol);
}

ParsedInstance parse_instance(const json& doc) {
  if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string())
    throw ParseError("instance needs a string field \"format\"");
  const std::string format = doc["format"].get<std::string>();
  if (format == "raw") return {format, parse_raw(doc)};
  const int n = parse_dim(doc);
  const int m = n - 1;
  if (n < 2) throw ParseError(format + " instances need n >= 2");
  if (doc.contains("lambda") && !doc["lambda"].is_number())
    throw ParseError("\"lambda\" must be a real number");
  const double lambda = doc.value("lambda", 0.0);  // omitted entries are zero
  const Eigen::VectorXcd v = doc.contains("v")
                                 ? parse_cvector(doc["v"], m, "v")
                                 : Eigen::VectorXcd::Zero(m).eval();
  if (format == "almost_abelian") {
    AlmostAbelianData data;
    data.n = n;
    data.lambda = lambda;
    data.v = v;
    data.A = doc.contains("A") ? parse_cmatrix(doc["A"], m, "A")
                               : Eigen::MatrixXcd::Zero(m, m).eval();
    return {format, data};
  }
  if (format == "codim2") {
    Codim2Data data;
    data.n = n;
    data.lambda = lambda;
    data.v = v;
    data.X = doc.contains("X") ? parse_cmatrix(doc["X"], m, "X")
                               : Eigen::MatrixXcd::Zero(m, m).eval();
    data.Y = doc.contains("Y") ? parse_cmatrix(doc["Y"], m, "Y")
                               : Eigen::MatrixXcd::Zero(m, m).eval();
    data.Z = doc.contains("Z") ? parse_cmatrix(doc["Z"], m, "Z")
                               : Eigen::MatrixXcd::Zero(m, m).eval();
    return {format, data};
  }
  throw ParseError("unknown instance format \"" + format + "\"");
}

ParsedInstance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
  return parse_instance(doc);
}

ParsedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

nlohmann::ordered_json instance_to_json(const AlmostAbelianData& data) {
  ordered_json out;
  out["format"] = "almost_abelian";
  out["n"] = data.n;
  out["lambda"] = data.lambda;
  out["v"] = cvector_to_json(data.v);
  out["A"] = cmatrix_to_json(data.A);
  return out;
}

nlohmann::ordered_json instance_to_json(const Codim2Data& data) {
  ordered_json out;
  out["format"] = "codim2";
  out["n"] = data.n;
  out["lambda"] = data.lambda;
  out["v"] = cvector_to_json(data.v);
  out["X"] = cmatrix_to_json(data.X);
  out["Y"] = cmatrix_to_json(data.Y);
  out["Z"] = cmatrix_to_json(data.Z);
  return out;
}

nlohmann::ordered_json instance_to_json(const StructureConstants& sc) {
  ordered_json out;
  out["format"] = "raw";
  out["n"] = sc.dim();
  ordered_json centries = ordered_json::array();
  ordered_json dentries = ordered_json::array();
  const int n = sc.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i < j && std::abs(sc.C(k, i, j)) > 0.0) {
          ordered_json e;
          e["k"] = k + 1;
          e["i"] = i + 1;
          e["j"] = j + 1;
          e["re"] = sc.C(k, i, j).real();
          e["im"] = sc.C(k, i, j).imag();
          centries.push_back(e);
        }
        if (std::abs(sc.D(k, i, j)) > 0.0) {
          ordered_json e;
          e["j"] = k + 1;
          e["i"] = i + 1;
          e["k"] = j + 1;
          e["re"] = sc.D(k, i, j).real();
          e["im"] = sc.D(k, i, j).imag();
          dentries.push_back(e);
        }
      }
  out["C"] = centries;
  out["D"] = dentries;
  return out;
}

nlohmann::ordered_json unitary_to_json(const Eigen::MatrixXcd& u) {
  ordered_json out;
  out["format"] = "unitary";
  out["n"] = static_cast<int>(u.rows());
  out["U"] = cmatrix_to_json(u);
  return out;
}

nlohmann::ordered_json report_header(const Tolerance& tol) {
  ordered_json out;
  out["schema"] = "lieherm/1";
  out["tolerances"] = {{"abs", tol.abs}, {"rel", tol.rel}};
  return out;
}

nlohmann::ordered_json classify_report(const MetricReport& report,
                                       const Tolerance& tol) {
  ordered_json out = report_header(tol);
  out["kind"] = "metric_report";
  out["jacobi_residual"] = report.jacobi;
  out["unimodular"] =
      verdict_json({report.unimodular, report.residuals.at("unimodular")},
                   "sum_r(C^r_ri + D^r_ri) = 0 for all i");
  out["kahler"] = verdict_json({report.kahler, report.residuals.at("kahler")},
                               "d(omega) = 0");
  out["balanced"] =
      verdict_json({report.balanced, report.residuals.at("balanced")},
                   "d(omega^(n-1)) = 0");
  out["pluriclosed"] =
      verdict_json({report.pluriclosed, report.residuals.at("pluriclosed")},
                   "del dbar omega = 0");
  if (report.astheno_kahler.has_value())
    out["astheno_kahler"] = verdict_json(
        {*report.astheno_kahler, report.residuals.at("astheno_kahler")},
        "del dbar omega^(n-2) = 0");
  out["chern_kahler_like"] = verdict_json(
      {report.chern_kahler_like, report.residuals.at("chern_kahler_like")},
      "R_(i jbar k lbar) = R_(k jbar i lbar)");
  if (report.hs.has_value()) out["hermitian_symplectic"] = hs_report(*report.hs, tol);
  return out;
}

nlohmann::ordered_json hs_report(const HSOutcome& outcome, const Tolerance& tol) {
  ordered_json out = report_header(tol);
  out["kind"] = "hs_certificate";
  out["feasible"] = outcome.feasible;
  out["min_residual"] = outcome.min_residual;
  out["criterion"] = "exists skew-symmetric S with d(alpha + omega + conj(alpha)) = 0";
  if (outcome.certificate.has_value()) {
    out["S"] = cmatrix_to_json(outcome.certificate->S);
    out["system_residual"] = outcome.certificate->system_residual;
    out["closure_residual"] = outcome.certificate->closure_residual;
  }
  return out;
}

nlohmann::ordered_json pipeline_report(const PipelineReport& report,
                                       const Tolerance& tol) {
  ordered_json out = report_header(tol);
  out["kind"] = "pipeline_report";
  switch (report.family) {
    case FamilyKind::almost_abelian:
      out["family"] = "almost_abelian";
      break;
    case FamilyKind::codim2:
      out["family"] = "codim2";
      break;
    case FamilyKind::none:
      out["family"] = "unsupported";
      break;
  }
  if (report.aa.has_value()) out["instance"] = instance_to_json(*report.aa);
  if (report.c2.has_value()) out["instance"] = instance_to_json(*report.c2);
  out["jacobi_residual"] = report.jacobi;
  out["unimodular"] = verdict_json(report.unimodular,
                                   "sum_r(C^r_ri + D^r_ri) = 0 for all i");
  out["hermitian_symplectic"] = hs_report(report.hs, tol);
  if (report.deformation.has_value()) {
    ordered_json def;
    def["deformed"] = report.deformation->deformed;
    if (!report.deformation->deformed) def["reason"] = report.deformation->reason;
    if (report.deformation->result.has_value()) {
      const auto& res = *report.deformation->result;
      def["a"] = cvector_to_json(res.a);
      def["kahler_residual"] = res.kahler_residual;
      if (res.deformed_aa.has_value())
        def["deformed_data"] = instance_to_json(*res.deformed_aa);
      if (res.deformed_c2.has_value())
        def["deformed_data"] = instance_to_json(*res.deformed_c2);
      def["criterion"] = "v~ = 0 after the frame change, rebuilt torsion = 0";
    }
    out["deformation"] = def;
  }
  return out;
}

}  // namespace lieherm
