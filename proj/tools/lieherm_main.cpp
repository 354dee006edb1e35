// Command-line front end: classify metric classes, decide Hermitian-symplectic
// feasibility with certificates, run the constructive Kaehler deformation
// pipeline, generate seeded family instances, and run the invariant suites.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lieherm/chern.hpp"
#include "lieherm/deform.hpp"
#include "lieherm/instance_io.hpp"
#include "lieherm/invariant_forms.hpp"
#include "lieherm/metric_classes.hpp"

namespace {

using namespace lieherm;

int fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

nlohmann::ordered_json input_stanza(const std::string& path,
                                    const ParsedInstance& inst) {
  nlohmann::ordered_json in;
  in["path"] = path;
  in["format"] = inst.format;
  if (const auto* sc = inst.raw()) in["n"] = sc->dim();
  if (const auto* aa = inst.aa()) in["n"] = aa->n;
  if (const auto* c2 = inst.c2()) in["n"] = c2->n;
  return in;
}

int cmd_classify(const std::string& path, double tol_abs, bool with_hs) {
  const Tolerance tol{tol_abs, tol_abs};
  ParsedInstance inst = load_instance(path);
  const StructureConstants sc = inst.build(tol);
  const auto report = validate(sc);
  if (!report.ok()) throw ParseError("instance fails validation:\n" + report.to_string());
  auto doc = classify_report(classify(sc, tol, with_hs), tol);
  doc["input"] = input_stanza(path, inst);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_hs(const std::string& path, double tol_abs) {
  const Tolerance tol{tol_abs, tol_abs};
  ParsedInstance inst = load_instance(path);
  const StructureConstants sc = inst.build(tol);
  const auto outcome = hs_feasibility(sc, tol);
  auto doc = hs_report(outcome, tol);
  doc["input"] = input_stanza(path, inst);
  std::cout << doc.dump(2) << "\n";
  return outcome.feasible ? 0 : 1;
}

int cmd_deform(const std::string& path, double tol_abs) {
  const Tolerance tol{tol_abs, tol_abs};
  ParsedInstance inst = load_instance(path);
  PipelineReport report;
  if (const auto* aa = inst.aa())
    report = streets_tian_pipeline(*aa, tol);
  else if (const auto* c2 = inst.c2())
    report = streets_tian_pipeline(*c2, tol);
  else
    report = streets_tian_pipeline(*inst.raw(), tol);
  auto doc = pipeline_report(report, tol);
  doc["input"] = input_stanza(path, inst);
  std::cout << doc.dump(2) << "\n";
  if (report.family == FamilyKind::none)
    return fail("instance matches neither family pattern; deformation skipped");
  return report.deformation->deformed ? 0 : 1;
}

int cmd_gen(const std::string& kind_name, int n, std::uint64_t seed,
            const std::string& out_path) {
  GenKind kind;
  if (kind_name == "aa_generic") kind = GenKind::aa_generic;
  else if (kind_name == "aa_hs") kind = GenKind::aa_hs;
  else if (kind_name == "c2_generic") kind = GenKind::c2_generic;
  else if (kind_name == "c2_hs") kind = GenKind::c2_hs;
  else if (kind_name == "unitary") kind = GenKind::unitary;
  else return fail("unknown kind " + kind_name);

  const auto inst = gen_random(kind, n, seed);
  nlohmann::ordered_json doc;
  if (inst.aa.has_value()) doc = instance_to_json(*inst.aa);
  if (inst.c2.has_value()) doc = instance_to_json(*inst.c2);
  if (inst.unitary.has_value()) doc = unitary_to_json(*inst.unitary);
  doc["generator"] = {{"kind", kind_name}, {"n", n}, {"seed", seed}};

  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) return fail("cannot write " + out_path);
    out << doc.dump(2) << "\n";
  }
  return 0;
}

struct SuiteResult {
  std::string name;
  bool pass;
  std::string detail;
};

SuiteResult suite_d2(std::uint64_t seed) {
  double worst_jacobi = 0.0, worst_d2 = 0.0;
  for (int case_id = 0; case_id < 25; ++case_id) {
    const int n = 2 + (case_id % 5);
    const auto kind = (case_id % 2 == 0) ? GenKind::aa_generic : GenKind::c2_generic;
    const auto inst = gen_random(kind, n, seed + case_id);
    const auto sc = inst.aa.has_value() ? build_almost_abelian(*inst.aa)
                                        : build_codim2(*inst.c2);
    worst_jacobi = std::max(worst_jacobi, jacobi_residual(sc));
    const ExteriorDerivative ext(sc);
    for (int i = 0; i < n; ++i)
      worst_d2 = std::max(
          worst_d2,
          ext.d(ext.d(InvariantForm::basis_one_form(n, i, false))).max_norm());
  }
  const bool pass = worst_jacobi <= 1e-12 && worst_d2 <= 1e-9;
  return {"d2", pass,
          "max jacobi " + std::to_string(worst_jacobi) + ", max ||d2 phi|| " +
              std::to_string(worst_d2)};
}

SuiteResult suite_frame(std::uint64_t seed) {
  bool pass = true;
  const auto probe = build_almost_abelian(gen_random(GenKind::aa_hs, 3, seed).aa.value());
  const auto base = classify(probe, {}, true);
  for (int r = 0; r < 10 && pass; ++r) {
    const auto rotated = rotate_frame(probe, random_unitary(3, seed + 100 + r));
    const auto got = classify(rotated, {}, true);
    pass = got.kahler == base.kahler && got.balanced == base.balanced &&
           got.pluriclosed == base.pluriclosed &&
           got.hs->feasible == base.hs->feasible &&
           std::abs(got.hs->min_residual - base.hs->min_residual) < 1e-9;
  }
  return {"frame", pass, pass ? "verdicts invariant under rotations" : "drift"};
}

SuiteResult suite_ddbar(std::uint64_t seed) {
  double worst = 0.0;
  for (int case_id = 0; case_id < 20; ++case_id) {
    const int n = 2 + (case_id % 4);
    const auto kind = (case_id % 2 == 0) ? GenKind::aa_generic : GenKind::c2_generic;
    const auto inst = gen_random(kind, n, seed + 500 + case_id);
    const auto sc = inst.aa.has_value() ? build_almost_abelian(*inst.aa)
                                        : build_codim2(*inst.c2);
    worst = std::max(worst, ddbar_omega_identity_residual(sc));
  }
  return {"ddbar", worst <= 1e-8, "max identity residual " + std::to_string(worst)};
}

SuiteResult suite_characterization(std::uint64_t seed) {
  int disagreements = 0;
  for (int case_id = 0; case_id < 40; ++case_id) {
    const int n = 2 + (case_id % 5);
    if (case_id % 2 == 0) {
      const auto data = gen_random(GenKind::aa_generic, n, seed + case_id).aa.value();
      const auto sc = build_almost_abelian(data);
      const bool solver = hs_feasibility(sc).feasible;
      const bool formula = [&] {
        if (std::abs(data.lambda) > 1e-9) return false;
        if ((data.A + data.A.adjoint()).cwiseAbs().maxCoeff() > 1e-9) return false;
        const Eigen::VectorXcd x =
            data.A.completeOrthogonalDecomposition().solve(data.v);
        return (data.A * x - data.v).norm() <= 1e-9 * std::max(1.0, data.v.norm());
      }();
      if (solver != formula) ++disagreements;
    } else {
      const auto data = gen_random(GenKind::c2_generic, n, seed + case_id).c2.value();
      const auto sc = build_codim2(data);
      const bool solver = hs_feasibility(sc).feasible;
      const bool formula = [&] {
        if (data.lambda > 1e-9) return false;
        if (data.Z.cwiseAbs().maxCoeff() > 1e-9) return false;
        if ((data.X - data.Y).cwiseAbs().maxCoeff() > 1e-9) return false;
        const Eigen::MatrixXcd xs = data.X.adjoint();
        if ((xs * data.X - data.X * xs).cwiseAbs().maxCoeff() > 1e-9) return false;
        const Eigen::VectorXcd x =
            data.X.completeOrthogonalDecomposition().solve(data.v);
        return (data.X * x - data.v).norm() <= 1e-9 * std::max(1.0, data.v.norm());
      }();
      if (solver != formula) ++disagreements;
    }
  }
  return {"characterization", disagreements == 0,
          std::to_string(disagreements) + " disagreements"};
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<SuiteResult> results;
  if (suite == "all" || suite == "d2") results.push_back(suite_d2(seed));
  if (suite == "all" || suite == "frame") results.push_back(suite_frame(seed));
  if (suite == "all" || suite == "ddbar") results.push_back(suite_ddbar(seed));
  if (suite == "all" || suite == "characterization")
    results.push_back(suite_characterization(seed));
  if (results.empty()) return fail("unknown suite " + suite);

  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail
              << ")\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant Hermitian metric classes on Lie algebras"};
  app.require_subcommand(1);

  std::string path, out_path, kind = "aa_generic", suite = "all";
  double tol = 1e-9;
  int n = 3;
  std::uint64_t seed = 1;
  bool with_hs = false;

  auto* classify_cmd = app.add_subcommand("classify", "metric class report");
  classify_cmd->add_option("path", path, "instance file")->required();
  classify_cmd->add_option("--tol", tol, "absolute tolerance");
  classify_cmd->add_flag("--with-hs", with_hs, "include the feasibility certificate");

  auto* hs_cmd = app.add_subcommand("hs", "Hermitian-symplectic feasibility");
  hs_cmd->add_option("path", path, "instance file")->required();
  hs_cmd->add_option("--tol", tol, "absolute tolerance");

  auto* deform_cmd = app.add_subcommand("deform", "Kaehler deformation pipeline");
  deform_cmd->add_option("path", path, "instance file")->required();
  deform_cmd->add_option("--tol", tol, "absolute tolerance");

  auto* gen_cmd = app.add_subcommand("gen", "generate a seeded instance");
  gen_cmd->add_option("--kind", kind,
                      "aa_generic | aa_hs | c2_generic | c2_hs | unitary");
  gen_cmd->add_option("--n", n, "complex dimension (2..8)");
  gen_cmd->add_option("--seed", seed, "generator seed");
  gen_cmd->add_option("--out", out_path, "output file (stdout when omitted)");

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
  verify_cmd->add_option("--suite", suite,
                         "d2 | frame | ddbar | characterization | all");
  verify_cmd->add_option("--seed", seed, "suite seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return cmd_classify(path, tol, with_hs);
    if (hs_cmd->parsed()) return cmd_hs(path, tol);
    if (deform_cmd->parsed()) return cmd_deform(path, tol);
    if (gen_cmd->parsed()) return cmd_gen(kind, n, seed, out_path);
    if (verify_cmd->parsed()) return cmd_verify(suite, seed);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return 2;
}
