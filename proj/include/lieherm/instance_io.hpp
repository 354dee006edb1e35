#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "lieherm/deform.hpp"
#include "lieherm/families.hpp"
#include "lieherm/metric_classes.hpp"
#include "lieherm/structure_constants.hpp"

namespace lieherm {

/// Parsed instance file. All file indices are 1-based; complex numbers are
/// [re, im] pairs; omitted entries are zero. Raw C entries may give either
/// orientation of (i, j); the antisymmetric partner is filled in and
/// conflicting duplicates are rejected.
struct ParsedInstance {
  std::string format;  // "raw" | "almost_abelian" | "codim2"
  std::variant<StructureConstants, AlmostAbelianData, Codim2Data> payload;

  const StructureConstants* raw() const {
    return std::get_if<StructureConstants>(&payload);
  }
  const AlmostAbelianData* aa() const {
    return std::get_if<AlmostAbelianData>(&payload);
  }
  const Codim2Data* c2() const { return std::get_if<Codim2Data>(&payload); }

  /// Structure constants of the instance, building family data as needed.
  StructureConstants build(const Tolerance& tol = {}) const;
};

ParsedInstance parse_instance(const nlohmann::json& doc);
ParsedInstance parse_instance_text(const std::string& text);
ParsedInstance load_instance(const std::string& path);

nlohmann::ordered_json instance_to_json(const AlmostAbelianData& data);
nlohmann::ordered_json instance_to_json(const Codim2Data& data);
nlohmann::ordered_json instance_to_json(const StructureConstants& sc);
nlohmann::ordered_json unitary_to_json(const Eigen::MatrixXcd& u);

/// Report documents, schema "lieherm/1". Every verdict carries its residual,
/// the tolerance in force, and a self-describing criterion string.
nlohmann::ordered_json report_header(const Tolerance& tol);
nlohmann::ordered_json classify_report(const MetricReport& report,
                                       const Tolerance& tol);
nlohmann::ordered_json hs_report(const HSOutcome& outcome, const Tolerance& tol);
nlohmann::ordered_json pipeline_report(const PipelineReport& report,
                                       const Tolerance& tol);

}  // namespace lieherm
