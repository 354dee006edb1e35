#pragma once

#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "lieherm/families.hpp"
#include "lieherm/hermitian_symplectic.hpp"
#include "lieherm/metric_classes.hpp"
#include "lieherm/types.hpp"

namespace lieherm {

/// Outcome of a constructive Kaehler deformation: the frame-change vector a,
/// the family data after the change, and the torsion norm of the rebuilt
/// algebra (zero within tolerance for an accepted result).
struct DeformationResult {
  Eigen::VectorXcd a;
  std::optional<AlmostAbelianData> deformed_aa;
  std::optional<Codim2Data> deformed_c2;
  double kahler_residual = 0.0;
};

struct DeformOutcome {
  bool deformed = false;
  std::optional<DeformationResult> result;
  std::string reason;  // first violated condition when not deformable
};

/// Deformation of a Hermitian-symplectic almost-abelian metric into a Kaehler
/// one, through the new frame e~_1 = e_1 + sum a_k e_k. Checks, in order:
/// unimodularity, lambda = 0, A + A* = 0, and v in the image of A (least
/// squares); then applies the frame change and verifies the result is Kaehler
/// both by the family predicate and by the full classification of the rebuilt
/// algebra.
DeformOutcome aa_kahler_deform(const AlmostAbelianData& data,
                               const Tolerance& tol = {});

/// Codimension-2 counterpart: checks unimodularity, lambda = 0, Z = 0, X = Y,
/// X normal, and v in the image of X.
DeformOutcome c2_kahler_deform(const Codim2Data& data, const Tolerance& tol = {});

/// Cross-check path for the deformation vector: from the blocks
/// S = [[0, -u^t], [u, S']] of a closure-normalized certificate, the solution
///   conj(a) = (I - S' conj(S'))^-1 ( S' conj(u) - sqrt(-1) u )
/// of the witness equations reproduces a valid deformation vector. The
/// certificate blocks are rescaled by 2 to the witness normalization first.
/// Returns nothing when I - S' conj(S') is ill-conditioned.
std::optional<Eigen::VectorXcd> deformation_vector_from_certificate(
    const Eigen::MatrixXcd& S_certificate);

enum class FamilyKind { almost_abelian, codim2, none };

/// Recognizes the sparsity pattern of raw structure constants against the two
/// family normal forms (the almost-abelian pattern is the more specific one
/// and is tried first).
FamilyKind detect_family(const StructureConstants& sc,
                         std::optional<AlmostAbelianData>* aa,
                         std::optional<Codim2Data>* c2,
                         const Tolerance& tol = {});

/// End-to-end check of the deformation theorems on one instance: runs the
/// feasibility solver and, when feasible and the instance lies in a supported
/// family, the matching deformation. For a unimodular family instance,
/// feasibility must entail a successful deformation; a failure throws
/// ConjectureWitnessFailure.
struct PipelineReport {
  FamilyKind family = FamilyKind::none;
  std::optional<AlmostAbelianData> aa;
  std::optional<Codim2Data> c2;
  Verdict unimodular;
  double jacobi = 0.0;
  HSOutcome hs;
  std::optional<DeformOutcome> deformation;  // absent when family is none
};

PipelineReport streets_tian_pipeline(const StructureConstants& sc,
                                     const Tolerance& tol = {});
PipelineReport streets_tian_pipeline(const AlmostAbelianData& data,
                                     const Tolerance& tol = {});
PipelineReport streets_tian_pipeline(const Codim2Data& data,
                                     const Tolerance& tol = {});

}  // namespace lieherm
