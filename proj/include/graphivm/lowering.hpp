#pragma once

#include <vector>

#include "graphivm/plan.hpp"

namespace graphivm {

struct LoweringOptions {
  /// Drop the target get-vertices join after a transitive get-edges whose
  /// source and target label constraints are identical, enforcing the label
  /// on every path vertex instead.
  bool label_preservation = false;
};

/// Replaces Expand with natural joins on GetEdges (absorbing a GetVertices
/// child into the GetEdges source constraint) and TransitiveExpand with
/// TransitiveGetEdges plus a target-label join. Idempotent.
PlanNode lower_to_nra(const PlanNode& gra, const LoweringOptions& options = {});

/// Property and label columns read by the operator's own expressions.
std::vector<Attribute> extract_properties(const PlanNode& op);

/// Pre-order required-property propagation. Throws InferenceError when a
/// binary node receives a property whose variable neither child binds.
PlanNode infer_required_properties(PlanNode nra);

/// Post-order flat-schema computation. Throws SchemaMismatch for a Union
/// whose children disagree.
PlanNode compute_flat_schemas(PlanNode annotated);

/// lower_to_nra, infer_required_properties and compute_flat_schemas in sequence.
PlanNode lower_to_fra(const PlanNode& gra, const LoweringOptions& options = {});

}  // namespace graphivm
