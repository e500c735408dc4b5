#pragma once

#include <memory>

#include "graphivm/rete/nodes.hpp"

namespace graphivm::rete {

/// Node maintaining the edge-distinct paths of a TransitiveGetEdges leaf.
std::unique_ptr<Node> make_transitive_node(const PlanNode& plan, const EngineConfig& config);

}  // namespace graphivm::rete
