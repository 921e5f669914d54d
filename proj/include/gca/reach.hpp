#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gca/presentation.hpp"
#include "gca/skeleton.hpp"

namespace gca {

// A simple closed path.  `vertices` is the cyclic list starting at the
// canonical base point (the earliest-declared base vertex on the circuit);
// `edges` lists the base-to-base hops with the chosen multiplicity slot.
// `per_index = true` marks a parametric family: countably many circuits, one
// per fan copy or tail re-entry index, recorded once.
struct CircuitEdge {
  VertexRef from, to;
  std::uint64_t slot = 0;
};

struct Circuit {
  std::string id;
  std::vector<VertexRef> vertices;
  std::vector<CircuitEdge> edges;
  bool per_index = false;
};

enum class CircuitClass { Terminal, Transitory, Neither };

struct ConditionKReport {
  bool holds = true;
  std::optional<VertexRef> vertex;      // on exactly one circuit
  std::optional<std::string> circuit;   // its unique circuit's id
};

// Number of distinct finite directed paths from v to w in the denoted
// countable graph.  Omega is produced by rule (reachable circuit between the
// endpoints, omega edge, fan crossing, or tail period escape), never by
// overflow; finite values are exact and overflow is a hard error.  Generic
// refs denote their canonical representative: the generic fan copy is one
// fixed copy, and a period residue is its smallest position (at or after the
// source's own position when both lie in the same tail).
Count path_count(const GraphPresentation& g, const VertexRef& v,
                 const VertexRef& w);

// All simple circuits, deterministically ordered by declaration order of
// their vertices and edges.  A multiplicity-m edge yields m distinct
// circuits (one per slot); circuits through fan copies, omega edges, or tail
// period exits are reported once as per-index families.
std::vector<Circuit> enumerate_circuits(const GraphPresentation& g);

// Terminal: no exits.  Transitory: has an exit and no exit returns to the
// circuit.  Neither: some exit returns.  Per-index families are always
// Neither (sibling indices provide returning exits).
CircuitClass classify_circuit(const GraphPresentation& g, const Circuit& c);

// Condition (K): no vertex lies on exactly one circuit.
ConditionKReport satisfies_condition_K(const GraphPresentation& g);

std::string to_string(CircuitClass c);

}  // namespace gca
