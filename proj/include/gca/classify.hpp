#pragma once

#include <string>
#include <utility>

#include "gca/ideals.hpp"
#include "gca/reach.hpp"
#include "gca/verdict.hpp"

namespace gca {

// Symbolic equivalence class of paths: finite paths are classed by their
// (singular) terminus; infinite paths by their shared tail, which for this
// presentation class is either a terminal circuit or a tail ray.
struct EquivClassDescriptor {
  enum class Kind { Singular, TerminalCircuit, TailRay };

  Kind kind = Kind::Singular;
  VertexRef singular;   // Kind::Singular: the terminus
  Circuit circuit;      // Kind::TerminalCircuit
  std::string tail;     // Kind::TailRay: tail id

  static EquivClassDescriptor singular_class(VertexRef v) {
    EquivClassDescriptor d;
    d.kind = Kind::Singular;
    d.singular = std::move(v);
    return d;
  }
  static EquivClassDescriptor terminal_circuit_class(Circuit c) {
    EquivClassDescriptor d;
    d.kind = Kind::TerminalCircuit;
    d.circuit = std::move(c);
    return d;
  }
  static EquivClassDescriptor tail_ray_class(std::string tail_id) {
    EquivClassDescriptor d;
    d.kind = Kind::TailRay;
    d.tail = std::move(tail_id);
    return d;
  }

  std::string str() const;
};

// Number of representatives of the class that begin at v.  Singular classes
// reduce to path_count; terminal circuits absorb (the continuation on the
// circuit is unique), so their count is the number of first hits; a tail
// ray's representatives decompose as a path to the origin followed by
// forward choices.  Throws std::invalid_argument when a cited circuit is not
// terminal.
Count rep_count(const GraphPresentation& g, const VertexRef& v,
                const EquivClassDescriptor& k);

// Every vertex sees only finitely many representatives of every class.
// Decided by a rule set (non-terminal circuit, omega edge, non-sink fan,
// tail period defect or escape) whose completeness for this presentation
// class is cross-checked against brute-force truncation in the tests.
Verdict is_condition_M(const GraphPresentation& g);

Verdict is_liminal(const GraphPresentation& g);

// (1) every circuit is terminal or transitory;
// (2) every infinite path lambda has finitely many vertices emitting
//     multiple edges that return to lambda.
std::pair<Verdict, Verdict> type_I_conditions(const GraphPresentation& g);

Verdict is_type_I(const GraphPresentation& g);

// Number of vertices of the infinite path that emit multiple edges
// returning to it.  Terminal circuits give 0.  Requires a TerminalCircuit
// or TailRay descriptor.
Count n_lambda(const GraphPresentation& g, const EquivClassDescriptor& lambda);

// H = vertices all of whose class counts are finite; S = members of B_H
// whose view without their escape edges satisfies the finiteness condition.
IdealData largest_liminal_ideal(const GraphPresentation& g);

// H = vertices whose view satisfies (1) and (2); S = B_H.
IdealData largest_type_I_ideal(const GraphPresentation& g);

}  // namespace gca
