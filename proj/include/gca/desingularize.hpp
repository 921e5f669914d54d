#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gca/classify.hpp"
#include "gca/ideals.hpp"
#include "gca/presentation.hpp"

namespace gca {

// Ordering of a singular vertex's outgoing edges when they are rolled out
// along an added tail: declaration-order finite edge slots first, then
// round-robin over the infinite constructs (omega edges in declaration
// order, then the fan).  Round-robin makes the target sequence eventually
// periodic, which keeps the result presentable.
enum class EnumerationPolicy { FiniteThenRoundRobin };

// One tail added by desingularization, with the data needed to translate
// paths and ideals back and forth.
struct AddedTail {
  std::string tail_id;
  std::string vertex;  // the singular vertex the tail was added at
  // t(e_1), t(e_2), ...: the enumerated edge targets.  Layout: targets[0]
  // belongs to the edge kept at the vertex, then one entry per preamble
  // step, then one entry per period step.  Empty for a plain sink tail.
  // A fan instance appears as the generic copy ref.
  std::vector<VertexRef> targets;
  std::optional<std::string> fan_id;      // vertex was a fan emitter
  std::optional<std::string> first_copy;  // materialized vertex for t(e_1)
                                          // when it is a fan copy
};

struct Desingularization {
  GraphPresentation graph;
  EnumerationPolicy policy = EnumerationPolicy::FiniteThenRoundRobin;
  std::vector<AddedTail> added;

  const AddedTail* tail_for(const std::string& vertex) const;
};

// Adds a tail at every singular vertex: base sinks get a plain tail, omega
// emitters get per-step exits following the enumeration, fan emitters get
// per-step attachments replicating the copy's exits.  The result has no
// singular vertices.  Throws std::invalid_argument for sink fans (their
// copies would need tails of their own; the ideal computations make that
// unnecessary) and when a singular vertex already carries a tail.
Desingularization desingularize(const GraphPresentation& g,
                                EnumerationPolicy policy =
                                    EnumerationPolicy::FiniteThenRoundRobin);

// An edge of a concrete finite path.  `index` selects the parallel slot of
// a finite-multiplicity edge, the instance of an omega edge, or the copy of
// a fan (for an emitter-to-copy hop and the following exit hop).
struct PathEdge {
  VertexRef from, to;
  std::uint64_t index = 0;
};
using Path = std::vector<PathEdge>;

// Translates a finite path of the original graph (endpoints at base
// vertices) to the unique corresponding path of the desingularization.
// Origin and terminus are preserved, hence circuits map to circuits.
Path phi(const GraphPresentation& g, const Desingularization& f,
         const Path& p);

struct InfinitePathPrefix {
  Path prefix;
  EquivClassDescriptor cls;
};

// Translates a finite-prefix-plus-class description of an element of
// E^inf or Lambda* to the desingularization: the prefix through phi, a
// singular terminus to the ray of its added tail.  Throws std::runtime_error
// when the translated prefix exceeds `depth`.
InfinitePathPrefix phi_infinity_truncated(const GraphPresentation& g,
                                          const Desingularization& f,
                                          const InfinitePathPrefix& p,
                                          std::size_t depth);

// The image H_S of a hereditary saturated pair under desingularization:
// H itself, the whole tails added inside H, and for each v0 in S the suffix
// of v0's tail from the first position all of whose later targets lie in H.
// The map is a lattice isomorphism onto the hereditary saturated sets of
// the desingularized graph.
VertexSet h_s_map(const GraphPresentation& g, const Desingularization& f,
                  const VertexSet& H, const std::set<std::string>& S);

}  // namespace gca
