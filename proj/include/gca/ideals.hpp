#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gca/presentation.hpp"
#include "gca/skeleton.hpp"
#include "gca/verdict.hpp"

namespace gca {

inline constexpr std::uint64_t kNoPositions = UINT64_MAX;

struct AttachKey {
  std::string tail;
  std::uint64_t pos = 0;  // preamble step, or residue when residue = true
  bool residue = false;
  std::uint64_t slot = 0;

  auto operator<=>(const AttachKey&) const = default;
};

// Symmetry-restricted subset of the countable vertex set: fan membership is
// uniform across copies and tail membership is a suffix (positions >=
// threshold).  Attachments are members when their position is, or when
// individually flagged.
struct VertexSet {
  std::set<std::string> base;
  std::set<std::string> fans;                    // all copies in
  std::map<std::string, std::uint64_t> tails;    // id -> threshold >= 1
  std::set<AttachKey> attachments;               // explicit extra flags

  std::uint64_t threshold(const std::string& tail) const;  // kNoPositions if absent
  bool contains_position(const std::string& tail, std::uint64_t pos) const;
  // Generic refs: a fan copy or period residue is a member iff every
  // instance is.
  bool contains(const GraphPresentation& g, const VertexRef& v) const;
  bool empty() const;

  // Drops flags already implied by thresholds and thresholds of kNoPositions,
  // so equal sets compare equal.
  void canonicalize(const GraphPresentation& g);

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;
};

struct IdealData {
  VertexSet H;
  std::set<std::string> S;  // subset of compute_B_H(g, H)
};

Verdict is_hereditary(const GraphPresentation& g, const VertexSet& H);
Verdict is_saturated(const GraphPresentation& g, const VertexSet& H);

// Smallest hereditary superset.
VertexSet hereditary_closure(const GraphPresentation& g, const VertexSet& X);

// Smallest saturated superset of a hereditary set; the result is hereditary
// and saturated.  Throws std::invalid_argument if H is not hereditary.
VertexSet saturation(const GraphPresentation& g, const VertexSet& H);

// Checks the three maximal-tail clauses: (a) any two members co-reach a
// common member, (b) every member emits an edge landing in the set, (c) the
// set is upward closed under reachability.
Verdict is_maximal_tail(const GraphPresentation& g, const VertexSet& gamma);

// The graph on the complement of H with all edges into H removed.  Tail
// prefixes below the threshold become explicit base vertices.  Throws if H
// is not hereditary and saturated.
GraphPresentation quotient(const GraphPresentation& g, const VertexSet& H);

// The induced graph on a hereditary H.  Fan copies without their emitter
// collapse to one representative vertex (all copies are isomorphic, so
// every per-class count is unchanged); tail suffixes are re-rooted.
GraphPresentation graph_on(const GraphPresentation& g, const VertexSet& H);

// E(v): the induced graph on everything v can see.
GraphPresentation view_subgraph(const GraphPresentation& g, const VertexRef& v);

// E(v; F) for a base vertex v, with F given as the set of base targets
// whose edges from v are excluded: the induced graph on {v} together with
// everything the remaining edges' targets can see.  With exclude_tail_entry,
// the entry edge of a tail attached at v is excluded as well.
GraphPresentation view_subgraph_excluding(const GraphPresentation& g,
                                          const std::string& v,
                                          const std::set<std::string>& excluded,
                                          bool exclude_tail_entry = false);

// The symmetry-restricted set denoted by a set of skeleton nodes: tail
// thresholds are the smallest selected position, attachment flags are kept
// only where not implied.
VertexSet vertex_set_from_nodes(const GraphPresentation& g, const Skeleton& sk,
                                const std::vector<bool>& in);

// Infinite emitters with infinitely many edges into H and a nonzero finite
// number of edges out of H.  Throws if H is not hereditary and saturated.
std::set<std::string> compute_B_H(const GraphPresentation& g,
                                  const VertexSet& H);

// All hereditary saturated sets in the symmetry-restricted representation,
// in a deterministic order.
std::vector<VertexSet> enumerate_hereditary_saturated(const GraphPresentation& g);

// (H, S) <= (H', S')  iff  H subset H' and S subset H' union S'.
bool pair_leq(const GraphPresentation& g, const IdealData& p, const IdealData& q);

// True iff every member of A is a member of B.
bool set_leq(const GraphPresentation& g, const VertexSet& A, const VertexSet& B);

}  // namespace gca
