#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gca/count.hpp"

namespace gca {

struct Diagnostic {
  int line = 0;
  int col = 0;
  std::string message;
};

struct BaseEdge {
  std::string src, dst;
  Multiplicity mult;
};

// Finite base graph; parallel edges are encoded by multiplicity.
struct BaseGraph {
  std::vector<std::string> vertices;  // declaration order
  std::vector<BaseEdge> edges;        // declaration order

  bool has_vertex(const std::string& v) const;
  const BaseEdge* edge(const std::string& src, const std::string& dst) const;
};

// Countably many copies of a single vertex, each receiving one edge from
// `emitter` and each emitting the same exits into the base graph.
// exits empty <=> every copy is a sink.
struct Fan {
  std::string id;
  std::string emitter;
  std::vector<std::pair<std::string, std::uint64_t>> exits;

  bool sink() const { return exits.empty(); }
};

struct AttachedVertex {
  std::vector<std::pair<std::string, std::uint64_t>> exits;  // empty = sink

  bool sink() const { return exits.empty(); }
};

struct TailStep {
  std::uint64_t forward = 1;  // multiplicity of the edge to the next position
  std::vector<std::pair<std::string, std::uint64_t>> exits;
  std::vector<AttachedVertex> attachments;
};

// Infinite path t1 -> t2 -> ... attached at `origin` (which emits one edge
// to t1).  Position k uses preamble[k-1] if k <= |preamble|, otherwise
// period[(k - |preamble| - 1) mod |period|].  The origin's entry edge is the
// only edge into the tail from outside it.
struct Tail {
  std::string id;
  std::string origin;
  std::vector<TailStep> preamble;
  std::vector<TailStep> period;  // nonempty

  const TailStep& step(std::uint64_t pos) const;  // pos is 1-based
  std::uint64_t period_start() const { return preamble.size() + 1; }
};

struct GraphPresentation {
  BaseGraph base;
  std::vector<Fan> fans;
  std::vector<Tail> tails;

  const Fan* fan_at(const std::string& emitter) const;
  const Tail* tail_at(const std::string& origin) const;
  const Fan* fan_by_id(const std::string& id) const;
  const Tail* tail_by_id(const std::string& id) const;
  bool empty() const { return base.vertices.empty(); }
};

// Symbolic reference to a vertex of the denoted countable graph.
//
//   Base      name = base vertex
//   FanCopy   name = fan id; the generic copy (all copies are isomorphic)
//   TailVertex name = tail id; pos = 1-based preamble position, or with
//             residue = true, a 0-based residue class of the period
//   Attached  as TailVertex plus the attachment slot within the step
struct VertexRef {
  enum class Kind { Base, FanCopy, TailVertex, Attached };

  Kind kind = Kind::Base;
  std::string name;
  std::uint64_t pos = 0;
  bool residue = false;
  std::uint64_t slot = 0;

  static VertexRef base(std::string v) {
    return {Kind::Base, std::move(v), 0, false, 0};
  }
  static VertexRef fan_copy(std::string fan) {
    return {Kind::FanCopy, std::move(fan), 0, false, 0};
  }
  static VertexRef tail_pos(std::string tail, std::uint64_t k) {
    return {Kind::TailVertex, std::move(tail), k, false, 0};
  }
  static VertexRef tail_res(std::string tail, std::uint64_t r) {
    return {Kind::TailVertex, std::move(tail), r, true, 0};
  }
  static VertexRef attached(std::string tail, std::uint64_t p, bool res,
                            std::uint64_t slot) {
    return {Kind::Attached, std::move(tail), p, res, slot};
  }

  auto operator<=>(const VertexRef&) const = default;

  std::string str() const;
};

// One diagnostic per violated invariant; empty means well-formed.
std::vector<Diagnostic> validate(const GraphPresentation& g);

}  // namespace gca
