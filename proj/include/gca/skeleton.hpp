#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gca/presentation.hpp"

namespace gca {

// Finite quotient of the denoted countable graph.  Nodes are base vertices,
// one generic copy per fan, one node per tail preamble position, one node per
// tail period residue, and one node per attachment slot.  Forward edges
// between period residues wrap around; a wrap is not a circuit of the
// countable graph, so circuit membership is computed structurally rather
// than from quotient cycles.
class Skeleton {
 public:
  struct Edge {
    enum class Tag { Base, PerCopy, Entry, Forward, Exit, Attach };
    int to;
    Multiplicity mult;
    Tag tag;
  };

  struct FanInfo {
    const Fan* fan;
    int emitter;
    int copy;
  };

  struct TailInfo {
    const Tail* tail;
    int origin;
    std::vector<int> pre;                   // preamble position nodes, 1-based step
    std::vector<int> res;                   // period residue nodes
    std::vector<std::vector<int>> pre_att;  // [step][slot]
    std::vector<std::vector<int>> res_att;  // [residue][slot]
  };

  explicit Skeleton(const GraphPresentation& g);

  int size() const { return static_cast<int>(refs_.size()); }
  const VertexRef& ref(int i) const { return refs_[i]; }
  int index(const VertexRef& v) const;  // -1 if unknown
  int base_index(const std::string& name) const;

  const std::vector<Edge>& out(int i) const { return out_[i]; }

  bool reaches(int from, int to) const { return reach_[from][to]; }
  bool reaches(const VertexRef& from, const VertexRef& to) const;

  bool is_singular(int i) const { return singular_[i]; }
  bool on_circuit(int i) const { return on_circuit_[i]; }

  const std::vector<FanInfo>& fans() const { return fans_; }
  const std::vector<TailInfo>& tails() const { return tails_; }
  const FanInfo* fan_info(const std::string& id) const;
  const TailInfo* tail_info(const std::string& id) const;

  const GraphPresentation& graph() const { return *g_; }

 private:
  const GraphPresentation* g_;
  std::vector<VertexRef> refs_;
  std::map<VertexRef, int> index_;
  std::map<std::string, int> base_index_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<bool>> reach_;
  std::vector<bool> singular_;
  std::vector<bool> on_circuit_;
  std::vector<FanInfo> fans_;
  std::vector<TailInfo> tails_;
};

// Base sinks, omega-edge emitters, fan emitters, sink-fan copies, and sink
// attachments.  Tail positions are never singular.
std::vector<VertexRef> singular_vertices(const GraphPresentation& g);

struct SymbolicEdge {
  VertexRef to;
  Multiplicity mult;
  bool per_copy = false;  // one edge per fan copy index
};

// The outgoing edges of v, symbolically.
std::vector<SymbolicEdge> successors(const GraphPresentation& g,
                                     const VertexRef& v);

// True iff a directed path from v to w exists in the denoted countable
// graph.  Generic refs mean "some (equivalently, every) copy".
bool reaches(const GraphPresentation& g, const VertexRef& v,
             const VertexRef& w);

}  // namespace gca
