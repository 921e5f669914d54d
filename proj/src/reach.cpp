#include "gca/reach.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gca {
namespace {

using Tag = Skeleton::Edge::Tag;

Count forward_product(const Tail& t, std::uint64_t from_pos,
                      std::uint64_t to_pos) {
  // Paths along the tail corridor from position from_pos to to_pos (the
  // origin counts as position 0, whose single entry edge has multiplicity 1).
  Count acc = Count::fin(1);
  for (std::uint64_t j = from_pos; j < to_pos; ++j)
    acc *= Count::fin(j == 0 ? 1 : t.step(j).forward);
  return acc;
}

bool tail_period_escapes_to(const Skeleton& sk, const Skeleton::TailInfo& ti,
                            int wi) {
  // Some period-step exit (or period attachment exit) reaches wi; positions
  // carrying it recur forever, so each gives a distinct route.
  const Tail& t = *ti.tail;
  for (std::size_t r = 0; r < t.period.size(); ++r) {
    for (const auto& [z, n] : t.period[r].exits) {
      (void)n;
      if (sk.reaches(sk.base_index(z), wi)) return true;
    }
    for (const auto& a : t.period[r].attachments)
      for (const auto& [z, n] : a.exits) {
        (void)n;
        if (sk.reaches(sk.base_index(z), wi)) return true;
      }
  }
  return false;
}

class FiniteCounter {
 public:
  FiniteCounter(const Skeleton& sk, int wi)
      : sk_(sk), wi_(wi), memo_(sk.size()), on_stack_(sk.size(), false) {}

  Count count_from(int u) {
    if (u == wi_) {
      // The empty path; returns to u would mean a circuit, which the omega
      // rules have already excluded.
      Count acc = Count::fin(1);
      acc += continue_from(u);
      return acc;
    }
    return continue_from(u);
  }

 private:
  Count continue_from(int u) {
    if (memo_[u]) return *memo_[u];
    if (on_stack_[u])
      throw std::logic_error("cycle in finite path counting region");
    on_stack_[u] = true;
    Count acc = Count::fin(0);
    for (const auto& e : sk_.out(u)) {
      if (!sk_.reaches(e.to, wi_)) continue;
      Count m = e.mult.as_count();
      if (m.is_omega())
        throw std::logic_error("omega edge in finite path counting region");
      acc += m * count_from_inner(e.to);
    }
    on_stack_[u] = false;
    memo_[u] = acc;
    return acc;
  }

  Count count_from_inner(int u) {
    Count acc = continue_from(u);
    if (u == wi_) acc += Count::fin(1);
    return acc;
  }

  const Skeleton& sk_;
  int wi_;
  std::vector<std::optional<Count>> memo_;
  std::vector<bool> on_stack_;
};

Count path_count_sk(const Skeleton& sk, const VertexRef& v, const VertexRef& w);

// Paths ending at a fixed tail position (or its attachment) factor through
// the origin, except for the forward corridor when the source sits in the
// same tail upstream of the target.
Count count_into_tail(const Skeleton& sk, const VertexRef& v,
                      const VertexRef& w) {
  const GraphPresentation& g = sk.graph();
  const Tail& t = *g.tail_by_id(w.name);
  std::uint64_t pre = t.preamble.size();
  std::uint64_t m = t.period.size();

  std::uint64_t q = 0;  // source position in the same tail, 0 = outside
  if (v.kind == VertexRef::Kind::TailVertex && v.name == w.name)
    q = v.residue ? pre + 1 + v.pos : v.pos;

  std::uint64_t k;  // concrete target position
  if (w.residue) {
    k = pre + 1 + w.pos;
    while (k < q) k += m;  // canonical representative at or after the source
  } else {
    k = w.pos;
  }

  Count acc = Count::fin(0);
  if (q != 0 && q <= k) acc += forward_product(t, q, k);
  acc += path_count_sk(sk, v, VertexRef::base(t.origin)) *
         forward_product(t, 0, k);
  return acc;  // an Attached target adds one final multiplicity-1 edge
}

Count path_count_sk(const Skeleton& sk, const VertexRef& vin,
                    const VertexRef& win) {
  int vi = sk.index(vin), wi = sk.index(win);
  if (vi < 0 || wi < 0)
    throw std::invalid_argument("unknown vertex: " +
                                (vi < 0 ? vin.str() : win.str()));
  const VertexRef& v = sk.ref(vi);
  const VertexRef& w = sk.ref(wi);

  if (vi == wi) return sk.on_circuit(vi) ? Count::inf() : Count::fin(1);

  if (w.kind == VertexRef::Kind::TailVertex ||
      w.kind == VertexRef::Kind::Attached)
    return count_into_tail(sk, v, w);

  // Omega rules: any of these shapes between the endpoints yields countably
  // many distinct paths.
  for (int u = 0; u < sk.size(); ++u)
    if (sk.on_circuit(u) && sk.reaches(vi, u) && sk.reaches(u, wi))
      return Count::inf();
  const GraphPresentation& g = sk.graph();
  for (const auto& e : g.base.edges)
    if (e.mult.omega && sk.reaches(vi, sk.base_index(e.src)) &&
        sk.reaches(sk.base_index(e.dst), wi))
      return Count::inf();
  for (const auto& fi : sk.fans())
    if (sk.reaches(vi, fi.emitter))
      for (const auto& [z, n] : fi.fan->exits) {
        (void)n;
        if (sk.reaches(sk.base_index(z), wi)) return Count::inf();
      }
  for (const auto& ti : sk.tails())
    if (sk.reaches(vi, ti.res[0]) && tail_period_escapes_to(sk, ti, wi))
      return Count::inf();

  return FiniteCounter(sk, wi).count_from(vi);
}

}  // namespace

Count path_count(const GraphPresentation& g, const VertexRef& v,
                 const VertexRef& w) {
  Skeleton sk(g);
  return path_count_sk(sk, v, w);
}

namespace {

// Base-to-base hop used by circuit enumeration.  Concrete arcs carry a slot
// count (parallel edge choices expand to distinct circuits); family arcs
// stand for countably many parallel hops.
struct Arc {
  int from, to;
  bool family = false;
  std::uint64_t slots = 1;
  std::vector<VertexRef> mids;
};

std::vector<Arc> build_arcs(const GraphPresentation& g,
                            const std::map<std::string, int>& bidx) {
  std::vector<Arc> arcs;
  for (const auto& e : g.base.edges) {
    Arc a{bidx.at(e.src), bidx.at(e.dst), false, 1, {}};
    if (e.mult.omega)
      a.family = true;
    else
      a.slots = e.mult.n;
    arcs.push_back(std::move(a));
  }
  for (const auto& f : g.fans)
    for (const auto& [z, n] : f.exits) {
      (void)n;
      Arc a{bidx.at(f.emitter), bidx.at(z), false, 1, {}};
      a.family = true;
      a.mids = {VertexRef::fan_copy(f.id)};
      arcs.push_back(std::move(a));
    }
  for (const auto& t : g.tails) {
    int from = bidx.at(t.origin);
    std::vector<VertexRef> corridor;
    std::uint64_t fwd = 1;
    for (std::uint64_t k = 1; k <= t.preamble.size(); ++k) {
      const TailStep& s = t.preamble[k - 1];
      corridor.push_back(VertexRef::tail_pos(t.id, k));
      for (const auto& [z, n] : s.exits)
        arcs.push_back({from, bidx.at(z), false, fwd * n, corridor});
      for (std::size_t ai = 0; ai < s.attachments.size(); ++ai)
        for (const auto& [z, n] : s.attachments[ai].exits) {
          auto mids = corridor;
          mids.push_back(VertexRef::attached(t.id, k, false, ai));
          arcs.push_back({from, bidx.at(z), false, fwd * n, std::move(mids)});
        }
      fwd *= s.forward;
    }
    // Period exits recur at infinitely many positions: families.  The
    // recorded vertices are those of a large-index member, which passes the
    // whole preamble and every residue.
    std::vector<VertexRef> period_mids = corridor;
    for (std::uint64_t r = 0; r < t.period.size(); ++r)
      period_mids.push_back(VertexRef::tail_res(t.id, r));
    for (std::uint64_t r = 0; r < t.period.size(); ++r) {
      const TailStep& s = t.period[r];
      for (const auto& [z, n] : s.exits) {
        (void)n;
        arcs.push_back({from, bidx.at(z), true, 1, period_mids});
      }
      for (std::size_t ai = 0; ai < s.attachments.size(); ++ai)
        for (const auto& [z, n] : s.attachments[ai].exits) {
          (void)n;
          auto mids = period_mids;
          mids.push_back(VertexRef::attached(t.id, r, true, ai));
          arcs.push_back({from, bidx.at(z), true, 1, std::move(mids)});
        }
    }
  }
  return arcs;
}

class CycleFinder {
 public:
  CycleFinder(int n, const std::vector<Arc>& arcs) : arcs_(arcs), out_(n) {
    for (std::size_t i = 0; i < arcs.size(); ++i)
      out_[arcs[i].from].push_back(static_cast<int>(i));
    on_path_.assign(n, false);
  }

  // Every simple cycle exactly once, rooted at its smallest vertex.
  std::vector<std::vector<int>> run() {
    for (int s = 0; s < static_cast<int>(out_.size()); ++s) {
      root_ = s;
      dfs(s);
    }
    return std::move(cycles_);
  }

 private:
  void dfs(int u) {
    on_path_[u] = true;
    for (int ai : out_[u]) {
      int to = arcs_[ai].to;
      if (to == root_) {
        path_.push_back(ai);
        cycles_.push_back(path_);
        path_.pop_back();
      } else if (to > root_ && !on_path_[to]) {
        path_.push_back(ai);
        dfs(to);
        path_.pop_back();
      }
    }
    on_path_[u] = false;
  }

  const std::vector<Arc>& arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<bool> on_path_;
  std::vector<int> path_;
  int root_ = 0;
  std::vector<std::vector<int>> cycles_;
};

}  // namespace

std::vector<Circuit> enumerate_circuits(const GraphPresentation& g) {
  std::map<std::string, int> bidx;
  for (std::size_t i = 0; i < g.base.vertices.size(); ++i)
    bidx[g.base.vertices[i]] = static_cast<int>(i);
  std::vector<Arc> arcs = build_arcs(g, bidx);
  auto cycles = CycleFinder(static_cast<int>(g.base.vertices.size()), arcs).run();

  std::vector<Circuit> out;
  auto emit = [&](const std::vector<int>& cycle,
                  const std::vector<std::uint64_t>& slots, bool family) {
    Circuit c;
    c.id = "c" + std::to_string(out.size());
    c.per_index = family;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Arc& a = arcs[cycle[i]];
      VertexRef from = VertexRef::base(g.base.vertices[a.from]);
      VertexRef to = VertexRef::base(g.base.vertices[a.to]);
      c.vertices.push_back(from);
      for (const auto& m : a.mids) c.vertices.push_back(m);
      c.edges.push_back({from, to, family ? 0 : slots[i]});
    }
    out.push_back(std::move(c));
  };

  for (const auto& cycle : cycles) {
    bool family = false;
    for (int ai : cycle)
      if (arcs[ai].family) family = true;
    if (family) {
      emit(cycle, {}, true);
      continue;
    }
    // Expand parallel-edge choices: one circuit per slot combination.
    std::vector<std::uint64_t> slots(cycle.size(), 0);
    while (true) {
      emit(cycle, slots, false);
      std::size_t i = 0;
      for (; i < cycle.size(); ++i) {
        if (++slots[i] < arcs[cycle[i]].slots) break;
        slots[i] = 0;
      }
      if (i == cycle.size()) break;
    }
  }
  return out;
}

namespace {

// Skeleton edges traversed by a concrete circuit, as (from-node, to-node)
// pairs with use counts.  Consecutive vertices identify the edge uniquely:
// validation rejects duplicate base edges and duplicate exit targets.
std::map<std::pair<int, int>, std::uint64_t> used_edges(const Skeleton& sk,
                                                        const Circuit& c) {
  std::map<std::pair<int, int>, std::uint64_t> used;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    int a = sk.index(c.vertices[i]);
    int b = sk.index(c.vertices[(i + 1) % c.vertices.size()]);
    if (a < 0 || b < 0) throw std::invalid_argument("unknown circuit vertex");
    ++used[{a, b}];
  }
  return used;
}

}  // namespace

CircuitClass classify_circuit(const GraphPresentation& g, const Circuit& c) {
  if (c.per_index) return CircuitClass::Neither;  // sibling indices return
  Skeleton sk(g);
  auto used = used_edges(sk, c);
  std::vector<int> nodes;
  for (const auto& v : c.vertices) nodes.push_back(sk.index(v));

  bool has_exit = false, returns = false;
  for (int u : nodes) {
    for (const auto& e : sk.out(u)) {
      std::uint64_t taken = 0;
      if (auto it = used.find({u, e.to}); it != used.end()) taken = it->second;
      bool spare;
      if (e.tag == Tag::PerCopy || e.mult.omega)
        spare = true;  // countably many parallel slots, at most one taken
      else
        spare = e.mult.n > taken;
      if (!spare) continue;
      has_exit = true;
      for (int x : nodes)
        if (sk.reaches(e.to, x)) returns = true;
    }
  }
  if (!has_exit) return CircuitClass::Terminal;
  return returns ? CircuitClass::Neither : CircuitClass::Transitory;
}

ConditionKReport satisfies_condition_K(const GraphPresentation& g) {
  Skeleton sk(g);
  auto circuits = enumerate_circuits(g);
  // Circuits through each vertex, capped at 2.  A family puts each base
  // vertex, tail position, and residue instance on infinitely many members,
  // but each fan copy (and each period-attachment instance) on exactly one
  // member per family record.
  std::vector<std::uint64_t> tally(sk.size(), 0);
  std::vector<const Circuit*> unique_circuit(sk.size(), nullptr);
  for (const auto& c : circuits)
    for (const auto& v : c.vertices) {
      int i = sk.index(v);
      std::uint64_t add = 1;
      if (c.per_index && v.kind != VertexRef::Kind::FanCopy &&
          !(v.kind == VertexRef::Kind::Attached && v.residue))
        add = 2;
      tally[i] = std::min<std::uint64_t>(2, tally[i] + add);
      unique_circuit[i] = &c;
    }
  for (int i = 0; i < sk.size(); ++i)
    if (tally[i] == 1)
      return {false, sk.ref(i), unique_circuit[i]->id};
  return {true, std::nullopt, std::nullopt};
}

std::string to_string(CircuitClass c) {
  switch (c) {
    case CircuitClass::Terminal:
      return "terminal";
    case CircuitClass::Transitory:
      return "transitory";
    case CircuitClass::Neither:
      return "neither";
  }
  return "?";
}

}  // namespace gca
