#include "gca/skeleton.hpp"

#include <deque>
#include <stdexcept>

namespace gca {

Skeleton::Skeleton(const GraphPresentation& g) : g_(&g) {
  auto add = [&](VertexRef r) {
    int i = static_cast<int>(refs_.size());
    index_[r] = i;
    refs_.push_back(std::move(r));
    return i;
  };

  for (const auto& v : g.base.vertices)
    base_index_[v] = add(VertexRef::base(v));

  for (const auto& f : g.fans) {
    FanInfo fi;
    fi.fan = &f;
    fi.emitter = base_index_.at(f.emitter);
    fi.copy = add(VertexRef::fan_copy(f.id));
    fans_.push_back(fi);
  }

  for (const auto& t : g.tails) {
    TailInfo ti;
    ti.tail = &t;
    ti.origin = base_index_.at(t.origin);
    for (std::uint64_t k = 1; k <= t.preamble.size(); ++k)
      ti.pre.push_back(add(VertexRef::tail_pos(t.id, k)));
    for (std::uint64_t r = 0; r < t.period.size(); ++r)
      ti.res.push_back(add(VertexRef::tail_res(t.id, r)));
    for (std::uint64_t k = 1; k <= t.preamble.size(); ++k) {
      std::vector<int> slots;
      for (std::uint64_t a = 0; a < t.preamble[k - 1].attachments.size(); ++a)
        slots.push_back(add(VertexRef::attached(t.id, k, false, a)));
      ti.pre_att.push_back(std::move(slots));
    }
    for (std::uint64_t r = 0; r < t.period.size(); ++r) {
      std::vector<int> slots;
      for (std::uint64_t a = 0; a < t.period[r].attachments.size(); ++a)
        slots.push_back(add(VertexRef::attached(t.id, r, true, a)));
      ti.res_att.push_back(std::move(slots));
    }
    tails_.push_back(std::move(ti));
  }

  out_.resize(refs_.size());

  for (const auto& e : g.base.edges)
    out_[base_index_.at(e.src)].push_back(
        {base_index_.at(e.dst), e.mult, Edge::Tag::Base});

  for (const auto& fi : fans_) {
    out_[fi.emitter].push_back({fi.copy, Multiplicity::fin(1), Edge::Tag::PerCopy});
    for (const auto& [target, n] : fi.fan->exits)
      out_[fi.copy].push_back(
          {base_index_.at(target), Multiplicity::fin(n), Edge::Tag::Exit});
  }

  for (const auto& ti : tails_) {
    const Tail& t = *ti.tail;
    auto node_at = [&](std::uint64_t k) {  // 1-based position, period wraps
      if (k <= t.preamble.size()) return ti.pre[k - 1];
      return ti.res[(k - t.preamble.size() - 1) % t.period.size()];
    };
    out_[ti.origin].push_back({node_at(1), Multiplicity::fin(1), Edge::Tag::Entry});
    auto wire_step = [&](int node, const TailStep& s, int next,
                         const std::vector<int>& att_nodes) {
      out_[node].push_back({next, Multiplicity::fin(s.forward), Edge::Tag::Forward});
      for (const auto& [target, n] : s.exits)
        out_[node].push_back(
            {base_index_.at(target), Multiplicity::fin(n), Edge::Tag::Exit});
      for (std::size_t a = 0; a < s.attachments.size(); ++a) {
        out_[node].push_back({att_nodes[a], Multiplicity::fin(1), Edge::Tag::Attach});
        for (const auto& [target, n] : s.attachments[a].exits)
          out_[att_nodes[a]].push_back(
              {base_index_.at(target), Multiplicity::fin(n), Edge::Tag::Exit});
      }
    };
    for (std::uint64_t k = 1; k <= t.preamble.size(); ++k)
      wire_step(ti.pre[k - 1], t.preamble[k - 1], node_at(k + 1),
                ti.pre_att[k - 1]);
    for (std::uint64_t r = 0; r < t.period.size(); ++r)
      wire_step(ti.res[r], t.period[r],
                ti.res[(r + 1) % t.period.size()], ti.res_att[r]);
  }

  // Reflexive-transitive closure by BFS from every node.  Residue-to-residue
  // forward edges (including the wrap) stand for real position-to-position
  // steps, so the closure is exact for the countable graph.
  int n = size();
  reach_.assign(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::deque<int> queue{s};
    reach_[s][s] = true;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const auto& e : out_[u])
        if (!reach_[s][e.to]) {
          reach_[s][e.to] = true;
          queue.push_back(e.to);
        }
    }
  }

  singular_.assign(n, false);
  for (int i = 0; i < n; ++i) {
    const VertexRef& r = refs_[i];
    switch (r.kind) {
      case VertexRef::Kind::Base: {
        bool infinite = g.fan_at(r.name) != nullptr;
        for (const auto& e : out_[i])
          if (e.tag == Edge::Tag::Base && e.mult.omega) infinite = true;
        singular_[i] = infinite || out_[i].empty();
        break;
      }
      case VertexRef::Kind::FanCopy:
      case VertexRef::Kind::Attached:
        singular_[i] = out_[i].empty();
        break;
      case VertexRef::Kind::TailVertex:
        break;  // always emits the forward edge
    }
  }

  // A node is on a circuit of the countable graph iff a real nonempty path
  // returns to it.  Fan copies and tail nodes can only be re-entered through
  // their emitter/origin, so the closure answers directly; wrap edges alone
  // never reach back to the origin and cannot fabricate a circuit.
  on_circuit_.assign(n, false);
  for (int i = 0; i < n; ++i) {
    if (refs_[i].kind == VertexRef::Kind::Base) {
      for (const auto& e : out_[i])
        if (reach_[e.to][i]) on_circuit_[i] = true;
    }
  }
  for (const auto& fi : fans_) on_circuit_[fi.copy] = reach_[fi.copy][fi.emitter];
  for (const auto& ti : tails_) {
    for (int node : ti.pre) on_circuit_[node] = reach_[node][ti.origin];
    for (int node : ti.res) on_circuit_[node] = reach_[node][ti.origin];
    for (const auto& slots : ti.pre_att)
      for (int node : slots) on_circuit_[node] = reach_[node][ti.origin];
    for (const auto& slots : ti.res_att)
      for (int node : slots) on_circuit_[node] = reach_[node][ti.origin];
  }
}

int Skeleton::index(const VertexRef& v) const {
  auto it = index_.find(v);
  if (it != index_.end()) return it->second;
  // Concrete tail positions past the preamble canonicalize to their residue.
  if ((v.kind == VertexRef::Kind::TailVertex ||
       v.kind == VertexRef::Kind::Attached) &&
      !v.residue) {
    const Tail* t = g_->tail_by_id(v.name);
    if (t && v.pos > t->preamble.size()) {
      std::uint64_t r = (v.pos - t->preamble.size() - 1) % t->period.size();
      VertexRef canon = v.kind == VertexRef::Kind::TailVertex
                            ? VertexRef::tail_res(v.name, r)
                            : VertexRef::attached(v.name, r, true, v.slot);
      auto it2 = index_.find(canon);
      if (it2 != index_.end()) return it2->second;
    }
  }
  return -1;
}

int Skeleton::base_index(const std::string& name) const {
  auto it = base_index_.find(name);
  return it == base_index_.end() ? -1 : it->second;
}

bool Skeleton::reaches(const VertexRef& from, const VertexRef& to) const {
  int a = index(from), b = index(to);
  if (a < 0 || b < 0)
    throw std::invalid_argument("unknown vertex: " +
                                (a < 0 ? from.str() : to.str()));
  return reach_[a][b];
}

const Skeleton::FanInfo* Skeleton::fan_info(const std::string& id) const {
  for (const auto& fi : fans_)
    if (fi.fan->id == id) return &fi;
  return nullptr;
}

const Skeleton::TailInfo* Skeleton::tail_info(const std::string& id) const {
  for (const auto& ti : tails_)
    if (ti.tail->id == id) return &ti;
  return nullptr;
}

std::vector<VertexRef> singular_vertices(const GraphPresentation& g) {
  Skeleton sk(g);
  std::vector<VertexRef> out;
  for (int i = 0; i < sk.size(); ++i)
    if (sk.is_singular(i)) out.push_back(sk.ref(i));
  return out;
}

std::vector<SymbolicEdge> successors(const GraphPresentation& g,
                                     const VertexRef& v) {
  Skeleton sk(g);
  int i = sk.index(v);
  if (i < 0) throw std::invalid_argument("unknown vertex: " + v.str());
  std::vector<SymbolicEdge> out;
  for (const auto& e : sk.out(i))
    out.push_back({sk.ref(e.to), e.mult, e.tag == Skeleton::Edge::Tag::PerCopy});
  return out;
}

bool reaches(const GraphPresentation& g, const VertexRef& v,
             const VertexRef& w) {
  return Skeleton(g).reaches(v, w);
}

}  // namespace gca
