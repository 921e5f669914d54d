#include "gca/desingularize.hpp"

#include <algorithm>
#include <stdexcept>

namespace gca {

const AddedTail* Desingularization::tail_for(const std::string& vertex) const {
  for (const auto& t : added)
    if (t.vertex == vertex) return &t;
  return nullptr;
}

namespace {

std::string fresh_tail_id(const GraphPresentation& g, std::string id) {
  auto taken = [&](const std::string& s) {
    return g.tail_by_id(s) != nullptr || g.fan_by_id(s) != nullptr;
  };
  while (taken(id)) id += "_";
  return id;
}

std::string fresh_vertex(const GraphPresentation& g, std::string name) {
  while (g.base.has_vertex(name)) name += "_";
  return name;
}

}  // namespace

Desingularization desingularize(const GraphPresentation& g,
                                EnumerationPolicy policy) {
  for (const auto& f : g.fans)
    if (f.sink())
      throw std::invalid_argument(
          "cannot desingularize the sink fan " + f.id +
          ": each copy would need a tail of its own, which this "
          "presentation class cannot express; the ideal computations "
          "work on the original graph directly");
  for (const auto& t : g.tails) {
    auto check_steps = [&](const std::vector<TailStep>& steps) {
      for (const auto& s : steps)
        for (const auto& a : s.attachments)
          if (a.sink())
            throw std::invalid_argument(
                "cannot desingularize: tail " + t.id +
                " has a sink attachment, which would need a tail of its own");
    };
    check_steps(t.preamble);
    check_steps(t.period);
  }

  Desingularization out;
  out.graph = g;
  out.policy = policy;

  for (const auto& v : g.base.vertices) {
    bool has_edge = false, has_omega = false;
    for (const auto& e : g.base.edges)
      if (e.src == v) {
        has_edge = true;
        if (e.mult.omega) has_omega = true;
      }
    const Fan* fan = g.fan_at(v);
    bool sink = !has_edge && !fan && !g.tail_at(v);
    if (!sink && !has_omega && !fan) continue;  // not singular

    if (g.tail_at(v))
      throw std::invalid_argument("cannot desingularize " + v +
                                  ": the vertex already carries a tail");

    AddedTail prov;
    prov.vertex = v;
    prov.tail_id = fresh_tail_id(out.graph, "d." + v);

    Tail nt;
    nt.id = prov.tail_id;
    nt.origin = v;

    if (sink) {
      nt.period.push_back(TailStep{});
      out.graph.tails.push_back(std::move(nt));
      out.added.push_back(std::move(prov));
      continue;
    }

    // Enumerate the outgoing edges: finite slots in declaration order, then
    // round-robin over omega edges (declaration order) and the fan.
    std::vector<VertexRef> finite, round;
    for (const auto& e : g.base.edges) {
      if (e.src != v) continue;
      if (e.mult.omega) {
        round.push_back(VertexRef::base(e.dst));
      } else {
        for (std::uint64_t s = 0; s < e.mult.n; ++s)
          finite.push_back(VertexRef::base(e.dst));
      }
    }
    if (fan) {
      prov.fan_id = fan->id;
      round.push_back(VertexRef::fan_copy(fan->id));
    }

    std::vector<VertexRef> seq = finite.empty()
                                     ? round
                                     : finite;  // e_1 comes from this list
    VertexRef e1 = seq.front();
    std::vector<VertexRef> pre(seq.begin() + 1, seq.end());
    prov.targets.push_back(e1);
    prov.targets.insert(prov.targets.end(), pre.begin(), pre.end());
    prov.targets.insert(prov.targets.end(), round.begin(), round.end());

    // Rebuild v's outgoing edges: only e_1 stays.
    std::erase_if(out.graph.base.edges,
                  [&](const BaseEdge& e) { return e.src == v; });
    if (fan)
      std::erase_if(out.graph.fans,
                    [&](const Fan& f) { return f.id == fan->id; });
    auto materialize = [&](const VertexRef& target) -> TailStep {
      TailStep s;
      if (target.kind == VertexRef::Kind::Base) {
        s.exits.push_back({target.name, 1});
      } else {
        AttachedVertex a;
        a.exits = fan->exits;
        s.attachments.push_back(std::move(a));
      }
      return s;
    };
    if (e1.kind == VertexRef::Kind::Base) {
      out.graph.base.edges.push_back({v, e1.name, Multiplicity::fin(1)});
    } else {
      std::string copy = fresh_vertex(out.graph, fan->id + ".0");
      prov.first_copy = copy;
      out.graph.base.vertices.push_back(copy);
      out.graph.base.edges.push_back({v, copy, Multiplicity::fin(1)});
      for (const auto& [z, n] : fan->exits)
        out.graph.base.edges.push_back({copy, z, Multiplicity::fin(n)});
    }
    for (const auto& t : pre) nt.preamble.push_back(materialize(t));
    for (const auto& t : round) nt.period.push_back(materialize(t));
    out.graph.tails.push_back(std::move(nt));
    out.added.push_back(std::move(prov));
  }
  return out;
}

namespace {

// 1-based enumeration position of an edge instance at a desingularized
// vertex: which e_j the instance became.
std::uint64_t enumeration_position(const GraphPresentation& g,
                                   const AddedTail& at, const PathEdge& e) {
  // Reconstruct the enumeration: finite slots in declaration order, then
  // rounds over the omega constructs.  A base hop prefers the finite edge
  // carrying that target (index = parallel slot); otherwise it is an
  // omega-edge instance and index selects the round, as does the copy
  // index of a fan hop.
  std::uint64_t finite_len = 0, omega_count = 0;
  std::optional<std::uint64_t> finite_pos, omega_idx;
  for (const auto& be : g.base.edges) {
    if (be.src != at.vertex) continue;
    if (be.mult.omega) {
      if (e.to.kind == VertexRef::Kind::Base && e.to.name == be.dst &&
          !omega_idx)
        omega_idx = omega_count;
      ++omega_count;
    } else {
      if (e.to.kind == VertexRef::Kind::Base && e.to.name == be.dst &&
          !finite_pos && e.index < be.mult.n)
        finite_pos = finite_len + e.index;
      finite_len += be.mult.n;
    }
  }
  const Fan* fan = g.fan_at(at.vertex);
  if (e.to.kind == VertexRef::Kind::FanCopy) {
    if (!fan || fan->id != e.to.name)
      throw std::invalid_argument("path hop into unknown fan " + e.to.name);
    omega_idx = omega_count;
  }
  if (fan) ++omega_count;
  if (finite_pos) return *finite_pos + 1;
  if (!omega_idx)
    throw std::invalid_argument("path hop " + e.from.str() + " -> " +
                                e.to.str() + " does not match any edge");
  return finite_len + e.index * omega_count + *omega_idx + 1;
}

// Appends the F-path for enumeration position j of the tail at `at`:
// either the kept edge (j = 1) or the tail corridor to position j-1
// followed by the exit or attachment hop.  Returns the ref the caller's
// next hop should start from when the target is a fan copy.
VertexRef append_translated(const Desingularization& f, const AddedTail& at,
                            std::uint64_t j, Path& out) {
  const Tail* tail = f.graph.tail_by_id(at.tail_id);
  // targets records one period round; later positions repeat it.
  std::uint64_t ti = j - 1;
  {
    std::uint64_t P = tail->preamble.size(), R = tail->period.size();
    if (ti > P) ti = P + 1 + ((ti - P - 1) % R);
  }
  const VertexRef& target = at.targets[ti];
  VertexRef v = VertexRef::base(at.vertex);
  if (j == 1) {
    if (target.kind == VertexRef::Kind::Base) {
      out.push_back({v, target, 0});
      return target;
    }
    VertexRef copy = VertexRef::base(*at.first_copy);
    out.push_back({v, copy, 0});
    return copy;
  }
  const Tail* t = f.graph.tail_by_id(at.tail_id);
  std::uint64_t pos = j - 1;  // position emitting e_j
  out.push_back({v, VertexRef::tail_pos(at.tail_id, 1), 0});
  for (std::uint64_t k = 1; k < pos; ++k)
    out.push_back({VertexRef::tail_pos(at.tail_id, k),
                   VertexRef::tail_pos(at.tail_id, k + 1), 0});
  VertexRef here = VertexRef::tail_pos(at.tail_id, pos);
  (void)t;
  if (target.kind == VertexRef::Kind::Base) {
    out.push_back({here, target, 0});
    return target;
  }
  VertexRef att = VertexRef::attached(at.tail_id, pos, false, 0);
  std::uint64_t P = t->preamble.size();
  if (pos > P)
    att = VertexRef::attached(at.tail_id, (pos - P - 1) % t->period.size(),
                              true, 0);
  out.push_back({here, att, 0});
  return att;
}

}  // namespace

Path phi(const GraphPresentation& g, const Desingularization& f,
         const Path& p) {
  if (p.empty()) return {};
  if (p.front().from.kind != VertexRef::Kind::Base ||
      p.back().to.kind != VertexRef::Kind::Base)
    throw std::invalid_argument("phi requires endpoints at base vertices");
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!(p[i].to == p[i + 1].from) &&
        !(p[i].to.kind == VertexRef::Kind::FanCopy &&
          p[i + 1].from.kind == VertexRef::Kind::FanCopy &&
          p[i].to.name == p[i + 1].from.name))
      throw std::invalid_argument("path hops do not chain");

  Path out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const PathEdge& e = p[i];
    const AddedTail* at = e.from.kind == VertexRef::Kind::Base
                              ? f.tail_for(e.from.name)
                              : nullptr;
    if (!at) {
      // Hops out of fan copies of desingularized fans become hops out of
      // the materialized attachment or first copy; everything else is
      // untouched.
      if (e.from.kind == VertexRef::Kind::FanCopy && !out.empty() &&
          !(out.back().to == e.from)) {
        out.push_back({out.back().to, e.to, e.index});
      } else {
        out.push_back(e);
      }
      continue;
    }
    std::uint64_t j = enumeration_position(g, *at, e);
    VertexRef landed = append_translated(f, *at, j, out);
    (void)landed;
  }
  return out;
}

InfinitePathPrefix phi_infinity_truncated(const GraphPresentation& g,
                                          const Desingularization& f,
                                          const InfinitePathPrefix& p,
                                          std::size_t depth) {
  InfinitePathPrefix out;
  out.prefix = phi(g, f, p.prefix);
  if (out.prefix.size() > depth)
    throw std::runtime_error(
        "translated prefix exceeds the requested depth without stabilizing");
  switch (p.cls.kind) {
    case EquivClassDescriptor::Kind::Singular: {
      const VertexRef& s = p.cls.singular;
      if (s.kind != VertexRef::Kind::Base)
        throw std::invalid_argument(
            "singular class terminus is not a base vertex; the input is not "
            "desingularizable");
      const AddedTail* at = f.tail_for(s.name);
      if (!at)
        throw std::invalid_argument("no tail was added at " + s.name);
      out.cls = EquivClassDescriptor::tail_ray_class(at->tail_id);
      break;
    }
    case EquivClassDescriptor::Kind::TailRay:
    case EquivClassDescriptor::Kind::TerminalCircuit:
      out.cls = p.cls;  // untouched by the construction
      break;
  }
  return out;
}

VertexSet h_s_map(const GraphPresentation& g, const Desingularization& f,
                  const VertexSet& H, const std::set<std::string>& S) {
  (void)g;
  VertexSet out;
  out.base = H.base;
  out.tails = H.tails;
  out.attachments = H.attachments;

  auto lower = [&](const std::string& tid, std::uint64_t thr) {
    auto it = out.tails.find(tid);
    if (it == out.tails.end() || it->second > thr) out.tails[tid] = thr;
  };
  auto target_in_H = [&](const VertexRef& t) {
    return t.kind == VertexRef::Kind::Base ? H.base.count(t.name) > 0
                                           : H.fans.count(t.name) > 0;
  };

  for (const auto& at : f.added) {
    if (H.base.count(at.vertex)) lower(at.tail_id, 1);
    if (at.fan_id && H.fans.count(*at.fan_id)) {
      if (at.first_copy) out.base.insert(*at.first_copy);
      const Tail* t = f.graph.tail_by_id(at.tail_id);
      for (std::uint64_t j = 1; j <= t->preamble.size(); ++j)
        if (!t->preamble[j - 1].attachments.empty())
          out.attachments.insert({at.tail_id, j, false, 0});
      for (std::uint64_t r = 0; r < t->period.size(); ++r)
        if (!t->period[r].attachments.empty())
          out.attachments.insert({at.tail_id, r, true, 0});
    }
    if (S.count(at.vertex)) {
      const Tail* t = f.graph.tail_by_id(at.tail_id);
      std::uint64_t P = t->preamble.size();
      // Period-round targets must sit in H (the vertex sends infinitely
      // many edges into H); the threshold is the last escaping position.
      for (std::size_t j = P + 2; j <= at.targets.size(); ++j)
        if (!target_in_H(at.targets[j - 1]))
          throw std::invalid_argument(
              at.vertex + " is not in B_H: its tail never settles in H");
      std::uint64_t n = 1;
      for (std::size_t j = 1; j <= P + 1 && j <= at.targets.size(); ++j)
        if (!target_in_H(at.targets[j - 1]))
          n = std::max<std::uint64_t>(n, j);
      lower(at.tail_id, n);
    }
  }
  for (const auto& v : S)
    if (!f.tail_for(v))
      throw std::invalid_argument("S member " + v +
                                  " received no tail: it was not singular");
  out.canonicalize(f.graph);
  return out;
}

}  // namespace gca
