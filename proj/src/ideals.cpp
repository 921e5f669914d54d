#include "gca/ideals.hpp"

#include <algorithm>
#include <stdexcept>

namespace gca {

std::uint64_t VertexSet::threshold(const std::string& tail) const {
  auto it = tails.find(tail);
  return it == tails.end() ? kNoPositions : it->second;
}

bool VertexSet::contains_position(const std::string& tail,
                                  std::uint64_t pos) const {
  return pos >= threshold(tail);
}

bool VertexSet::contains(const GraphPresentation& g, const VertexRef& v) const {
  switch (v.kind) {
    case VertexRef::Kind::Base:
      return base.count(v.name) > 0;
    case VertexRef::Kind::FanCopy:
      return fans.count(v.name) > 0;
    case VertexRef::Kind::TailVertex: {
      if (!v.residue) return contains_position(v.name, v.pos);
      const Tail* t = g.tail_by_id(v.name);
      // A residue is a member iff its every instance is, i.e. the threshold
      // covers the first one.
      return t && threshold(v.name) <= t->preamble.size() + 1 + v.pos;
    }
    case VertexRef::Kind::Attached: {
      if (attachments.count({v.name, v.pos, v.residue, v.slot})) return true;
      return contains(g, v.residue ? VertexRef::tail_res(v.name, v.pos)
                                   : VertexRef::tail_pos(v.name, v.pos));
    }
  }
  return false;
}

bool VertexSet::empty() const {
  return base.empty() && fans.empty() && tails.empty() && attachments.empty();
}

void VertexSet::canonicalize(const GraphPresentation& g) {
  for (auto it = tails.begin(); it != tails.end();)
    it = it->second == kNoPositions ? tails.erase(it) : std::next(it);
  for (auto it = attachments.begin(); it != attachments.end();) {
    const AttachKey& k = *it;
    bool implied = contains(g, k.residue
                                   ? VertexRef::tail_res(k.tail, k.pos)
                                   : VertexRef::tail_pos(k.tail, k.pos));
    it = implied ? attachments.erase(it) : std::next(it);
  }
}

namespace {

using Exits = std::vector<std::pair<std::string, std::uint64_t>>;

Verdict heredity_fail(VertexRef member, VertexRef succ) {
  Witness w;
  w.kind = "heredity_violation";
  w.vertex = std::move(member);
  w.anchor = std::move(succ);
  w.detail = w.vertex->str() + " is a member but reaches non-member " +
             w.anchor->str();
  return Verdict::no(std::move(w));
}

Verdict saturation_fail(VertexRef forced) {
  Witness w;
  w.kind = "saturation_violation";
  w.vertex = std::move(forced);
  w.detail = "non-singular " + w.vertex->str() +
             " has every successor in the set but is not a member";
  return Verdict::no(std::move(w));
}

// Exit lists whose targets must all be members once `from` is.
std::optional<Verdict> check_exits_in(const VertexSet& H, const Exits& exits,
                                      const VertexRef& from) {
  for (const auto& [z, n] : exits) {
    (void)n;
    if (!H.base.count(z)) return heredity_fail(from, VertexRef::base(z));
  }
  return std::nullopt;
}

}  // namespace

Verdict is_hereditary(const GraphPresentation& g, const VertexSet& H) {
  for (const auto& v : H.base) {
    for (const auto& e : g.base.edges)
      if (e.src == v && !H.base.count(e.dst))
        return heredity_fail(VertexRef::base(v), VertexRef::base(e.dst));
    if (const Fan* f = g.fan_at(v); f && !H.fans.count(f->id))
      return heredity_fail(VertexRef::base(v), VertexRef::fan_copy(f->id));
    if (const Tail* t = g.tail_at(v); t && H.threshold(t->id) > 1)
      return heredity_fail(VertexRef::base(v), VertexRef::tail_pos(t->id, 1));
  }
  for (const auto& fid : H.fans) {
    const Fan* f = g.fan_by_id(fid);
    if (!f) continue;
    if (auto bad = check_exits_in(H, f->exits, VertexRef::fan_copy(fid)))
      return *bad;
  }
  for (const auto& [tid, k] : H.tails) {
    const Tail* t = g.tail_by_id(tid);
    if (!t || k == kNoPositions) continue;
    for (std::uint64_t j = k; j <= t->preamble.size(); ++j) {
      const TailStep& s = t->preamble[j - 1];
      if (auto bad = check_exits_in(H, s.exits, VertexRef::tail_pos(tid, j)))
        return *bad;
      for (std::size_t a = 0; a < s.attachments.size(); ++a)
        if (auto bad = check_exits_in(H, s.attachments[a].exits,
                                      VertexRef::attached(tid, j, false, a)))
          return *bad;
    }
    // Positions above any finite threshold hit every period residue.
    for (std::uint64_t r = 0; r < t->period.size(); ++r) {
      const TailStep& s = t->period[r];
      if (auto bad = check_exits_in(H, s.exits, VertexRef::tail_res(tid, r)))
        return *bad;
      for (std::size_t a = 0; a < s.attachments.size(); ++a)
        if (auto bad = check_exits_in(H, s.attachments[a].exits,
                                      VertexRef::attached(tid, r, true, a)))
          return *bad;
    }
  }
  for (const auto& k : H.attachments) {
    const Tail* t = g.tail_by_id(k.tail);
    if (!t) continue;
    const TailStep& s = k.residue ? t->period[k.pos] : t->preamble[k.pos - 1];
    if (auto bad = check_exits_in(H, s.attachments[k.slot].exits,
                                  VertexRef::attached(k.tail, k.pos, k.residue,
                                                      k.slot)))
      return *bad;
  }
  return Verdict::yes();
}

Verdict is_saturated(const GraphPresentation& g, const VertexSet& H) {
  auto in_base = [&](const std::string& v) { return H.base.count(v) > 0; };

  for (const auto& v : g.base.vertices) {
    if (in_base(v)) continue;
    if (g.fan_at(v)) continue;  // infinite emitter: exempt
    bool has_succ = false, all_in = true, infinite = false;
    for (const auto& e : g.base.edges)
      if (e.src == v) {
        has_succ = true;
        if (e.mult.omega) infinite = true;
        if (!in_base(e.dst)) all_in = false;
      }
    if (const Tail* t = g.tail_at(v)) {
      has_succ = true;
      if (H.threshold(t->id) > 1) all_in = false;
    }
    if (has_succ && !infinite && all_in)
      return saturation_fail(VertexRef::base(v));
  }

  for (const auto& f : g.fans) {
    if (H.fans.count(f.id) || f.sink()) continue;
    bool all_in = true;
    for (const auto& [z, n] : f.exits) {
      (void)n;
      if (!in_base(z)) all_in = false;
    }
    if (all_in) return saturation_fail(VertexRef::fan_copy(f.id));
  }

  auto attachments_in = [&](const std::string& tid, std::uint64_t pos,
                            bool residue, const TailStep& s) {
    for (std::size_t a = 0; a < s.attachments.size(); ++a)
      if (!H.contains(g, VertexRef::attached(tid, pos, residue, a)))
        return false;
    return true;
  };

  for (const auto& t : g.tails) {
    std::uint64_t k = H.threshold(t.id);
    // Only the position just below a finite threshold has its forward
    // successor inside the set.
    if (k >= 2 && k != kNoPositions) {
      std::uint64_t p = k - 1;
      const TailStep& s = t.step(p);
      bool residue = p > t.preamble.size();
      std::uint64_t pr = residue ? (p - t.preamble.size() - 1) % t.period.size()
                                 : p;
      bool all_in = attachments_in(t.id, pr, residue, s);
      for (const auto& [z, n] : s.exits) {
        (void)n;
        if (!in_base(z)) all_in = false;
      }
      if (all_in) return saturation_fail(VertexRef::tail_pos(t.id, p));
    }
    auto check_att = [&](std::uint64_t pos, bool residue, const TailStep& s)
        -> std::optional<Verdict> {
      for (std::size_t a = 0; a < s.attachments.size(); ++a) {
        const AttachedVertex& av = s.attachments[a];
        if (av.sink()) continue;  // singular: exempt
        VertexRef ref = VertexRef::attached(t.id, pos, residue, a);
        bool some_instance_out =
            residue ? !H.attachments.count({t.id, pos, true, a}) &&
                          H.threshold(t.id) > t.preamble.size() + 1 + pos
                    : !H.contains(g, ref);
        if (!some_instance_out) continue;
        bool all_in = true;
        for (const auto& [z, n] : av.exits) {
          (void)n;
          if (!in_base(z)) all_in = false;
        }
        if (all_in) return saturation_fail(ref);
      }
      return std::nullopt;
    };
    for (std::uint64_t j = 1; j <= t.preamble.size(); ++j)
      if (auto bad = check_att(j, false, t.preamble[j - 1])) return *bad;
    for (std::uint64_t r = 0; r < t.period.size(); ++r)
      if (auto bad = check_att(r, true, t.period[r])) return *bad;
  }
  return Verdict::yes();
}

VertexSet hereditary_closure(const GraphPresentation& g, const VertexSet& X) {
  VertexSet H = X;
  bool changed = true;
  auto add_base = [&](const std::string& v) {
    if (H.base.insert(v).second) changed = true;
  };
  auto add_exits = [&](const Exits& exits) {
    for (const auto& [z, n] : exits) {
      (void)n;
      add_base(z);
    }
  };
  while (changed) {
    changed = false;
    for (const auto& v : std::set<std::string>(H.base)) {
      for (const auto& e : g.base.edges)
        if (e.src == v) add_base(e.dst);
      if (const Fan* f = g.fan_at(v))
        if (H.fans.insert(f->id).second) changed = true;
      if (const Tail* t = g.tail_at(v))
        if (H.threshold(t->id) > 1) {
          H.tails[t->id] = 1;
          changed = true;
        }
    }
    for (const auto& fid : H.fans)
      if (const Fan* f = g.fan_by_id(fid)) add_exits(f->exits);
    for (const auto& [tid, k] : H.tails) {
      const Tail* t = g.tail_by_id(tid);
      if (!t || k == kNoPositions) continue;
      for (std::uint64_t j = k; j <= t->preamble.size(); ++j) {
        add_exits(t->preamble[j - 1].exits);
        for (const auto& a : t->preamble[j - 1].attachments) add_exits(a.exits);
      }
      for (const auto& s : t->period) {
        add_exits(s.exits);
        for (const auto& a : s.attachments) add_exits(a.exits);
      }
    }
    for (const auto& k : H.attachments) {
      const Tail* t = g.tail_by_id(k.tail);
      if (!t) continue;
      const TailStep& s = k.residue ? t->period[k.pos] : t->preamble[k.pos - 1];
      add_exits(s.attachments[k.slot].exits);
    }
  }
  H.canonicalize(g);
  return H;
}

VertexSet saturation(const GraphPresentation& g, const VertexSet& Hin) {
  if (Verdict v = is_hereditary(g, Hin); !v.holds)
    throw std::invalid_argument("saturation requires a hereditary set: " +
                                v.witness->detail);
  VertexSet H = Hin;
  while (true) {
    Verdict v = is_saturated(g, H);
    if (v.holds) break;
    const VertexRef& forced = *v.witness->vertex;
    switch (forced.kind) {
      case VertexRef::Kind::Base:
        H.base.insert(forced.name);
        break;
      case VertexRef::Kind::FanCopy:
        H.fans.insert(forced.name);
        break;
      case VertexRef::Kind::TailVertex:
        H.tails[forced.name] = forced.pos;
        break;
      case VertexRef::Kind::Attached:
        H.attachments.insert({forced.name, forced.pos, forced.residue,
                              forced.slot});
        break;
    }
  }
  H.canonicalize(g);
  return H;
}

namespace {

// Node-level membership facts for the maximal-tail clauses.  `any` is true
// when at least one instance of the node belongs to the set, `all` when
// every instance does; `multi` marks nodes standing for infinitely many
// vertices (fan copies, period positions, period attachments).
struct NodeMembership {
  bool any = false, all = false, multi = false;
};

std::vector<NodeMembership> node_membership(const GraphPresentation& g,
                                            const Skeleton& sk,
                                            const VertexSet& s) {
  std::vector<NodeMembership> m(sk.size());
  for (int i = 0; i < sk.size(); ++i) {
    const VertexRef& r = sk.ref(i);
    NodeMembership& n = m[i];
    switch (r.kind) {
      case VertexRef::Kind::Base:
        n.any = n.all = s.base.count(r.name) > 0;
        break;
      case VertexRef::Kind::FanCopy:
        n.any = n.all = s.fans.count(r.name) > 0;
        n.multi = true;
        break;
      case VertexRef::Kind::TailVertex:
        if (!r.residue) {
          n.any = n.all = s.contains_position(r.name, r.pos);
        } else {
          std::uint64_t thr = s.threshold(r.name);
          n.any = thr != kNoPositions;
          n.all = s.contains(g, r);
          n.multi = true;
        }
        break;
      case VertexRef::Kind::Attached: {
        bool flag = s.attachments.count({r.name, r.pos, r.residue, r.slot});
        if (!r.residue) {
          n.any = n.all = flag || s.contains_position(r.name, r.pos);
        } else {
          std::uint64_t thr = s.threshold(r.name);
          n.any = flag || thr != kNoPositions;
          n.all = flag || s.contains(g, r);
          n.multi = true;
        }
        break;
      }
    }
  }
  return m;
}

}  // namespace

Verdict is_maximal_tail(const GraphPresentation& g, const VertexSet& gamma) {
  Skeleton sk(g);
  auto mem = node_membership(g, sk, gamma);

  auto fail = [&](const char* clause, const VertexRef& a,
                  std::optional<VertexRef> b) {
    Witness w;
    w.kind = "maximal_tail_violation";
    w.vertex = a;
    w.anchor = std::move(b);
    w.detail = std::string("clause (") + clause + ") fails at " + a.str() +
               (w.anchor ? " / " + w.anchor->str() : "");
    return Verdict::no(std::move(w));
  };

  auto nonrefl_reach = [&](int u, int z) {
    for (const auto& e : sk.out(u))
      if (sk.reaches(e.to, z)) return true;
    return false;
  };

  // (a) any two members co-reach a common member; for two instances of the
  // same multi-instance node the common target must lie past a real edge.
  std::vector<int> members;
  for (int i = 0; i < sk.size(); ++i)
    if (mem[i].any) members.push_back(i);
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a; b < members.size(); ++b) {
      int u = members[a], v = members[b];
      if (u == v && !mem[u].multi) continue;
      bool self = u == v;
      bool ok = false;
      for (int z : members) {
        bool ru = self ? nonrefl_reach(u, z) : sk.reaches(u, z);
        bool rv = self ? nonrefl_reach(v, z) : sk.reaches(v, z);
        if (ru && rv) {
          ok = true;
          break;
        }
      }
      if (!ok) return fail("a", sk.ref(u), sk.ref(v));
    }

  // (b) every member emits an edge landing in the set.  Positions with a
  // suffix threshold always do (the forward edge); others are checked.
  for (int u : members) {
    const VertexRef& r = sk.ref(u);
    if (r.kind == VertexRef::Kind::TailVertex) continue;
    bool ok = false;
    for (const auto& e : sk.out(u))
      if (mem[e.to].any) {
        // The forward/entry edge lands in the set only if the next position
        // itself is a member.
        if (e.tag == Skeleton::Edge::Tag::Entry ||
            e.tag == Skeleton::Edge::Tag::Forward ||
            e.tag == Skeleton::Edge::Tag::Attach) {
          if (mem[e.to].all || gamma.contains(g, sk.ref(e.to))) ok = true;
        } else {
          ok = true;
        }
      }
    if (!ok) return fail("b", r, std::nullopt);
  }

  // (c) upward closure: nothing outside the set reaches into it.
  for (int u = 0; u < sk.size(); ++u) {
    if (mem[u].all) continue;  // no instance outside
    for (int z : members)
      if (sk.reaches(u, z) && !(u == z && !mem[u].multi))
        return fail("c", sk.ref(u), sk.ref(z));
  }
  return Verdict::yes();
}

namespace {

std::string fresh_name(const GraphPresentation& g, std::string name) {
  while (g.base.has_vertex(name)) name += "_";
  return name;
}

Exits filter_exits(const Exits& exits, const std::set<std::string>& keep) {
  Exits out;
  for (const auto& [z, n] : exits)
    if (keep.count(z)) out.push_back({z, n});
  return out;
}

// Re-roots the suffix of `t` from position `start` into `out`: positions up
// to a seam become explicit base vertices, then the rest re-attaches as a
// tail.  The seam is the first position at or past `start` whose forward
// multiplicity is 1 (searching one period past the preamble); when every
// candidate has forward >= 2 the seam multiplicity is normalized to 1,
// which never changes circuit structure, exits, or any finiteness verdict
// (the period still carries the original forward multiplicities).
// Returns the name of the vertex standing for position `start`.
std::string materialize_suffix(GraphPresentation& out,
                               const GraphPresentation& g, const Tail& t,
                               std::uint64_t start,
                               const std::set<std::string>& keep,
                               const VertexSet* H) {
  std::uint64_t P = t.preamble.size(), m = t.period.size();
  std::uint64_t limit = std::max(start, P) + m;
  std::uint64_t seam = 0;
  for (std::uint64_t j = start; j <= limit; ++j)
    if (t.step(j).forward == 1) {
      seam = j;
      break;
    }
  if (seam == 0) seam = std::max(start, P + 1);  // normalized seam

  auto name_of = [&](std::uint64_t pos) {
    return fresh_name(out, t.id + "." + std::to_string(pos));
  };
  std::vector<std::string> names;
  for (std::uint64_t j = start; j <= seam; ++j) {
    std::string v = name_of(j);
    out.base.vertices.push_back(v);
    names.push_back(v);
  }
  for (std::uint64_t j = start; j <= seam; ++j) {
    const TailStep& s = t.step(j);
    const std::string& v = names[j - start];
    if (j < seam)
      out.base.edges.push_back(
          {v, names[j - start + 1], Multiplicity::fin(s.forward)});
    for (const auto& [z, n] : filter_exits(s.exits, keep))
      out.base.edges.push_back({v, z, Multiplicity::fin(n)});
    for (std::size_t a = 0; a < s.attachments.size(); ++a) {
      bool keep_att = true;
      if (H) {
        bool residue = j > P;
        std::uint64_t pr = residue ? (j - P - 1) % m : j;
        keep_att = H->contains(g, VertexRef::attached(t.id, pr, residue, a));
      }
      if (!keep_att) continue;
      std::string av = fresh_name(out, v + "a" + std::to_string(a));
      out.base.vertices.push_back(av);
      out.base.edges.push_back({v, av, Multiplicity::fin(1)});
      for (const auto& [z, n] : filter_exits(s.attachments[a].exits, keep))
        out.base.edges.push_back({av, z, Multiplicity::fin(n)});
    }
  }
  // Remaining steps re-attach at the seam vertex as a rotated tail.
  Tail nt;
  nt.id = t.id;
  nt.origin = names.back();
  if (seam < P) {
    for (std::uint64_t j = seam + 1; j <= P; ++j)
      nt.preamble.push_back(t.preamble[j - 1]);
    nt.period = t.period;
  } else {
    std::uint64_t r0 = (seam - P) % m;  // residue of position seam + 1
    for (std::uint64_t i = 0; i < m; ++i)
      nt.period.push_back(t.period[(r0 + i) % m]);
  }
  if (H) {
    // Filter exits of the re-attached steps.
    auto filter_steps = [&](std::vector<TailStep>& steps) {
      for (auto& s : steps) {
        s.exits = filter_exits(s.exits, keep);
        for (auto& a : s.attachments) a.exits = filter_exits(a.exits, keep);
      }
    };
    filter_steps(nt.preamble);
    filter_steps(nt.period);
  }
  out.tails.push_back(std::move(nt));
  return names.front();
}

}  // namespace

GraphPresentation graph_on(const GraphPresentation& g, const VertexSet& H) {
  GraphPresentation out;
  for (const auto& v : g.base.vertices)
    if (H.base.count(v)) out.base.vertices.push_back(v);
  std::set<std::string> keep(out.base.vertices.begin(),
                             out.base.vertices.end());
  for (const auto& e : g.base.edges)
    if (keep.count(e.src) && keep.count(e.dst)) out.base.edges.push_back(e);
  for (const auto& f : g.fans) {
    if (!H.fans.count(f.id)) continue;
    if (keep.count(f.emitter)) {
      Fan nf = f;
      nf.exits = filter_exits(f.exits, keep);
      out.fans.push_back(std::move(nf));
    } else {
      // Copies without their emitter: all copies are isomorphic and
      // unreachable from each other, so one representative preserves every
      // per-class count.
      std::string rep = fresh_name(out, f.id);
      out.base.vertices.push_back(rep);
      for (const auto& [z, n] : filter_exits(f.exits, keep))
        out.base.edges.push_back({rep, z, Multiplicity::fin(n)});
    }
  }
  for (const auto& t : g.tails) {
    std::uint64_t k = H.threshold(t.id);
    if (k == kNoPositions) continue;
    if (k == 1 && keep.count(t.origin)) {
      Tail nt = t;
      auto filter_steps = [&](std::vector<TailStep>& steps) {
        for (auto& s : steps) {
          s.exits = filter_exits(s.exits, keep);
          for (auto& a : s.attachments) a.exits = filter_exits(a.exits, keep);
        }
      };
      filter_steps(nt.preamble);
      filter_steps(nt.period);
      out.tails.push_back(std::move(nt));
    } else {
      materialize_suffix(out, g, t, std::max<std::uint64_t>(k, 1), keep, &H);
    }
  }
  // Individually flagged attachments whose position is outside the set.
  for (const auto& a : H.attachments) {
    const Tail* t = g.tail_by_id(a.tail);
    if (!t) continue;
    bool pos_in = H.contains(g, a.residue ? VertexRef::tail_res(a.tail, a.pos)
                                          : VertexRef::tail_pos(a.tail, a.pos));
    if (pos_in) continue;
    const TailStep& s = a.residue ? t->period[a.pos] : t->preamble[a.pos - 1];
    std::string av = fresh_name(out, a.tail + "." + std::to_string(a.pos) +
                                         "a" + std::to_string(a.slot));
    out.base.vertices.push_back(av);
    for (const auto& [z, n] : filter_exits(s.attachments[a.slot].exits, keep))
      out.base.edges.push_back({av, z, Multiplicity::fin(n)});
  }
  return out;
}

GraphPresentation quotient(const GraphPresentation& g, const VertexSet& H) {
  if (Verdict v = is_hereditary(g, H); !v.holds)
    throw std::invalid_argument("quotient requires a hereditary set: " +
                                v.witness->detail);
  if (Verdict v = is_saturated(g, H); !v.holds)
    throw std::invalid_argument("quotient requires a saturated set: " +
                                v.witness->detail);

  GraphPresentation out;
  for (const auto& v : g.base.vertices)
    if (!H.base.count(v)) out.base.vertices.push_back(v);
  std::set<std::string> keep(out.base.vertices.begin(),
                             out.base.vertices.end());
  for (const auto& e : g.base.edges)
    if (keep.count(e.src) && keep.count(e.dst)) out.base.edges.push_back(e);
  for (const auto& f : g.fans) {
    if (H.fans.count(f.id)) continue;  // heredity keeps the emitter out of H
    Fan nf = f;
    nf.exits = filter_exits(f.exits, keep);
    out.fans.push_back(std::move(nf));
  }
  for (const auto& t : g.tails) {
    std::uint64_t k = H.threshold(t.id);
    if (k == 1) continue;  // whole tail deleted; origin loses its entry edge
    if (k == kNoPositions) {
      Tail nt = t;
      auto filter_steps = [&](std::vector<TailStep>& steps, bool residue,
                              std::uint64_t base_pos) {
        for (std::uint64_t i = 0; i < steps.size(); ++i) {
          TailStep& s = steps[i];
          s.exits = filter_exits(s.exits, keep);
          std::vector<AttachedVertex> kept;
          for (std::size_t a = 0; a < s.attachments.size(); ++a) {
            if (H.contains(g, VertexRef::attached(t.id, base_pos + i, residue,
                                                  a)))
              continue;  // attachment deleted with its edge
            AttachedVertex av = s.attachments[a];
            av.exits = filter_exits(av.exits, keep);
            kept.push_back(std::move(av));
          }
          s.attachments = std::move(kept);
        }
      };
      filter_steps(nt.preamble, false, 1);
      filter_steps(nt.period, true, 0);
      out.tails.push_back(std::move(nt));
      continue;
    }
    // Finite threshold > 1: the prefix survives as a base chain.
    std::vector<std::string> names;
    for (std::uint64_t j = 1; j < k; ++j) {
      std::string v = fresh_name(out, t.id + "." + std::to_string(j));
      out.base.vertices.push_back(v);
      names.push_back(v);
    }
    out.base.edges.push_back({t.origin, names.front(), Multiplicity::fin(1)});
    for (std::uint64_t j = 1; j < k; ++j) {
      const TailStep& s = t.step(j);
      const std::string& v = names[j - 1];
      if (j + 1 < k)
        out.base.edges.push_back({v, names[j], Multiplicity::fin(s.forward)});
      for (const auto& [z, n] : filter_exits(s.exits, keep))
        out.base.edges.push_back({v, z, Multiplicity::fin(n)});
      bool residue = j > t.preamble.size();
      std::uint64_t pr =
          residue ? (j - t.preamble.size() - 1) % t.period.size() : j;
      for (std::size_t a = 0; a < s.attachments.size(); ++a) {
        if (H.contains(g, VertexRef::attached(t.id, pr, residue, a))) continue;
        std::string av = fresh_name(out, v + "a" + std::to_string(a));
        out.base.vertices.push_back(av);
        out.base.edges.push_back({v, av, Multiplicity::fin(1)});
        for (const auto& [z, n] :
             filter_exits(s.attachments[a].exits, keep))
          out.base.edges.push_back({av, z, Multiplicity::fin(n)});
      }
    }
  }
  return out;
}

VertexSet vertex_set_from_nodes(const GraphPresentation& g, const Skeleton& sk,
                                const std::vector<bool>& in) {
  VertexSet H;
  for (int i = 0; i < sk.size(); ++i) {
    if (!in[i]) continue;
    const VertexRef& r = sk.ref(i);
    switch (r.kind) {
      case VertexRef::Kind::Base:
        H.base.insert(r.name);
        break;
      case VertexRef::Kind::FanCopy:
        H.fans.insert(r.name);
        break;
      case VertexRef::Kind::TailVertex: {
        const Tail* t = g.tail_by_id(r.name);
        std::uint64_t pos = r.residue ? t->preamble.size() + 1 + r.pos : r.pos;
        auto it = H.tails.find(r.name);
        if (it == H.tails.end() || it->second > pos) H.tails[r.name] = pos;
        break;
      }
      case VertexRef::Kind::Attached:
        H.attachments.insert({r.name, r.pos, r.residue, r.slot});
        break;
    }
  }
  H.canonicalize(g);
  return H;
}

GraphPresentation view_subgraph(const GraphPresentation& g,
                                const VertexRef& v) {
  Skeleton sk(g);
  int vi = sk.index(v);
  if (vi < 0) throw std::invalid_argument("unknown vertex: " + v.str());
  const VertexRef& r = sk.ref(vi);

  if (r.kind != VertexRef::Kind::Base) {
    // If the construct can be re-entered, the view collapses to the view of
    // its entry vertex.
    const std::string entry = r.kind == VertexRef::Kind::FanCopy
                                  ? g.fan_by_id(r.name)->emitter
                                  : g.tail_by_id(r.name)->origin;
    if (sk.reaches(vi, sk.base_index(entry)))
      return view_subgraph(g, VertexRef::base(entry));
  }

  std::vector<bool> in(sk.size(), false);
  for (int i = 0; i < sk.size(); ++i) in[i] = sk.reaches(vi, i);

  if (r.kind == VertexRef::Kind::Base ||
      r.kind == VertexRef::Kind::TailVertex) {
    VertexSet H = vertex_set_from_nodes(g, sk, in);
    return graph_on(g, H);
  }

  // Root is a fan copy or attachment that cannot re-enter: a fresh base
  // vertex carrying its exits, over the view of the exit targets.
  in[vi] = false;
  VertexSet H = vertex_set_from_nodes(g, sk, in);
  GraphPresentation out = graph_on(g, H);
  std::set<std::string> keep(out.base.vertices.begin(),
                             out.base.vertices.end());
  std::string root = fresh_name(out, r.kind == VertexRef::Kind::FanCopy
                                         ? r.name
                                         : r.str());
  out.base.vertices.push_back(root);
  const Exits* exits = nullptr;
  if (r.kind == VertexRef::Kind::FanCopy) {
    exits = &g.fan_by_id(r.name)->exits;
  } else {
    const Tail* t = g.tail_by_id(r.name);
    const TailStep& s = r.residue ? t->period[r.pos] : t->preamble[r.pos - 1];
    exits = &s.attachments[r.slot].exits;
  }
  for (const auto& [z, n] : filter_exits(*exits, keep))
    out.base.edges.push_back({root, z, Multiplicity::fin(n)});
  return out;
}

GraphPresentation view_subgraph_excluding(const GraphPresentation& g,
                                          const std::string& v,
                                          const std::set<std::string>& excluded,
                                          bool exclude_tail_entry) {
  Skeleton sk(g);
  int vi = sk.base_index(v);
  if (vi < 0) throw std::invalid_argument("unknown vertex: " + v);
  for (const auto& z : excluded) {
    bool found = false;
    for (const auto& e : g.base.edges)
      if (e.src == v && e.dst == z) found = true;
    if (!found)
      throw std::invalid_argument("excluded edge " + v + " -> " + z +
                                  " does not exist");
  }

  std::vector<bool> in(sk.size(), false);
  in[vi] = true;
  for (const auto& e : sk.out(vi)) {
    if (e.tag == Skeleton::Edge::Tag::Base &&
        excluded.count(sk.ref(e.to).name))
      continue;
    if (e.tag == Skeleton::Edge::Tag::Entry && exclude_tail_entry) continue;
    for (int i = 0; i < sk.size(); ++i)
      if (sk.reaches(e.to, i)) in[i] = true;
  }
  VertexSet H = vertex_set_from_nodes(g, sk, in);
  return graph_on(g, H);
}

std::set<std::string> compute_B_H(const GraphPresentation& g,
                                  const VertexSet& H) {
  if (Verdict v = is_hereditary(g, H); !v.holds)
    throw std::invalid_argument("B_H requires a hereditary set: " +
                                v.witness->detail);
  if (Verdict v = is_saturated(g, H); !v.holds)
    throw std::invalid_argument("B_H requires a saturated set: " +
                                v.witness->detail);
  std::set<std::string> out;
  for (const auto& v : g.base.vertices) {
    bool into_h_infinitely = false, out_infinite = false;
    Count finite_out = Count::fin(0);
    for (const auto& e : g.base.edges) {
      if (e.src != v) continue;
      bool in_h = H.base.count(e.dst) > 0;
      if (e.mult.omega) {
        (in_h ? into_h_infinitely : out_infinite) = true;
      } else if (!in_h) {
        finite_out += Count::fin(e.mult.n);
      }
    }
    if (const Fan* f = g.fan_at(v)) {
      if (H.fans.count(f->id))
        into_h_infinitely = true;
      else
        out_infinite = true;
    }
    if (const Tail* t = g.tail_at(v))
      if (H.threshold(t->id) > 1) finite_out += Count::fin(1);
    if (into_h_infinitely && !out_infinite && !finite_out.is_zero())
      out.insert(v);
  }
  return out;
}

std::vector<VertexSet> enumerate_hereditary_saturated(
    const GraphPresentation& g) {
  // Dimensions of the candidate product space.
  std::vector<std::string> base(g.base.vertices);
  std::vector<std::string> fans;
  for (const auto& f : g.fans) fans.push_back(f.id);
  struct TailDim {
    std::string id;
    std::vector<std::uint64_t> candidates;
  };
  std::vector<TailDim> tails;
  for (const auto& t : g.tails) {
    TailDim d{t.id, {}};
    for (std::uint64_t k = 1; k <= t.preamble.size() + t.period.size() + 1;
         ++k)
      d.candidates.push_back(k);
    d.candidates.push_back(kNoPositions);
    tails.push_back(std::move(d));
  }
  std::vector<AttachKey> atts;
  for (const auto& t : g.tails) {
    for (std::uint64_t j = 1; j <= t.preamble.size(); ++j)
      for (std::size_t a = 0; a < t.preamble[j - 1].attachments.size(); ++a)
        atts.push_back({t.id, j, false, a});
    for (std::uint64_t r = 0; r < t.period.size(); ++r)
      for (std::size_t a = 0; a < t.period[r].attachments.size(); ++a)
        atts.push_back({t.id, r, true, a});
  }

  double combos = 1;
  for (std::size_t i = 0; i < base.size() + fans.size() + atts.size(); ++i)
    combos *= 2;
  for (const auto& d : tails) combos *= static_cast<double>(d.candidates.size());
  if (combos > double(1 << 22))
    throw std::invalid_argument(
        "presentation too large for exhaustive hereditary/saturated "
        "enumeration");

  std::vector<VertexSet> out;
  std::set<VertexSet> seen;
  std::vector<std::size_t> odo(base.size() + fans.size() + tails.size() +
                               atts.size());
  auto radix = [&](std::size_t i) -> std::size_t {
    if (i < base.size() + fans.size()) return 2;
    if (i < base.size() + fans.size() + tails.size())
      return tails[i - base.size() - fans.size()].candidates.size();
    return 2;
  };
  while (true) {
    VertexSet H;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (odo[i]) H.base.insert(base[i]);
    for (std::size_t i = 0; i < fans.size(); ++i)
      if (odo[base.size() + i]) H.fans.insert(fans[i]);
    for (std::size_t i = 0; i < tails.size(); ++i) {
      std::uint64_t k = tails[i].candidates[odo[base.size() + fans.size() + i]];
      if (k != kNoPositions) H.tails[tails[i].id] = k;
    }
    for (std::size_t i = 0; i < atts.size(); ++i)
      if (odo[base.size() + fans.size() + tails.size() + i])
        H.attachments.insert(atts[i]);
    H.canonicalize(g);
    if (!seen.count(H) && is_hereditary(g, H).holds &&
        is_saturated(g, H).holds) {
      seen.insert(H);
      out.push_back(std::move(H));
    }
    std::size_t i = 0;
    for (; i < odo.size(); ++i) {
      if (++odo[i] < radix(i)) break;
      odo[i] = 0;
    }
    if (i == odo.size()) break;
  }
  return out;
}

bool set_leq(const GraphPresentation& g, const VertexSet& A,
             const VertexSet& B) {
  for (const auto& v : A.base)
    if (!B.base.count(v)) return false;
  for (const auto& f : A.fans)
    if (!B.fans.count(f)) return false;
  for (const auto& t : g.tails)
    if (A.threshold(t.id) < B.threshold(t.id)) return false;
  for (const auto& k : A.attachments) {
    if (B.attachments.count(k)) continue;
    if (!B.contains(g, VertexRef::attached(k.tail, k.pos, k.residue, k.slot)))
      return false;
  }
  return true;
}

bool pair_leq(const GraphPresentation& g, const IdealData& p,
              const IdealData& q) {
  if (!set_leq(g, p.H, q.H)) return false;
  for (const auto& v : p.S)
    if (!q.H.base.count(v) && !q.S.count(v)) return false;
  return true;
}

}  // namespace gca
