#include "gca/classify.hpp"

#include <algorithm>
#include <stdexcept>

#include "gca/skeleton.hpp"

namespace gca {

std::string EquivClassDescriptor::str() const {
  switch (kind) {
    case Kind::Singular:
      return "singular(" + singular.str() + ")";
    case Kind::TerminalCircuit:
      return "terminal_circuit(" + circuit.id + ")";
    case Kind::TailRay:
      return "tail_ray(" + tail + ")";
  }
  return "?";
}

namespace {

bool period_has_defect(const Tail& t) {
  for (const auto& s : t.period)
    if (s.forward >= 2) return true;
  return false;
}

bool period_has_escape(const Tail& t) {
  for (const auto& s : t.period) {
    if (!s.exits.empty()) return true;
    for (const auto& a : s.attachments)
      if (!a.exits.empty()) return true;
  }
  return false;
}

Witness circuit_witness(const Skeleton& sk, const Circuit& c,
                        const std::string& why) {
  Witness w;
  w.kind = "non_terminal_circuit";
  w.vertex = c.vertices.front();
  w.circuit = c.id;
  // Prefer an anchor beyond the circuit: path counts to it grow with the
  // length bound, which a terminal circuit cannot produce.
  std::vector<bool> on(sk.size(), false);
  for (const auto& r : c.vertices) on[sk.index(r)] = true;
  for (int i = 0; i < sk.size() && !w.anchor; ++i) {
    if (on[i]) continue;
    for (const auto& r : c.vertices)
      if (sk.reaches(sk.index(r), i)) {
        w.anchor = sk.ref(i);
        break;
      }
  }
  w.detail = why + " at circuit " + c.id + " through " +
             c.vertices.front().str();
  return w;
}

}  // namespace

Count rep_count(const GraphPresentation& g, const VertexRef& v,
                const EquivClassDescriptor& k) {
  switch (k.kind) {
    case EquivClassDescriptor::Kind::Singular:
      return path_count(g, v, k.singular);

    case EquivClassDescriptor::Kind::TerminalCircuit: {
      const Circuit& c = k.circuit;
      if (classify_circuit(g, c) != CircuitClass::Terminal)
        throw std::invalid_argument("circuit " + c.id +
                                    " is not terminal; its paths do not form "
                                    "a single class");
      // A terminal circuit consists of base vertices only (a tail position's
      // forward edge would be an exit).  Once hit, the continuation is
      // unique, so representatives correspond to first hits: count paths in
      // the graph with the circuit's out-edges removed.
      std::set<std::string> on;
      for (const auto& r : c.vertices) {
        if (r.kind != VertexRef::Kind::Base)
          throw std::invalid_argument("terminal circuit with non-base vertex");
        on.insert(r.name);
      }
      GraphPresentation trimmed = g;
      std::erase_if(trimmed.base.edges,
                    [&](const BaseEdge& e) { return on.count(e.src) > 0; });
      Count total = Count::fin(0);
      for (const auto& a : on)
        total += path_count(trimmed, v, VertexRef::base(a));
      return total;
    }

    case EquivClassDescriptor::Kind::TailRay: {
      const Tail* t = g.tail_by_id(k.tail);
      if (!t) throw std::invalid_argument("unknown tail: " + k.tail);
      std::uint64_t P = t->preamble.size();
      bool in_tail = (v.kind == VertexRef::Kind::TailVertex && v.name == t->id);
      Count pc = path_count(g, v, VertexRef::base(t->origin));
      if (pc.is_zero() && !in_tail) return Count::fin(0);
      if (pc.is_omega()) return Count::inf();
      if (period_has_defect(*t)) return Count::inf();
      // Every representative passes the origin one last time and then only
      // takes forward edges; period forwards are all 1 here.
      Count pre = Count::fin(1);
      for (const auto& s : t->preamble) pre *= Count::fin(s.forward);
      Count total = pc * pre;
      if (in_tail) {
        Count suffix = Count::fin(1);
        if (!v.residue)
          for (std::uint64_t j = v.pos; j <= P; ++j)
            suffix *= Count::fin(t->step(j).forward);
        total += suffix;
      }
      return total;
    }
  }
  return Count::fin(0);
}

Verdict is_condition_M(const GraphPresentation& g) {
  if (g.empty()) return Verdict::yes();
  Skeleton sk(g);

  std::vector<Circuit> circuits = enumerate_circuits(g);
  for (const auto& c : circuits)
    if (classify_circuit(g, c) != CircuitClass::Terminal)
      return Verdict::no(circuit_witness(sk, c, "non-terminal circuit"));

  for (const auto& e : g.base.edges)
    if (e.mult.omega) {
      Witness w;
      w.kind = "omega_edge";
      w.vertex = VertexRef::base(e.src);
      w.anchor = VertexRef::base(e.dst);
      w.detail = "infinitely many parallel edges " + e.src + " -> " + e.dst;
      return Verdict::no(std::move(w));
    }

  for (const auto& f : g.fans)
    if (!f.sink()) {
      Witness w;
      w.kind = "fan_crossing";
      w.vertex = VertexRef::base(f.emitter);
      w.anchor = VertexRef::base(f.exits.front().first);
      w.construct = f.id;
      w.detail = "infinitely many routes from " + f.emitter +
                 " through the copies of " + f.id + " to " +
                 f.exits.front().first;
      return Verdict::no(std::move(w));
    }

  for (const auto& t : g.tails) {
    for (std::uint64_t r = 0; r < t.period.size(); ++r) {
      const TailStep& s = t.period[r];
      if (s.forward >= 2) {
        Witness w;
        w.kind = "period_defect";
        w.vertex = VertexRef::tail_res(t.id, r);
        w.construct = t.id;
        w.detail = "tail " + t.id + " repeats a forward multiplicity of " +
                   std::to_string(s.forward);
        return Verdict::no(std::move(w));
      }
      if (!s.exits.empty()) {
        Witness w;
        w.kind = "period_escape";
        w.vertex = VertexRef::tail_res(t.id, r);
        w.anchor = VertexRef::base(s.exits.front().first);
        w.construct = t.id;
        w.detail = "tail " + t.id + " exits to " + s.exits.front().first +
                   " at every period repetition";
        return Verdict::no(std::move(w));
      }
      for (std::size_t a = 0; a < s.attachments.size(); ++a)
        if (!s.attachments[a].exits.empty()) {
          Witness w;
          w.kind = "period_escape";
          w.vertex = VertexRef::attached(t.id, r, true, a);
          w.anchor = VertexRef::base(s.attachments[a].exits.front().first);
          w.construct = t.id;
          w.detail = "tail " + t.id + " exits through an attachment to " +
                     s.attachments[a].exits.front().first +
                     " at every period repetition";
          return Verdict::no(std::move(w));
        }
    }
  }

  // The rules above are complete for this presentation class; the remaining
  // class inventory is finite, so sweep it as a hard internal check.
  std::vector<EquivClassDescriptor> classes;
  for (const auto& s : singular_vertices(g))
    classes.push_back(EquivClassDescriptor::singular_class(s));
  for (auto& c : circuits)
    classes.push_back(EquivClassDescriptor::terminal_circuit_class(c));
  for (const auto& t : g.tails)
    classes.push_back(EquivClassDescriptor::tail_ray_class(t.id));
  for (int i = 0; i < sk.size(); ++i)
    for (const auto& kappa : classes)
      if (rep_count(g, sk.ref(i), kappa).is_omega())
        throw std::logic_error("finiteness rule set missed an infinite class: " +
                               sk.ref(i).str() + " / " + kappa.str());
  return Verdict::yes();
}

Verdict is_liminal(const GraphPresentation& g) { return is_condition_M(g); }

std::pair<Verdict, Verdict> type_I_conditions(const GraphPresentation& g) {
  Verdict c1 = Verdict::yes();
  Verdict c2 = Verdict::yes();
  if (g.empty()) return {c1, c2};
  Skeleton sk(g);

  for (const auto& c : enumerate_circuits(g))
    if (classify_circuit(g, c) == CircuitClass::Neither) {
      c1 = Verdict::no(circuit_witness(
          sk, c, c.per_index ? "a vertex lies on infinitely many circuits"
                             : "circuit with a returning exit"));
      break;
    }

  for (const auto& f : g.fans) {
    int emitter = sk.base_index(f.emitter);
    std::uint64_t returning = 0;
    for (const auto& [z, n] : f.exits)
      if (sk.reaches(sk.base_index(z), emitter)) returning += n;
    if (returning >= 2) {
      Witness w;
      w.kind = "fan_reentry";
      w.vertex = VertexRef::fan_copy(f.id);
      w.anchor = VertexRef::base(f.emitter);
      w.construct = f.id;
      w.detail = "every copy of " + f.id + " emits " +
                 std::to_string(returning) + " edges returning to " +
                 f.emitter;
      c2 = Verdict::no(std::move(w));
      break;
    }
  }
  if (c2.holds)
    for (const auto& t : g.tails) {
      const Skeleton::TailInfo* info = sk.tail_info(t.id);
      auto returns = [&](const std::string& z) {
        return sk.reaches(sk.base_index(z), info->origin);
      };
      std::optional<Witness> w;
      for (std::uint64_t r = 0; r < t.period.size() && !w; ++r) {
        const TailStep& s = t.period[r];
        if (s.forward >= 2) {
          w.emplace();
          w->kind = "period_defect";
          w->vertex = VertexRef::tail_res(t.id, r);
          w->construct = t.id;
          w->detail = "every period repetition of " + t.id +
                      " emits parallel forward edges";
          break;
        }
        for (const auto& [z, n] : s.exits) {
          (void)n;
          if (returns(z)) {
            w.emplace();
            w->kind = "tail_reentry";
            w->vertex = VertexRef::tail_res(t.id, r);
            w->anchor = VertexRef::base(t.origin);
            w->construct = t.id;
            w->detail = "every period repetition of " + t.id +
                        " exits to " + z + ", which returns to " + t.origin;
            break;
          }
        }
        for (std::size_t a = 0; a < s.attachments.size() && !w; ++a)
          for (const auto& [z, n] : s.attachments[a].exits) {
            (void)n;
            if (returns(z)) {
              w.emplace();
              w->kind = "tail_reentry";
              w->vertex = VertexRef::attached(t.id, r, true, a);
              w->anchor = VertexRef::base(t.origin);
              w->construct = t.id;
              w->detail = "every period repetition of " + t.id +
                          " exits through an attachment to " + z +
                          ", which returns to " + t.origin;
              break;
            }
          }
      }
      if (w) {
        c2 = Verdict::no(std::move(*w));
        break;
      }
    }
  return {c1, c2};
}

Verdict is_type_I(const GraphPresentation& g) {
  auto [c1, c2] = type_I_conditions(g);
  if (!c1.holds) return c1;
  return c2;
}

Count n_lambda(const GraphPresentation& g,
               const EquivClassDescriptor& lambda) {
  Skeleton sk(g);
  switch (lambda.kind) {
    case EquivClassDescriptor::Kind::Singular:
      throw std::invalid_argument(
          "n_lambda requires an infinite-path class descriptor");

    case EquivClassDescriptor::Kind::TerminalCircuit: {
      const Circuit& c = lambda.circuit;
      // Count distinct circuit vertices emitting at least two edges whose
      // targets rejoin the circuit.  Multi-instance vertices that qualify
      // stand for infinitely many qualifying vertices.
      std::vector<int> on;
      for (const auto& r : c.vertices) {
        int i = sk.index(r);
        if (std::find(on.begin(), on.end(), i) == on.end()) on.push_back(i);
      }
      auto rejoins = [&](int z) {
        for (int i : on)
          if (z == i || sk.reaches(z, i)) return true;
        return false;
      };
      std::uint64_t count = 0;
      for (int u : on) {
        Count back = Count::fin(0);
        for (const auto& e : sk.out(u))
          if (rejoins(e.to)) back += e.mult.as_count();
        if (back.is_omega() || back.n >= 2) {
          const VertexRef& r = sk.ref(u);
          bool multi = r.kind == VertexRef::Kind::FanCopy ||
                       (r.kind == VertexRef::Kind::TailVertex && r.residue) ||
                       (r.kind == VertexRef::Kind::Attached && r.residue);
          if (multi && c.per_index) return Count::inf();
          ++count;
        }
      }
      return Count::fin(count);
    }

    case EquivClassDescriptor::Kind::TailRay: {
      const Tail* t = g.tail_by_id(lambda.tail);
      if (!t) throw std::invalid_argument("unknown tail: " + lambda.tail);
      const Skeleton::TailInfo* info = sk.tail_info(t->id);
      auto returns = [&](const std::string& z) {
        return sk.reaches(sk.base_index(z), info->origin);
      };
      // Infinitely many ray positions qualify iff a period step repeats a
      // defect: parallel forwards, a returning exit, or a returning
      // attachment.
      for (const auto& s : t->period) {
        if (s.forward >= 2) return Count::inf();
        for (const auto& [z, n] : s.exits) {
          (void)n;
          if (returns(z)) return Count::inf();
        }
        for (const auto& a : s.attachments)
          for (const auto& [z, n] : a.exits) {
            (void)n;
            if (returns(z)) return Count::inf();
          }
      }
      std::uint64_t count = 0;
      for (const auto& s : t->preamble) {
        Count back = Count::fin(s.forward);
        for (const auto& [z, n] : s.exits)
          if (returns(z)) back += Count::fin(n);
        for (const auto& a : s.attachments)
          for (const auto& [z, n] : a.exits) {
            (void)n;
            if (returns(z)) {
              back += Count::fin(1);  // the attachment edge re-enters the ray
              break;
            }
          }
        if (back.n >= 2) ++count;
      }
      // The origin: its entry edge plus anything returning to it.
      Count back = Count::fin(1);
      for (const auto& e : sk.out(info->origin)) {
        if (e.tag == Skeleton::Edge::Tag::Entry) continue;
        int z = e.to;
        if (z == info->origin || sk.reaches(z, info->origin))
          back += e.mult.as_count();
      }
      if (back.is_omega() || back.n >= 2) ++count;
      return Count::fin(count);
    }
  }
  return Count::fin(0);
}

namespace {

// H-members are the vertices that reach no "core": a node from which some
// class provably has infinitely many representatives.
IdealData ideal_from_cores(const GraphPresentation& g, const Skeleton& sk,
                           const std::vector<bool>& core) {
  std::vector<bool> in(sk.size(), true);
  for (int i = 0; i < sk.size(); ++i)
    for (int c = 0; c < sk.size(); ++c)
      if (core[c] && sk.reaches(i, c)) {
        in[i] = false;
        break;
      }
  IdealData out;
  out.H = vertex_set_from_nodes(g, sk, in);
  return out;
}

void mark_tail_core(const Skeleton& sk, const std::string& id,
                    std::vector<bool>& core) {
  const Skeleton::TailInfo* info = sk.tail_info(id);
  core[info->origin] = true;
  for (int i : info->pre) core[i] = true;
  for (int i : info->res) core[i] = true;
}

}  // namespace

IdealData largest_liminal_ideal(const GraphPresentation& g) {
  Skeleton sk(g);
  std::vector<bool> core(sk.size(), false);
  for (const auto& c : enumerate_circuits(g))
    if (classify_circuit(g, c) != CircuitClass::Terminal)
      for (const auto& r : c.vertices) core[sk.index(r)] = true;
  for (const auto& e : g.base.edges)
    if (e.mult.omega) core[sk.base_index(e.src)] = true;
  for (const auto& f : g.fans)
    if (!f.sink()) core[sk.base_index(f.emitter)] = true;
  for (const auto& t : g.tails)
    if (period_has_defect(t) || period_has_escape(t))
      mark_tail_core(sk, t.id, core);

  IdealData out = ideal_from_cores(g, sk, core);
  for (const auto& v : compute_B_H(g, out.H)) {
    std::set<std::string> excluded;
    for (const auto& e : g.base.edges)
      if (e.src == v && !e.mult.omega && !out.H.base.count(e.dst))
        excluded.insert(e.dst);
    const Tail* t = g.tail_at(v);
    bool drop_entry = t && out.H.threshold(t->id) > 1;
    if (is_condition_M(view_subgraph_excluding(g, v, excluded, drop_entry))
            .holds)
      out.S.insert(v);
  }
  return out;
}

IdealData largest_type_I_ideal(const GraphPresentation& g) {
  Skeleton sk(g);
  std::vector<bool> core(sk.size(), false);
  for (const auto& c : enumerate_circuits(g))
    if (classify_circuit(g, c) == CircuitClass::Neither)
      for (const auto& r : c.vertices) core[sk.index(r)] = true;
  for (const auto& f : g.fans) {
    int emitter = sk.base_index(f.emitter);
    std::uint64_t returning = 0;
    for (const auto& [z, n] : f.exits)
      if (sk.reaches(sk.base_index(z), emitter)) returning += n;
    if (returning >= 2) core[emitter] = true;
  }
  for (const auto& t : g.tails) {
    const Skeleton::TailInfo* info = sk.tail_info(t.id);
    auto returns = [&](const std::string& z) {
      return sk.reaches(sk.base_index(z), info->origin);
    };
    bool bad = period_has_defect(t);
    for (const auto& s : t.period) {
      for (const auto& [z, n] : s.exits) {
        (void)n;
        if (returns(z)) bad = true;
      }
      for (const auto& a : s.attachments)
        for (const auto& [z, n] : a.exits) {
          (void)n;
          if (returns(z)) bad = true;
        }
    }
    if (bad) mark_tail_core(sk, t.id, core);
  }

  IdealData out = ideal_from_cores(g, sk, core);
  out.S = compute_B_H(g, out.H);
  return out;
}

}  // namespace gca
