#include "gca/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gca/reach.hpp"

namespace gca {

namespace {

constexpr std::uint64_t kSat = std::uint64_t(1) << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r) || r > kSat) return kSat;
  return r;
}
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (a && __builtin_mul_overflow(a, b, &r)) return kSat;
  return std::min(a ? r : 0, kSat);
}

std::string pos_name(const std::string& tail, std::uint64_t k) {
  return tail + "." + std::to_string(k);
}

}  // namespace

Truncation truncate(const GraphPresentation& g, std::uint64_t copies,
                    std::uint64_t tail_len) {
  Truncation t;
  t.copies = copies;
  t.tail_len = tail_len;
  BaseGraph& out = t.explicit_graph.base;
  out.vertices = g.base.vertices;
  for (const auto& e : g.base.edges) {
    if (e.mult.omega) {
      out.edges.push_back({e.src, e.dst, Multiplicity::fin(copies)});
      t.truncated.push_back("omega edge " + e.src + " -> " + e.dst +
                            " cut to " + std::to_string(copies) + " slots");
    } else {
      out.edges.push_back(e);
    }
  }
  for (const auto& f : g.fans) {
    for (std::uint64_t i = 0; i < copies; ++i) {
      std::string c = f.id + "." + std::to_string(i);
      out.vertices.push_back(c);
      out.edges.push_back({f.emitter, c, Multiplicity::fin(1)});
      for (const auto& [z, n] : f.exits)
        out.edges.push_back({c, z, Multiplicity::fin(n)});
    }
    t.truncated.push_back("fan " + f.id + " cut to " +
                          std::to_string(copies) + " copies");
  }
  for (const auto& tl : g.tails) {
    std::string prev = tl.origin;
    for (std::uint64_t k = 1; k <= tail_len; ++k) {
      std::string v = pos_name(tl.id, k);
      out.vertices.push_back(v);
      std::uint64_t fwd = k == 1 ? 1 : tl.step(k - 1).forward;
      out.edges.push_back({prev, v, Multiplicity::fin(fwd)});
      const TailStep& s = tl.step(k);
      for (const auto& [z, n] : s.exits)
        out.edges.push_back({v, z, Multiplicity::fin(n)});
      for (std::size_t a = 0; a < s.attachments.size(); ++a) {
        std::string av = v + ".a" + std::to_string(a);
        out.vertices.push_back(av);
        out.edges.push_back({v, av, Multiplicity::fin(1)});
        for (const auto& [z, n] : s.attachments[a].exits)
          out.edges.push_back({av, z, Multiplicity::fin(n)});
      }
      prev = v;
    }
    t.truncated.push_back("tail " + tl.id + " cut after position " +
                          std::to_string(tail_len));
  }
  return t;
}

std::string truncation_name(const GraphPresentation& g, const Truncation& t,
                            const VertexRef& v) {
  switch (v.kind) {
    case VertexRef::Kind::Base:
      return v.name;
    case VertexRef::Kind::FanCopy:
      if (t.copies == 0) throw std::out_of_range("no copies materialized");
      return v.name + ".0";
    case VertexRef::Kind::TailVertex:
    case VertexRef::Kind::Attached: {
      const Tail* tl = g.tail_by_id(v.name);
      if (!tl) throw std::invalid_argument("unknown tail: " + v.name);
      std::uint64_t k =
          v.residue ? tl->preamble.size() + 1 + v.pos : v.pos;
      if (k > t.tail_len)
        throw std::out_of_range("position beyond the truncation");
      std::string n = pos_name(v.name, k);
      if (v.kind == VertexRef::Kind::Attached)
        n += ".a" + std::to_string(v.slot);
      return n;
    }
  }
  throw std::invalid_argument("bad vertex ref");
}

std::uint64_t brute_path_count(const Truncation& t, const std::string& v,
                               const std::string& w, std::uint64_t max_len) {
  const BaseGraph& b = t.explicit_graph.base;
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < b.vertices.size(); ++i) idx[b.vertices[i]] = i;
  auto vi = idx.find(v), wi = idx.find(w);
  if (vi == idx.end() || wi == idx.end())
    throw std::invalid_argument("unknown vertex in truncation");
  std::size_t n = b.vertices.size();
  std::vector<std::uint64_t> ways(n, 0), next(n, 0);
  ways[vi->second] = 1;
  std::uint64_t total = vi->second == wi->second ? 1 : 0;
  for (std::uint64_t l = 1; l <= max_len; ++l) {
    std::fill(next.begin(), next.end(), 0);
    for (const auto& e : b.edges) {
      std::uint64_t from = ways[idx[e.src]];
      if (!from) continue;
      std::size_t d = idx[e.dst];
      next[d] = sat_add(next[d], sat_mul(from, e.mult.n));
    }
    ways.swap(next);
    total = sat_add(total, ways[wi->second]);
  }
  return total;
}

std::vector<std::set<std::string>> brute_hereditary_saturated(
    const Truncation& t) {
  const BaseGraph& b = t.explicit_graph.base;
  std::size_t n = b.vertices.size();
  if (n > 20)
    throw std::invalid_argument("exhaustive subset filter needs <= 20 vertices");
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[b.vertices[i]] = i;
  std::vector<std::set<std::string>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    auto in = [&](std::size_t i) { return (mask >> i) & 1; };
    bool hereditary = true;
    for (const auto& e : b.edges)
      if (in(idx[e.src]) && !in(idx[e.dst])) hereditary = false;
    if (!hereditary) continue;
    bool saturated = true;
    for (std::size_t i = 0; i < n && saturated; ++i) {
      if (in(i)) continue;
      bool has_succ = false, all_in = true;
      for (const auto& e : b.edges)
        if (idx[e.src] == i) {
          has_succ = true;
          if (!in(idx[e.dst])) all_in = false;
        }
      if (has_succ && all_in) saturated = false;
    }
    if (!saturated) continue;
    std::set<std::string> s;
    for (std::size_t i = 0; i < n; ++i)
      if (in(i)) s.insert(b.vertices[i]);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

struct Scales {
  std::uint64_t copies, tail_len, max_len;
};

std::vector<Scales> replay_scales(const GraphPresentation& g) {
  std::uint64_t max_p = 0, max_m = 1;
  for (const auto& t : g.tails) {
    max_p = std::max<std::uint64_t>(max_p, t.preamble.size());
    max_m = std::max<std::uint64_t>(max_m, t.period.size());
  }
  std::vector<Scales> out;
  for (std::uint64_t k = 1; k <= 3; ++k)
    out.push_back({std::uint64_t(1) << k,  // 2, 4, 8 copies
                   max_p + max_m * k + 2, 0});
  return out;
}

bool strictly_increasing(const std::vector<std::uint64_t>& c) {
  // Counts at the saturation cap cannot be distinguished; the cap is far
  // beyond anything a non-growing family can reach, so it passes as growth.
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] <= c[i - 1] && c[i] < kSat) return false;
  return true;
}

// Counts v -> w across the three scales with a generous length bound.
std::vector<std::uint64_t> pump(const GraphPresentation& g, const VertexRef& v,
                                const VertexRef& w,
                                std::uint64_t len_factor = 1) {
  std::vector<std::uint64_t> counts;
  std::uint64_t round = 0;
  for (const Scales& s : replay_scales(g)) {
    ++round;
    Truncation t = truncate(g, s.copies, s.tail_len);
    std::uint64_t n = t.explicit_graph.base.vertices.size();
    std::uint64_t max_len = (n + 2) * round * len_factor;
    counts.push_back(brute_path_count(t, truncation_name(g, t, v),
                                      truncation_name(g, t, w), max_len));
  }
  return counts;
}

struct ReachInfo {
  std::map<std::string, std::size_t> idx;
  std::vector<std::vector<bool>> reach;
};

ReachInfo truncation_reach(const BaseGraph& b) {
  ReachInfo r;
  for (std::size_t i = 0; i < b.vertices.size(); ++i) r.idx[b.vertices[i]] = i;
  std::size_t n = b.vertices.size();
  r.reach.assign(n, std::vector<bool>(n, false));
  for (const auto& e : b.edges) r.reach[r.idx[e.src]][r.idx[e.dst]] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r.reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r.reach[k][j]) r.reach[i][j] = true;
  return r;
}

// Counts v -> w at each scale with a fixed small length bound, so growth can
// only come from materialized instances, never from pumping a circuit.
std::vector<std::uint64_t> pump_short(const GraphPresentation& g,
                                      const VertexRef& v, const VertexRef& w,
                                      std::uint64_t max_len) {
  std::vector<std::uint64_t> counts;
  for (const Scales& s : replay_scales(g)) {
    Truncation t = truncate(g, s.copies, s.tail_len);
    counts.push_back(brute_path_count(t, truncation_name(g, t, v),
                                      truncation_name(g, t, w), max_len));
  }
  return counts;
}

bool replay_circuit(const GraphPresentation& g, const Witness& w) {
  const Circuit* c = nullptr;
  std::vector<Circuit> all = enumerate_circuits(g);
  for (const auto& cand : all)
    if (w.circuit && cand.id == *w.circuit) c = &cand;
  if (!c) return false;
  for (const Scales& s : replay_scales(g)) {
    Truncation t = truncate(g, s.copies, s.tail_len);
    const BaseGraph& b = t.explicit_graph.base;
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < b.vertices.size(); ++i)
      idx[b.vertices[i]] = i;
    // Reachability in the truncation.
    std::size_t n = b.vertices.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& e : b.edges) reach[idx[e.src]][idx[e.dst]] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (reach[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (reach[k][j]) reach[i][j] = true;
    // Every cited vertex must lie on a cycle, and some cited vertex must
    // have an out-slot to spare beyond the single edge a terminal circuit
    // allows.
    bool spare = false;
    for (const auto& r : c->vertices) {
      std::size_t i = idx.at(truncation_name(g, t, r));
      bool cyclic = false;
      std::uint64_t out_slots = 0;
      for (const auto& e : b.edges)
        if (idx[e.src] == i) {
          out_slots += e.mult.n;
          if (idx[e.dst] == i || reach[idx[e.dst]][i]) cyclic = true;
        }
      if (!cyclic) return false;
      if (out_slots >= 2) spare = true;
    }
    if (!spare) return false;
  }
  if (w.vertex && w.anchor) {
    std::vector<std::uint64_t> counts = pump(g, *w.vertex, *w.anchor, 2);
    if (!strictly_increasing(counts)) return false;
  }
  return true;
}

}  // namespace

bool replay_witness(const GraphPresentation& g, const Witness& w) {
  if (w.kind == "non_terminal_circuit") return replay_circuit(g, w);

  if (w.kind == "omega_edge") {
    // Only the direct slots count: a circuit elsewhere cannot inflate
    // length-one paths, so growth proves the edge really has omega slots.
    if (!w.vertex || !w.anchor) return false;
    return strictly_increasing(pump_short(g, *w.vertex, *w.anchor, 1));
  }

  if (w.kind == "fan_crossing") {
    // Emitter -> copy -> exit target: two hops, one route per copy.
    if (!w.vertex || !w.anchor) return false;
    return strictly_increasing(pump_short(g, *w.vertex, *w.anchor, 2));
  }

  if (w.kind == "fan_reentry") {
    if (!w.construct || !w.anchor) return false;
    const Fan* f = g.fan_by_id(*w.construct);
    if (!f) return false;
    // Each copy must emit at least two edge slots whose targets find their
    // way back to the emitter, and the returns multiply with the copies.
    for (const Scales& s : replay_scales(g)) {
      Truncation t = truncate(g, s.copies, s.tail_len);
      const BaseGraph& b = t.explicit_graph.base;
      ReachInfo r = truncation_reach(b);
      std::string c0 = f->id + ".0";
      std::size_t em = r.idx.at(f->emitter);
      std::uint64_t returning = 0;
      for (const auto& e : b.edges)
        if (e.src == c0 &&
            (r.idx.at(e.dst) == em || r.reach[r.idx.at(e.dst)][em]))
          returning += e.mult.n;
      if (returning < 2) return false;
    }
    return strictly_increasing(pump(g, VertexRef::base(f->emitter),
                                    VertexRef::base(f->emitter), 2));
  }

  if (w.kind == "period_defect" || w.kind == "period_escape" ||
      w.kind == "tail_reentry") {
    if (!w.construct) return false;
    const Tail* tl = g.tail_by_id(*w.construct);
    if (!tl) return false;
    VertexRef target;
    if (w.kind == "period_defect") {
      // Pump into the deepest materialized position: the forward products
      // grow with every period repetition.
      target = VertexRef::base(tl->origin);  // replaced per scale below
    } else if (!w.anchor) {
      return false;
    } else {
      target = *w.anchor;
    }
    std::vector<std::uint64_t> counts;
    std::uint64_t round = 0;
    for (const Scales& s : replay_scales(g)) {
      ++round;
      Truncation t = truncate(g, s.copies, s.tail_len);
      std::uint64_t n = t.explicit_graph.base.vertices.size();
      std::string to = w.kind == "period_defect"
                           ? pos_name(tl->id, s.tail_len)
                           : truncation_name(g, t, target);
      counts.push_back(brute_path_count(t, tl->origin, to,
                                        (n + 2) * (round + 1)));
    }
    return strictly_increasing(counts);
  }

  if (w.kind == "condition_k") {
    ConditionKReport r = satisfies_condition_K(g);
    if (r.holds) return false;
    return !w.vertex || *w.vertex == *r.vertex;
  }

  throw std::invalid_argument(
      "witness kind '" + w.kind +
      "' is a structural counterexample; check it directly against its "
      "defining predicate");
}

}  // namespace gca
