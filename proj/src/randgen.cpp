#include "gca/randgen.hpp"

#include <set>
#include <stdexcept>

#include "gca/desingularize.hpp"

namespace gca {

namespace {

std::uint64_t pick(std::mt19937& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

bool chance(std::mt19937& rng, int percent) {
  return pick(rng, 1, 100) <= static_cast<std::uint64_t>(percent);
}

std::vector<std::pair<std::string, std::uint64_t>> random_exits(
    std::mt19937& rng, const std::vector<std::string>& verts,
    const GenOptions& o, int min_exits) {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  int count = static_cast<int>(pick(rng, min_exits, o.max_exits));
  std::set<std::string> used;
  for (int i = 0; i < count; ++i) {
    const std::string& z = verts[pick(rng, 0, verts.size() - 1)];
    if (!used.insert(z).second) continue;  // one entry per target
    out.push_back({z, pick(rng, 1, o.max_mult)});
  }
  return out;
}

TailStep random_step(std::mt19937& rng, const std::vector<std::string>& verts,
                     const GenOptions& o, bool sink_attachments_ok) {
  TailStep s;
  s.forward = pick(rng, 1, o.max_mult);
  if (chance(rng, 40)) s.exits = random_exits(rng, verts, o, 0);
  if (o.max_attachments > 0 && chance(rng, 25)) {
    AttachedVertex a;
    a.exits = random_exits(rng, verts, o, sink_attachments_ok ? 0 : 1);
    if (!a.exits.empty() || sink_attachments_ok)
      s.attachments.push_back(std::move(a));
  }
  return s;
}

GraphPresentation generate(std::mt19937& rng, const GenOptions& o,
                           bool supported) {
  GraphPresentation g;
  int n = static_cast<int>(pick(rng, 1, o.max_vertices));
  for (int i = 0; i < n; ++i)
    g.base.vertices.push_back("v" + std::to_string(i));
  const auto& verts = g.base.vertices;

  int edges = static_cast<int>(pick(rng, 0, o.max_edges));
  for (int i = 0; i < edges; ++i) {
    const std::string& a = verts[pick(rng, 0, verts.size() - 1)];
    const std::string& b = verts[pick(rng, 0, verts.size() - 1)];
    if (g.base.edge(a, b)) continue;
    Multiplicity m = o.allow_omega && chance(rng, 15)
                         ? Multiplicity::inf()
                         : Multiplicity::fin(pick(rng, 1, o.max_mult));
    g.base.edges.push_back({a, b, m});
  }

  std::set<std::string> fan_vertices, tail_vertices;
  if (o.allow_fans && chance(rng, 40)) {
    Fan f;
    f.emitter = verts[pick(rng, 0, verts.size() - 1)];
    f.id = "f0";
    if (supported || chance(rng, 60))
      f.exits = random_exits(rng, verts, o, supported ? 1 : 0);
    fan_vertices.insert(f.emitter);
    g.fans.push_back(std::move(f));
  }
  if (o.allow_tails && chance(rng, 40)) {
    Tail t;
    t.id = "t0";
    t.origin = verts[pick(rng, 0, verts.size() - 1)];
    if (!tail_vertices.count(t.origin)) {
      int pre = static_cast<int>(pick(rng, 0, o.max_preamble));
      int per = static_cast<int>(pick(rng, 1, o.max_period));
      for (int i = 0; i < pre; ++i)
        t.preamble.push_back(random_step(rng, verts, o, !supported));
      for (int i = 0; i < per; ++i)
        t.period.push_back(random_step(rng, verts, o, !supported));
      tail_vertices.insert(t.origin);
      g.tails.push_back(std::move(t));
    }
  }

  if (supported) {
    // A tail may not sit at a singular vertex: give such origins a plain
    // finite edge so they are neither sinks nor infinite emitters.
    for (const auto& t : g.tails) {
      std::erase_if(g.fans,
                    [&](const Fan& f) { return f.emitter == t.origin; });
      std::erase_if(g.base.edges, [&](const BaseEdge& e) {
        return e.src == t.origin && e.mult.omega;
      });
    }
  }
  return g;
}

}  // namespace

GraphPresentation random_presentation(std::mt19937& rng, const GenOptions& o) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    GraphPresentation g = generate(rng, o, false);
    if (validate(g).empty()) return g;
  }
  throw std::logic_error("random presentation generation failed to validate");
}

GraphPresentation random_supported_presentation(std::mt19937& rng,
                                                const GenOptions& o) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    GraphPresentation g = generate(rng, o, true);
    if (!validate(g).empty()) continue;
    try {
      desingularize(g);
      return g;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::logic_error("supported presentation generation failed");
}

GraphPresentation random_explicit_graph(std::mt19937& rng, int max_vertices,
                                        int max_edges, std::uint64_t max_mult) {
  GenOptions o;
  o.max_vertices = max_vertices;
  o.max_edges = max_edges;
  o.max_mult = max_mult;
  o.allow_omega = false;
  o.allow_fans = false;
  o.allow_tails = false;
  return random_presentation(rng, o);
}

}  // namespace gca
