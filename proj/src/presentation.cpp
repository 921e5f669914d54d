#include "gca/presentation.hpp"

#include <algorithm>
#include <set>

namespace gca {

bool BaseGraph::has_vertex(const std::string& v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

const BaseEdge* BaseGraph::edge(const std::string& src,
                                const std::string& dst) const {
  for (const auto& e : edges)
    if (e.src == src && e.dst == dst) return &e;
  return nullptr;
}

const TailStep& Tail::step(std::uint64_t pos) const {
  if (pos >= 1 && pos <= preamble.size()) return preamble[pos - 1];
  return period[(pos - preamble.size() - 1) % period.size()];
}

const Fan* GraphPresentation::fan_at(const std::string& emitter) const {
  for (const auto& f : fans)
    if (f.emitter == emitter) return &f;
  return nullptr;
}

const Tail* GraphPresentation::tail_at(const std::string& origin) const {
  for (const auto& t : tails)
    if (t.origin == origin) return &t;
  return nullptr;
}

const Fan* GraphPresentation::fan_by_id(const std::string& id) const {
  for (const auto& f : fans)
    if (f.id == id) return &f;
  return nullptr;
}

const Tail* GraphPresentation::tail_by_id(const std::string& id) const {
  for (const auto& t : tails)
    if (t.id == id) return &t;
  return nullptr;
}

std::string VertexRef::str() const {
  switch (kind) {
    case Kind::Base:
      return name;
    case Kind::FanCopy:
      return name + "[*]";
    case Kind::TailVertex:
      return residue ? name + ":%" + std::to_string(pos)
                     : name + ":" + std::to_string(pos);
    case Kind::Attached: {
      std::string p = residue ? "%" + std::to_string(pos) : std::to_string(pos);
      return name + ":" + p + "@" + std::to_string(slot);
    }
  }
  return "?";
}

namespace {

void check_exits(const GraphPresentation& g,
                 const std::vector<std::pair<std::string, std::uint64_t>>& exits,
                 const std::string& where, std::vector<Diagnostic>& out) {
  std::set<std::string> seen;
  for (const auto& [target, mult] : exits) {
    if (!g.base.has_vertex(target))
      out.push_back({0, 0, where + ": dangling reference to '" + target + "'"});
    if (mult == 0)
      out.push_back({0, 0, where + ": zero multiplicity on exit to '" + target + "'"});
    if (!seen.insert(target).second)
      out.push_back({0, 0, where + ": duplicate exit target '" + target + "'"});
  }
}

}  // namespace

std::vector<Diagnostic> validate(const GraphPresentation& g) {
  std::vector<Diagnostic> out;

  std::set<std::string> names;
  for (const auto& v : g.base.vertices)
    if (!names.insert(v).second)
      out.push_back({0, 0, "duplicate vertex name '" + v + "'"});

  std::set<std::pair<std::string, std::string>> epairs;
  for (const auto& e : g.base.edges) {
    if (!g.base.has_vertex(e.src))
      out.push_back({0, 0, "edge origin '" + e.src + "' is not a declared vertex"});
    if (!g.base.has_vertex(e.dst))
      out.push_back({0, 0, "edge terminus '" + e.dst + "' is not a declared vertex"});
    if (!e.mult.omega && e.mult.n == 0)
      out.push_back({0, 0, "zero multiplicity on edge " + e.src + " -> " + e.dst});
    if (!epairs.insert({e.src, e.dst}).second)
      out.push_back({0, 0, "duplicate edge " + e.src + " -> " + e.dst});
  }

  std::set<std::string> construct_ids;
  std::set<std::string> fan_emitters, tail_origins;
  for (const auto& f : g.fans) {
    if (!construct_ids.insert(f.id).second)
      out.push_back({0, 0, "duplicate fan/tail id '" + f.id + "'"});
    if (!g.base.has_vertex(f.emitter))
      out.push_back({0, 0, "fan '" + f.id + "': emitter '" + f.emitter +
                               "' is not a declared vertex"});
    else if (!fan_emitters.insert(f.emitter).second)
      out.push_back({0, 0, "vertex '" + f.emitter + "' is the emitter of more than one fan"});
    check_exits(g, f.exits, "fan '" + f.id + "'", out);
  }
  for (const auto& t : g.tails) {
    if (!construct_ids.insert(t.id).second)
      out.push_back({0, 0, "duplicate fan/tail id '" + t.id + "'"});
    if (!g.base.has_vertex(t.origin))
      out.push_back({0, 0, "tail '" + t.id + "': origin '" + t.origin +
                               "' is not a declared vertex"});
    else if (!tail_origins.insert(t.origin).second)
      out.push_back({0, 0, "vertex '" + t.origin + "' is the origin of more than one tail"});
    if (t.period.empty())
      out.push_back({0, 0, "tail '" + t.id + "': period must be nonempty"});
    auto check_steps = [&](const std::vector<TailStep>& steps, const char* part) {
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        std::string where = "tail '" + t.id + "' " + part + " step " + std::to_string(i + 1);
        if (s.forward == 0)
          out.push_back({0, 0, where + ": forward multiplicity must be >= 1"});
        check_exits(g, s.exits, where, out);
        for (std::size_t a = 0; a < s.attachments.size(); ++a)
          check_exits(g, s.attachments[a].exits,
                      where + " attachment " + std::to_string(a), out);
      }
    };
    check_steps(t.preamble, "preamble");
    check_steps(t.period, "period");
  }

  return out;
}

}  // namespace gca
