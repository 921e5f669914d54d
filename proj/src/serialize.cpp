#include "gca/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace gca {
namespace {

Json mult_json(const Multiplicity& m) {
  if (m.omega) return Json("w");
  return Json(m.n);
}

Multiplicity mult_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "w") return Multiplicity::inf();
    throw std::invalid_argument("bad multiplicity: " + j.dump());
  }
  return Multiplicity::fin(j.get<std::uint64_t>());
}

Json exits_json(const std::vector<std::pair<std::string, std::uint64_t>>& exits) {
  Json out = Json::object();
  for (const auto& [v, n] : exits) out[v] = n;
  return out;
}

std::vector<std::pair<std::string, std::uint64_t>> exits_from_json(const Json& j) {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out.push_back({it.key(), it.value().get<std::uint64_t>()});
  return out;
}

Json step_json(const TailStep& s) {
  Json out = Json::object();
  out["forward"] = s.forward;
  out["exits"] = exits_json(s.exits);
  Json att = Json::array();
  for (const auto& a : s.attachments) {
    Json ja = Json::object();
    ja["exits"] = exits_json(a.exits);
    att.push_back(ja);
  }
  out["attach"] = att;
  return out;
}

TailStep step_from_json(const Json& j) {
  TailStep s;
  s.forward = j.at("forward").get<std::uint64_t>();
  if (j.contains("exits")) s.exits = exits_from_json(j.at("exits"));
  if (j.contains("attach"))
    for (const auto& ja : j.at("attach"))
      s.attachments.push_back({exits_from_json(ja.at("exits"))});
  return s;
}

}  // namespace

std::string to_string(const Multiplicity& m) { return m.str(); }

Json presentation_to_json(const GraphPresentation& g) {
  Json out = Json::object();
  out["vertices"] = g.base.vertices;
  Json edges = Json::array();
  for (const auto& e : g.base.edges) {
    Json je = Json::object();
    je["src"] = e.src;
    je["dst"] = e.dst;
    je["mult"] = mult_json(e.mult);
    edges.push_back(je);
  }
  out["edges"] = edges;
  Json fans = Json::array();
  for (const auto& f : g.fans) {
    Json jf = Json::object();
    jf["id"] = f.id;
    jf["emitter"] = f.emitter;
    jf["sink"] = f.sink();
    jf["exits"] = exits_json(f.exits);
    fans.push_back(jf);
  }
  out["fans"] = fans;
  Json tails = Json::array();
  for (const auto& t : g.tails) {
    Json jt = Json::object();
    jt["id"] = t.id;
    jt["origin"] = t.origin;
    Json pre = Json::array(), per = Json::array();
    for (const auto& s : t.preamble) pre.push_back(step_json(s));
    for (const auto& s : t.period) per.push_back(step_json(s));
    jt["preamble"] = pre;
    jt["period"] = per;
    tails.push_back(jt);
  }
  out["tails"] = tails;
  return out;
}

GraphPresentation presentation_from_json(const Json& j) {
  GraphPresentation g;
  for (const auto& v : j.at("vertices"))
    g.base.vertices.push_back(v.get<std::string>());
  for (const auto& je : j.at("edges"))
    g.base.edges.push_back({je.at("src").get<std::string>(),
                            je.at("dst").get<std::string>(),
                            mult_from_json(je.at("mult"))});
  if (j.contains("fans"))
    for (const auto& jf : j.at("fans")) {
      Fan f;
      f.id = jf.at("id").get<std::string>();
      f.emitter = jf.at("emitter").get<std::string>();
      if (jf.contains("exits")) f.exits = exits_from_json(jf.at("exits"));
      g.fans.push_back(std::move(f));
    }
  if (j.contains("tails"))
    for (const auto& jt : j.at("tails")) {
      Tail t;
      t.id = jt.at("id").get<std::string>();
      t.origin = jt.at("origin").get<std::string>();
      if (jt.contains("preamble"))
        for (const auto& js : jt.at("preamble"))
          t.preamble.push_back(step_from_json(js));
      for (const auto& js : jt.at("period"))
        t.period.push_back(step_from_json(js));
      g.tails.push_back(std::move(t));
    }
  return g;
}

std::string presentation_to_dot(const GraphPresentation& g,
                                const TruncationSpec& trunc) {
  std::ostringstream os;
  os << "digraph presentation {\n";
  auto q = [](const std::string& s) { return "\"" + s + "\""; };
  for (const auto& v : g.base.vertices) os << "  " << q(v) << ";\n";
  for (const auto& e : g.base.edges) {
    if (e.mult.omega) {
      for (std::uint64_t i = 0; i < trunc.copies; ++i)
        os << "  " << q(e.src) << " -> " << q(e.dst) << ";\n";
      os << "  " << q(e.src) << " -> " << q(e.dst)
         << " [style=dotted, label=\"...\"];\n";
    } else {
      for (std::uint64_t i = 0; i < e.mult.n; ++i)
        os << "  " << q(e.src) << " -> " << q(e.dst) << ";\n";
    }
  }
  for (const auto& f : g.fans) {
    for (std::uint64_t i = 1; i <= trunc.copies; ++i) {
      std::string c = f.id + "." + std::to_string(i);
      os << "  " << q(c) << " [shape=circle];\n";
      os << "  " << q(f.emitter) << " -> " << q(c) << ";\n";
      for (const auto& [target, n] : f.exits)
        for (std::uint64_t k = 0; k < n; ++k)
          os << "  " << q(c) << " -> " << q(target) << ";\n";
    }
    os << "  " << q(f.id + ".more") << " [label=\"...\", shape=none];\n";
    os << "  " << q(f.emitter) << " -> " << q(f.id + ".more")
       << " [style=dotted];\n";
  }
  for (const auto& t : g.tails) {
    std::string prev = t.origin;
    std::uint64_t prev_fwd = 1;
    for (std::uint64_t k = 1; k <= trunc.tail_len; ++k) {
      std::string cur = t.id + "." + std::to_string(k);
      os << "  " << q(cur) << " [shape=circle];\n";
      for (std::uint64_t i = 0; i < prev_fwd; ++i)
        os << "  " << q(prev) << " -> " << q(cur) << ";\n";
      const TailStep& s = t.step(k);
      for (const auto& [target, n] : s.exits)
        for (std::uint64_t i = 0; i < n; ++i)
          os << "  " << q(cur) << " -> " << q(target) << ";\n";
      for (std::size_t a = 0; a < s.attachments.size(); ++a) {
        std::string av = cur + "a" + std::to_string(a);
        os << "  " << q(av) << " [shape=circle];\n";
        os << "  " << q(cur) << " -> " << q(av) << ";\n";
        for (const auto& [target, n] : s.attachments[a].exits)
          for (std::uint64_t i = 0; i < n; ++i)
            os << "  " << q(av) << " -> " << q(target) << ";\n";
      }
      prev = cur;
      prev_fwd = s.forward;
    }
    os << "  " << q(t.id + ".more") << " [label=\"...\", shape=none];\n";
    os << "  " << q(prev) << " -> " << q(t.id + ".more") << " [style=dotted];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace gca
