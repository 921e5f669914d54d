// Command-line front end: analyze a presentation, desingularize it, or
// build quotient/view presentations.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gca/classify.hpp"
#include "gca/desingularize.hpp"
#include "gca/ideals.hpp"
#include "gca/oracle.hpp"
#include "gca/parser.hpp"
#include "gca/reach.hpp"
#include "gca/serialize.hpp"
#include "gca/skeleton.hpp"

namespace {

using gca::Json;

constexpr const char* kVersion = "1.0.0";

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool color_enabled() {
  const char* v = std::getenv("GRAPHALG_COLOR");
  return v && *v && std::string(v) != "0";
}

std::string paint(const std::string& s, const char* code) {
  if (!color_enabled()) return s;
  return std::string("\033[") + code + "m" + s + "\033[0m";
}

struct Loaded {
  gca::GraphPresentation graph;
  std::string digest;
};

// Exit 1: unreadable or unparsable.  Exit 2: well-formed text, invalid graph.
Loaded load_or_exit(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(1);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  gca::ParseResult r = gca::parse_presentation(ss.str());
  if (!r.ok()) {
    bool parse_error = false;
    for (const auto& d : r.diagnostics) {
      if (d.line > 0) parse_error = true;
      std::cerr << path << ":" << d.line << ":" << d.col << ": " << d.message
                << "\n";
    }
    std::exit(parse_error ? 1 : 2);
  }
  return {std::move(r.graph), fnv1a(ss.str())};
}

Json ref_json(const gca::VertexRef& v) { return v.str(); }

Json witness_json(const std::optional<gca::Witness>& w) {
  if (!w) return nullptr;
  Json j;
  j["kind"] = w->kind;
  if (w->vertex) j["vertex"] = ref_json(*w->vertex);
  if (w->anchor) j["anchor"] = ref_json(*w->anchor);
  if (w->circuit) j["circuit"] = *w->circuit;
  if (w->construct) j["construct"] = *w->construct;
  j["detail"] = w->detail;
  return j;
}

Json verdict_json(const gca::Verdict& v) {
  Json j;
  j["holds"] = v.holds;
  j["witness"] = witness_json(v.witness);
  return j;
}

Json vertex_set_json(const gca::VertexSet& s) {
  Json j;
  j["base"] = s.base;
  j["fans"] = s.fans;
  Json tails = Json::object();
  for (const auto& [id, thr] : s.tails) tails[id] = thr;
  j["tails"] = tails;
  Json atts = Json::array();
  for (const auto& a : s.attachments)
    atts.push_back(gca::VertexRef::attached(a.tail, a.pos, a.residue, a.slot)
                       .str());
  j["attachments"] = atts;
  return j;
}

Json ideal_json(const gca::IdealData& d) {
  Json j;
  j["H"] = vertex_set_json(d.H);
  j["S"] = d.S;
  return j;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(1);
  }
  out << content;
}

std::string render_text(const Json& r) {
  std::ostringstream o;
  auto verdict_line = [&](const char* name, const Json& v) {
    bool holds = v["holds"].get<bool>();
    o << name << ": "
      << (holds ? paint("holds", "32") : paint("fails", "31"));
    if (!holds && !v["witness"].is_null())
      o << "  [" << v["witness"]["detail"].get<std::string>() << "]";
    o << "\n";
  };
  if (r["vacuous"].get<bool>()) o << "empty graph: verdicts are vacuous\n";
  verdict_line("liminal", r["liminal"]);
  verdict_line("type I (1)", r["typeI"]["c1"]);
  verdict_line("type I (2)", r["typeI"]["c2"]);
  o << "type I: "
    << (r["typeI"]["holds"].get<bool>() ? paint("holds", "32")
                                        : paint("fails", "31"))
    << "\n";
  verdict_line("condition K", r["conditionK"]);
  auto set_line = [&](const char* name, const Json& d) {
    o << name << ": H = " << d["H"].dump() << ", S = " << d["S"].dump()
      << "\n";
  };
  set_line("largest liminal ideal", r["largestLiminal"]);
  set_line("largest type I ideal", r["largestTypeI"]);
  if (r.contains("lattice")) {
    o << "hereditary saturated sets:\n";
    for (const auto& h : r["lattice"])
      o << "  H = " << h["H"].dump() << ", B_H = " << h["B_H"].dump() << "\n";
  }
  if (r.contains("verify"))
    o << "witness replay: "
      << (r["verify"]["passed"].get<bool>() ? paint("passed", "32")
                                            : paint("MISMATCH", "31"))
      << " (" << r["verify"]["replayed"].get<std::uint64_t>()
      << " witnesses)\n";
  return o.str();
}

int cmd_analyze(const std::string& path, bool verify, bool lattice,
                bool as_json, const std::string& out_path) {
  Loaded in = load_or_exit(path);
  const gca::GraphPresentation& g = in.graph;

  Json r;
  r["schema"] = "report-1";
  r["tool"] = {{"name", "graphalg"}, {"version", kVersion}};
  r["input"] = {{"path", path}, {"digest", in.digest}};
  r["vacuous"] = g.empty();

  gca::Verdict liminal = gca::is_liminal(g);
  auto [c1, c2] = gca::type_I_conditions(g);
  gca::ConditionKReport ck = gca::satisfies_condition_K(g);

  r["liminal"] = verdict_json(liminal);
  r["typeI"] = Json{{"c1", verdict_json(c1)},
                    {"c2", verdict_json(c2)},
                    {"holds", c1.holds && c2.holds}};
  Json ckj;
  ckj["holds"] = ck.holds;
  if (!ck.holds) {
    gca::Witness w;
    w.kind = "condition_k";
    w.vertex = ck.vertex;
    w.circuit = ck.circuit;
    w.detail = ck.vertex->str() + " lies on exactly one circuit (" +
               *ck.circuit + ")";
    ckj["witness"] = witness_json(w);
  } else {
    ckj["witness"] = nullptr;
  }
  r["conditionK"] = ckj;

  r["largestLiminal"] = ideal_json(gca::largest_liminal_ideal(g));
  r["largestTypeI"] = ideal_json(gca::largest_type_I_ideal(g));

  if (lattice) {
    Json l = Json::array();
    for (const auto& h : gca::enumerate_hereditary_saturated(g))
      l.push_back(Json{{"H", vertex_set_json(h)},
                       {"B_H", gca::compute_B_H(g, h)}});
    r["lattice"] = l;
  }

  bool replay_ok = true;
  if (verify) {
    std::uint64_t replayed = 0;
    auto replay = [&](const std::optional<gca::Witness>& w) {
      if (!w) return;
      ++replayed;
      if (!gca::replay_witness(g, *w)) replay_ok = false;
    };
    replay(liminal.witness);
    replay(c1.witness);
    replay(c2.witness);
    if (!ck.holds) {
      gca::Witness w;
      w.kind = "condition_k";
      w.vertex = ck.vertex;
      w.circuit = ck.circuit;
      replay(w);
    }
    r["verify"] = Json{{"replayed", replayed}, {"passed", replay_ok}};
  }

  write_output(out_path, as_json ? r.dump(2) + "\n" : render_text(r));
  return replay_ok ? 0 : 3;
}

int cmd_desingularize(const std::string& path, const std::string& out_path) {
  Loaded in = load_or_exit(path);
  if (gca::singular_vertices(in.graph).empty())
    std::cerr << "warning: no singular vertices; output equals input\n";
  gca::Desingularization d;
  try {
    d = gca::desingularize(in.graph);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  Json j;
  j["presentation"] = gca::presentation_to_json(d.graph);
  Json meta;
  meta["policy"] = "finite-then-round-robin";
  Json tails = Json::array();
  for (const auto& at : d.added) {
    Json t;
    t["tail"] = at.tail_id;
    t["vertex"] = at.vertex;
    Json targets = Json::array();
    for (const auto& v : at.targets) targets.push_back(v.str());
    t["targets"] = targets;
    if (at.fan_id) t["fan"] = *at.fan_id;
    if (at.first_copy) t["firstCopy"] = *at.first_copy;
    tails.push_back(t);
  }
  meta["tails"] = tails;
  j["metadata"] = meta;
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

// Set items: NAME | fan:ID | tail:ID:K | att:ID:P:S | att:ID:rR:S
gca::VertexSet parse_set_spec(const gca::GraphPresentation& g,
                              const std::string& spec) {
  gca::VertexSet s;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) parts.push_back(p);
    if (parts.size() == 1) {
      if (!g.base.has_vertex(parts[0]))
        throw std::invalid_argument("unknown vertex: " + parts[0]);
      s.base.insert(parts[0]);
    } else if (parts[0] == "fan" && parts.size() == 2) {
      if (!g.fan_by_id(parts[1]))
        throw std::invalid_argument("unknown fan: " + parts[1]);
      s.fans.insert(parts[1]);
    } else if (parts[0] == "tail" && parts.size() == 3) {
      if (!g.tail_by_id(parts[1]))
        throw std::invalid_argument("unknown tail: " + parts[1]);
      s.tails[parts[1]] = std::stoull(parts[2]);
    } else if (parts[0] == "att" && parts.size() == 4) {
      bool residue = !parts[2].empty() && parts[2][0] == 'r';
      std::uint64_t pos = std::stoull(residue ? parts[2].substr(1) : parts[2]);
      s.attachments.insert({parts[1], pos, residue, std::stoull(parts[3])});
    } else {
      throw std::invalid_argument("bad set item: " + item);
    }
  }
  return s;
}

int cmd_quotient(const std::string& path, const std::string& spec,
                 const std::string& out_path) {
  Loaded in = load_or_exit(path);
  try {
    gca::VertexSet h = parse_set_spec(in.graph, spec);
    gca::GraphPresentation q = gca::quotient(in.graph, h);
    write_output(out_path, gca::presentation_to_json(q).dump(2) + "\n");
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

gca::VertexRef parse_vertex_spec(const gca::GraphPresentation& g,
                                 const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream is(spec);
  std::string p;
  while (std::getline(is, p, ':')) parts.push_back(p);
  if (parts.size() == 1) {
    if (!g.base.has_vertex(parts[0]))
      throw std::invalid_argument("unknown vertex: " + parts[0]);
    return gca::VertexRef::base(parts[0]);
  }
  if (parts[0] == "fan" && parts.size() == 2)
    return gca::VertexRef::fan_copy(parts[1]);
  if (parts[0] == "tail" && parts.size() == 3) {
    bool residue = !parts[2].empty() && parts[2][0] == 'r';
    std::uint64_t pos = std::stoull(residue ? parts[2].substr(1) : parts[2]);
    return residue ? gca::VertexRef::tail_res(parts[1], pos)
                   : gca::VertexRef::tail_pos(parts[1], pos);
  }
  if (parts[0] == "att" && parts.size() == 4) {
    bool residue = !parts[2].empty() && parts[2][0] == 'r';
    std::uint64_t pos = std::stoull(residue ? parts[2].substr(1) : parts[2]);
    return gca::VertexRef::attached(parts[1], pos, residue,
                                    std::stoull(parts[3]));
  }
  throw std::invalid_argument("bad vertex spec: " + spec);
}

int cmd_view(const std::string& path, const std::string& vertex,
             const std::string& exclude, const std::string& out_path) {
  Loaded in = load_or_exit(path);
  try {
    gca::GraphPresentation v;
    if (exclude.empty()) {
      v = gca::view_subgraph(in.graph, parse_vertex_spec(in.graph, vertex));
    } else {
      std::set<std::string> ex;
      std::stringstream ss(exclude);
      std::string item;
      while (std::getline(ss, item, ',')) ex.insert(item);
      v = gca::view_subgraph_excluding(in.graph, vertex, ex);
    }
    write_output(out_path, gca::presentation_to_json(v).dump(2) + "\n");
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liminal / Type I analysis of graph C*-algebra presentations"};
  app.require_subcommand(1);

  std::string path, out_path, set_spec, vertex, exclude, policy = "round-robin";
  bool verify = false, lattice = false, text = false, json = false;

  CLI::App* analyze = app.add_subcommand("analyze", "analyze a presentation");
  analyze->add_option("file", path)->required();
  analyze->add_flag("--verify", verify,
                    "replay every witness through the truncation oracle");
  analyze->add_flag("--lattice", lattice,
                    "list all hereditary saturated sets");
  analyze->add_flag("--json", json, "JSON report (default)");
  analyze->add_flag("--text", text, "human-readable report");
  analyze->add_option("--out", out_path, "write the report to a file");

  CLI::App* desing =
      app.add_subcommand("desingularize", "add tails at singular vertices");
  desing->add_option("file", path)->required();
  desing->add_option("--policy", policy)
      ->check(CLI::IsMember({"round-robin"}));
  desing->add_option("--out", out_path);

  CLI::App* quot = app.add_subcommand("quotient",
                                      "remove a hereditary saturated set");
  quot->add_option("file", path)->required();
  quot->add_option("--set", set_spec)->required();
  quot->add_option("--out", out_path);

  CLI::App* view = app.add_subcommand("view", "induced subgraph of a vertex");
  view->add_option("file", path)->required();
  view->add_option("--vertex", vertex)->required();
  view->add_option("--exclude", exclude,
                   "comma-separated base targets whose edges are dropped");
  view->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) return cmd_analyze(path, verify, lattice, !text,
                                            out_path);
  if (desing->parsed()) return cmd_desingularize(path, out_path);
  if (quot->parsed()) return cmd_quotient(path, set_spec, out_path);
  return cmd_view(path, vertex, exclude, out_path);
}
