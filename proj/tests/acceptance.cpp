// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gca/classify.hpp"
#include "gca/desingularize.hpp"
#include "gca/ideals.hpp"
#include "gca/oracle.hpp"
#include "gca/parser.hpp"
#include "gca/randgen.hpp"
#include "gca/reach.hpp"
#include "gca/skeleton.hpp"

using namespace gca;

namespace {

int failures = 0;

void report(int n, const char* what, bool ok, const std::string& note = "") {
  std::cout << "criterion " << n << " (" << what << "): "
            << (ok ? "pass" : "FAIL");
  if (!ok && !note.empty()) std::cout << " - " << note;
  std::cout << "\n";
  if (!ok) ++failures;
}

GraphPresentation parse(const std::string& text) {
  ParseResult r = parse_presentation(text);
  if (!r.ok()) throw std::runtime_error("acceptance input failed to parse");
  return r.graph;
}

// Fan of sinks at u0 with an escape to a doubled loop.
const char* kE1 = R"(
vertex u0
vertex u1
edge u0 u1
edge u1 u1 *2
fan F emitter=u0 sink
)";

// Two routes from the fan emitter; one passes a doubled loop; both meet at v.
const char* kE2 = R"(
vertex v0
vertex v1
vertex v2
vertex v
edge v0 v1
edge v0 v2
edge v1 v1 *2
edge v1 v
edge v2 v
fan F emitter=v0 sink
)";

// Every fan copy escapes to the sink w; the other route passes a doubled loop.
const char* kE3 = R"(
vertex w0
vertex w1
vertex w
edge w0 w1
edge w1 w1 *2
fan F emitter=w0 exits={w:1}
)";

// Supported variants of the same shapes: the fans keep an escape edge so the
// presentations admit desingularization.
const char* kE1Star = R"(
vertex u0
vertex u1
vertex z
edge u0 u1
edge u1 u1 *2
fan F emitter=u0 exits={z:1}
)";

const char* kE2Star = R"(
vertex v0
vertex v1
vertex v2
vertex v
vertex z
edge v0 v1
edge v0 v2
edge v1 v1 *2
edge v1 v
edge v2 v
fan F emitter=v0 exits={z:1}
)";

void criterion_1() {
  bool ok = true;
  std::string note;

  IdealData d1 = largest_liminal_ideal(parse(kE1));
  if (!(d1.H.base.empty() && d1.H.fans == std::set<std::string>{"F"} &&
        d1.H.tails.empty() && d1.S == std::set<std::string>{"u0"})) {
    ok = false;
    note = "first example mismatch";
  }
  IdealData d2 = largest_liminal_ideal(parse(kE2));
  if (!(d2.H.base == std::set<std::string>{"v", "v2"} &&
        d2.H.fans == std::set<std::string>{"F"} &&
        d2.S == std::set<std::string>{"v0"})) {
    ok = false;
    note = "second example mismatch";
  }
  IdealData d3 = largest_liminal_ideal(parse(kE3));
  if (!(d3.H.base == std::set<std::string>{"w"} &&
        d3.H.fans == std::set<std::string>{"F"} && d3.S.empty())) {
    ok = false;
    note = "third example mismatch";
  }
  report(1, "worked ideal examples", ok, note);
}

void criterion_2() {
  bool ok = true;
  std::string note;
  if (is_type_I(parse("vertex v\nedge v v *2")).holds) {
    ok = false;
    note = "doubled loop should not be type I";
  }
  if (is_type_I(parse("vertex v\nedge v v *w")).holds) {
    ok = false;
    note = "omega loop should not be type I";
  }
  if (!is_liminal(parse("vertex v\nedge v v")).holds) {
    ok = false;
    note = "single terminal loop should be liminal";
  }
  if (!is_liminal(parse("vertex v")).holds) {
    ok = false;
    note = "isolated sink should be liminal";
  }
  report(2, "named algebra verdicts", ok, note);
}

void criterion_3() {
  GraphPresentation g = parse(R"(
vertex r
tail T origin=r preamble=[] period=[(forward=2)]
)");
  auto [c1, c2] = type_I_conditions(g);
  bool ok = c1.holds && !c2.holds && c2.witness &&
            c2.witness->kind == "period_defect" && !is_type_I(g).holds;
  report(3, "doubled period prototype", ok);
}

void criterion_4() {
  std::mt19937 rng(11);
  GenOptions o;
  bool ok = true;
  std::string note;
  for (int i = 0; i < 120 && ok; ++i) {
    GraphPresentation g = random_supported_presentation(rng, o);
    Desingularization d = desingularize(g);
    if (!singular_vertices(d.graph).empty()) {
      ok = false;
      note = "desingularization left a singular vertex";
      break;
    }
    if (is_condition_M(g).holds != is_condition_M(d.graph).holds) {
      ok = false;
      note = "finiteness verdict changed";
    }
    if (is_type_I(g).holds != is_type_I(d.graph).holds) {
      ok = false;
      note = "type I verdict changed";
    }
  }
  GraphPresentation omega = parse("vertex v\nedge v v *w");
  auto [c1, c2] = type_I_conditions(omega);
  auto [d1, d2] = type_I_conditions(desingularize(omega).graph);
  if (!(c2.holds && !d2.holds)) {
    ok = false;
    note = "omega loop regression: condition two must hold only before";
  }
  report(4, "desingularization invariance", ok, note);
}

void criterion_5() {
  std::mt19937 rng(13);
  bool ok = true;
  std::string note;
  for (int i = 0; i < 2000 && ok; ++i) {
    GraphPresentation g = random_explicit_graph(rng, 5, 8, 2);
    Truncation t = truncate(g, 2, 2);
    std::uint64_t n = g.base.vertices.size();
    for (const auto& v : g.base.vertices) {
      for (const auto& w : g.base.vertices) {
        Count c = path_count(g, VertexRef::base(v), VertexRef::base(w));
        std::uint64_t b1 = brute_path_count(t, v, w, 2 * n + 2);
        std::uint64_t b2 = brute_path_count(t, v, w, 2 * n + 6);
        if (c.is_omega() ? b2 <= b1 : (b1 != c.n || b2 != c.n)) {
          ok = false;
          note = "path count mismatch " + v + " -> " + w;
        }
      }
    }
    auto brute = brute_hereditary_saturated(t);
    auto sym = enumerate_hereditary_saturated(g);
    std::set<std::set<std::string>> got;
    for (const auto& s : sym) got.insert(s.base);
    std::set<std::set<std::string>> want(brute.begin(), brute.end());
    if (got != want) {
      ok = false;
      note = "hereditary saturated enumeration mismatch";
    }
    Verdict m = is_condition_M(g);
    if (!m.holds && !replay_witness(g, *m.witness)) {
      ok = false;
      note = "finiteness witness failed replay";
    }
    auto [c1, c2] = type_I_conditions(g);
    if (!c1.holds && !replay_witness(g, *c1.witness)) {
      ok = false;
      note = "condition one witness failed replay";
    }
    if (!c2.holds && !replay_witness(g, *c2.witness)) {
      ok = false;
      note = "condition two witness failed replay";
    }
  }
  report(5, "truncation oracle equivalence", ok, note);
}

void criterion_6() {
  std::mt19937 rng(17);
  GenOptions o;
  bool ok = true;
  std::string note;
  for (int i = 0; i < 500 && ok; ++i) {
    GraphPresentation g = random_presentation(rng, o);
    if (is_liminal(g).holds && !is_type_I(g).holds) {
      ok = false;
      note = "liminal graph not type I";
    }
    IdealData lim = largest_liminal_ideal(g);
    IdealData t1 = largest_type_I_ideal(g);
    if (!pair_leq(g, lim, t1)) {
      ok = false;
      note = "largest liminal ideal not below largest type I ideal";
    }
    for (const IdealData* d : {&lim, &t1})
      if (!is_hereditary(g, d->H).holds || !is_saturated(g, d->H).holds) {
        ok = false;
        note = "largest ideal base set not hereditary saturated";
      }
    if (!lim.H.empty() && !is_condition_M(graph_on(g, lim.H)).holds) {
      ok = false;
      note = "graph on the liminal base set fails the finiteness condition";
    }
  }
  report(6, "implication properties", ok, note);
}

// All (H, S) pairs of g, S ranging over subsets of B_H.
std::vector<IdealData> all_pairs(const GraphPresentation& g) {
  std::vector<IdealData> out;
  for (const auto& h : enumerate_hereditary_saturated(g)) {
    auto bh = compute_B_H(g, h);
    std::vector<std::string> bv(bh.begin(), bh.end());
    for (std::uint64_t mask = 0; mask < (1ull << bv.size()); ++mask) {
      std::set<std::string> s;
      for (std::size_t i = 0; i < bv.size(); ++i)
        if (mask & (1ull << i)) s.insert(bv[i]);
      out.push_back({h, s});
    }
  }
  return out;
}

bool lattice_isomorphism(const GraphPresentation& g, std::string& note) {
  Desingularization d = desingularize(g);
  std::vector<IdealData> pairs = all_pairs(g);
  std::vector<VertexSet> images;
  for (const auto& p : pairs) images.push_back(h_s_map(g, d, p.H, p.S));

  // Bijection onto the hereditary saturated sets of the desingularization.
  std::vector<VertexSet> target = enumerate_hereditary_saturated(d.graph);
  std::set<VertexSet> image_set(images.begin(), images.end());
  std::set<VertexSet> target_set(target.begin(), target.end());
  if (image_set.size() != images.size()) {
    note = "image not injective";
    return false;
  }
  if (image_set != target_set) {
    note = "image misses or exceeds the target lattice";
    return false;
  }
  // Order preserved and reflected.
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j)
      if (pair_leq(g, pairs[i], pairs[j]) !=
          set_leq(d.graph, images[i], images[j])) {
        note = "order not preserved and reflected";
        return false;
      }
  return true;
}

void criterion_7() {
  bool ok = true;
  std::string note;
  // The first two worked examples use fans of sinks, which the tail
  // construction cannot absorb; the tool refuses them explicitly, and the
  // supported variants (fans with an escape) stand in for the same shapes.
  for (const char* text : {kE1, kE2}) {
    try {
      desingularize(parse(text));
      ok = false;
      note = "sink fan unexpectedly desingularized";
    } catch (const std::invalid_argument&) {
    }
  }
  for (const char* text : {kE1Star, kE2Star, kE3}) {
    if (ok && !lattice_isomorphism(parse(text), note)) ok = false;
  }
  std::mt19937 rng(19);
  GenOptions o;
  for (int i = 0; i < 20 && ok; ++i) {
    GraphPresentation g = random_supported_presentation(rng, o);
    if (!lattice_isomorphism(g, note)) ok = false;
  }
  report(7, "ideal lattice isomorphism", ok, note);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  auto t1 = std::chrono::steady_clock::now();
  std::cout << "total "
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                   .count()
            << " ms\n";
  return failures == 0 ? 0 : 1;
}
