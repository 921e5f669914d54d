#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gca/presentation.hpp"

namespace gca {

// Structured counterexample attached to every negative verdict.  `kind`
// selects the replay strategy:
//
//   non_terminal_circuit  vertex on a circuit with a continuation; anchor is
//                         a vertex beyond the circuit (path counts grow with
//                         the length bound)
//   omega_edge            infinite-multiplicity edge; grows with materialized
//                         copies
//   fan_crossing          routes through a fan's copies; grows with copies
//   fan_reentry           fan whose copies emit >= 2 returning edges; grows
//                         with copies
//   period_defect         tail period step with forward >= 2; grows with
//                         tail length
//   period_escape         tail period step exits; grows with tail length
//   tail_reentry          tail period exit returning to the origin; grows
//                         with tail length
//   heredity_violation / saturation_violation / maximal_tail_violation /
//   condition_k           structural witnesses, checked directly
struct Witness {
  std::string kind;
  std::optional<VertexRef> vertex;     // where the defect is visible from
  std::optional<VertexRef> anchor;     // target whose path counts grow
  std::optional<std::string> circuit;  // offending circuit id
  std::optional<std::string> construct;  // offending fan/tail id
  std::string detail;                  // human-readable explanation
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  static Verdict yes() { return {true, std::nullopt}; }
  static Verdict no(Witness w) { return {false, std::move(w)}; }
};

}  // namespace gca
