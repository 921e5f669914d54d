#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gca/presentation.hpp"

namespace gca {

struct ParseResult {
  GraphPresentation graph;
  std::vector<Diagnostic> diagnostics;  // empty on success

  bool ok() const { return diagnostics.empty(); }
};

// Parses the line-oriented graph description language:
//
//   vertex NAME
//   edge SRC DST [*N | *w]
//   fan NAME emitter=V (sink | exits={V:N,...})
//   tail NAME origin=V preamble=[STEP ...] period=[STEP ...]
//
// with STEP = (forward=N, exits={V:N,...}, attach=[{exits={V:N,...}} ...]).
// Statements are separated by ';' or end of line; '#' starts a comment.
ParseResult parse_presentation(const std::string& text);

}  // namespace gca
