#pragma once

#include <cstdint>
#include <random>

#include "gca/presentation.hpp"

namespace gca {

struct GenOptions {
  int max_vertices = 4;
  int max_edges = 6;
  std::uint64_t max_mult = 2;
  int max_preamble = 2;
  int max_period = 2;
  int max_exits = 2;
  int max_attachments = 1;
  bool allow_omega = true;
  bool allow_fans = true;
  bool allow_tails = true;
};

// A random well-formed presentation; always passes validate().
GraphPresentation random_presentation(std::mt19937& rng, const GenOptions& o);

// A random presentation accepted by desingularize: fans are non-sink, no
// attachment is a sink, and no singular vertex carries a tail.
GraphPresentation random_supported_presentation(std::mt19937& rng,
                                                const GenOptions& o);

// A random finite explicit graph: base vertices and finite edges only.
GraphPresentation random_explicit_graph(std::mt19937& rng, int max_vertices,
                                        int max_edges, std::uint64_t max_mult);

}  // namespace gca
