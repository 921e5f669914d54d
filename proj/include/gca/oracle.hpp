#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gca/presentation.hpp"
#include "gca/verdict.hpp"

namespace gca {

// Finite explicit expansion of a presentation: `copies` fan copies and
// omega-edge instances, `tail_len` tail positions are materialized; the last
// tail position's forward edge is dropped.  Names are stable, so growing the
// parameters only adds vertices and edges.
struct Truncation {
  std::uint64_t copies = 3;
  std::uint64_t tail_len = 6;
  GraphPresentation explicit_graph;    // base graph only
  std::vector<std::string> truncated;  // human-readable cut markers
};

Truncation truncate(const GraphPresentation& g, std::uint64_t copies,
                    std::uint64_t tail_len);

// Explicit-graph name of a symbolic vertex: fan copies become id.i, tail
// position k becomes id.k (a residue maps to its first instance), an
// attachment appends .a<slot>.  Throws when the instance lies beyond the
// truncation.
std::string truncation_name(const GraphPresentation& g, const Truncation& t,
                            const VertexRef& v);

// Exact number of paths of length <= max_len from v to w by dynamic
// programming, saturating far above any value the tests compare against.
std::uint64_t brute_path_count(const Truncation& t, const std::string& v,
                               const std::string& w, std::uint64_t max_len);

// All hereditary saturated vertex subsets of the explicit graph by direct
// 2^n filtering; requires at most 20 vertices.
std::vector<std::set<std::string>> brute_hereditary_saturated(
    const Truncation& t);

// Independently confirms a negative verdict's witness by pumping it across
// growing truncations: the cited counts must strictly increase (or the
// cited structure must be present with spare edges at every scale).
// Fabricated witnesses - e.g. one citing a terminal circuit - come back
// false.
bool replay_witness(const GraphPresentation& g, const Witness& w);

}  // namespace gca
