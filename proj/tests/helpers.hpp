// Shared test scaffolding: doctest driver with a --seed option for the
// randomized suites, and small parsing conveniences.
#pragma once

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "gca/parser.hpp"

inline std::uint64_t& test_seed() {
  static std::uint64_t seed = 20260825;
  return seed;
}

inline gca::GraphPresentation parse_ok(const std::string& text) {
  gca::ParseResult r = gca::parse_presentation(text);
  for (const auto& d : r.diagnostics)
    FAIL_CHECK("diagnostic at ", d.line, ":", d.col, ": ", d.message);
  REQUIRE(r.ok());
  return r.graph;
}

inline int run_tests(int argc, char** argv) {
  std::vector<char*> args;
  for (int i = 0; i < argc; ++i) {
    if (std::strncmp(argv[i], "--seed=", 7) == 0) {
      test_seed() = std::strtoull(argv[i] + 7, nullptr, 10);
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      test_seed() = std::strtoull(argv[++i], nullptr, 10);
    } else {
      args.push_back(argv[i]);
    }
  }
  doctest::Context ctx(static_cast<int>(args.size()), args.data());
  return ctx.run();
}

#define TEST_DRIVER_MAIN \
  int main(int argc, char** argv) { return run_tests(argc, argv); }
