#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "obslab/graph.hpp"
#include "obslab_cli/report.hpp"

namespace obslab::cli {

struct SuiteOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> samples;
  std::optional<int> t;
  std::optional<int> c;
  std::optional<int> s;
  int exact_guard = 22;
};

// suite is one of obstructions, class-containment, contraption,
// crystallized, extractors, ramsey. Throws InvalidInput on bad knobs
// (including a missing --seed where the suite samples).
SuiteResult run_verify(const std::string& suite, const SuiteOptions& opts);

// Bounded probe of (even hole, H, K_t)-free graphs on n_max vertices. H must
// be a 2-forest.
SuiteResult run_scan(const Graph& h, int t, int n_max, const SuiteOptions& opts);

}  // namespace obslab::cli
