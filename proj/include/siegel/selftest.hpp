#pragma once

#include "json.hpp"

#include <cstdint>

namespace siegel {

struct SelftestOptions {
  std::uint64_t seed = 1;
  int draws = 20;
  std::uint64_t samples = 20000;
  unsigned workers = 1;
};

/// Quick versions of the invariant suites. The result has one entry per
/// check plus an overall "passed" flag.
nlohmann::json run_selftest(const SelftestOptions& opts = {});

}  // namespace siegel
