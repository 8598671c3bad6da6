#pragma once

#include <string>
#include <vector>

#include "cimmap/model.hpp"

namespace cimmap {

// Brute-force replay of a mapping plan. Shares no arithmetic with the
// analytic metrics: placements are enumerated window by window, coverage is
// marked output pixel by output pixel, and cycles are counted pass by pass.
struct OracleReport {
  bool ok = true;
  long long replayed_cycles = 0;
  std::vector<std::string> errors;
};

// Checks, per tile and window set:
//  - array capacity (rows and usable columns),
//  - every output position covered for every unpruned channel,
//  - in-bounds placement for clamped (tetris-style) window sets,
//  - pruned channels within the declared count,
// and recounts cycles by iterating placements and passes one at a time.
OracleReport verify_plan(const MappingPlan& plan);

}  // namespace cimmap
