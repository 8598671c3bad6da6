#pragma once

#include <vector>

#include "cimmap/model.hpp"

namespace cimmap {

// All r x c grids with r * c <= max_macros, r ascending then c ascending.
std::vector<MacroGrid> enumerate_grids(int max_macros);

// Cycles when a grid of macros absorbs row passes (r) and column passes (c).
long long grid_cycles(const MappingPlan& plan, const MacroGrid& grid);

// Macros that actually hold weights under this grid; the rest are gated off.
int active_macros(const MappingPlan& plan, const MacroGrid& grid);

struct GridChoice {
  MacroGrid grid;
  long long cycles = 0;
  int active = 0;
};

// Cheapest grid within the budget; ties prefer fewer active macros, then
// smaller r.
GridChoice best_grid(const MappingPlan& plan, int max_macros);

// Relative energy-delay-area proxy: cycles^2 * active * (cells * active).
double edap_proxy(long long cycles, int active, const ArrayConfig& array);

}  // namespace cimmap
