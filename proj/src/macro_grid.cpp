#include "cimmap/macro_grid.hpp"

#include <algorithm>

#include "cimmap/metrics.hpp"

namespace cimmap {

std::vector<MacroGrid> enumerate_grids(int max_macros) {
  std::vector<MacroGrid> out;
  for (int r = 1; r <= max_macros; ++r) {
    for (int c = 1; r * c <= max_macros; ++c) out.push_back({r, c});
  }
  return out;
}

long long grid_cycles(const MappingPlan& plan, const MacroGrid& grid) {
  long long cycles = 0;
  const int oc = plan.group_out_channels();
  for (const auto& tile : plan.tiles) {
    const long long rp = ceil_div(tile.row_passes(), grid.r);
    const long long cp = ceil_div(ceil_div(oc, tile.oc_tile), grid.c);
    cycles += tile.window_count() * rp * cp;
  }
  if (plan.serialize_groups) cycles *= plan.groups;
  return cycles;
}

int active_macros(const MappingPlan& plan, const MacroGrid& grid) {
  const int oc = plan.group_out_channels();
  int active = 0;
  for (const auto& tile : plan.tiles) {
    const int r = std::min<long long>(grid.r, tile.row_passes());
    const int c = std::min<long long>(grid.c, ceil_div(oc, tile.oc_tile));
    active = std::max(active, r * c);
  }
  return active;
}

GridChoice best_grid(const MappingPlan& plan, int max_macros) {
  GridChoice best;
  bool first = true;
  for (const MacroGrid& g : enumerate_grids(max_macros)) {
    const long long c = grid_cycles(plan, g);
    const int a = active_macros(plan, g);
    const bool better =
        first || c < best.cycles ||
        (c == best.cycles && (a < best.active ||
                              (a == best.active && g.r < best.grid.r)));
    if (better) {
      best = {g, c, a};
      first = false;
    }
  }
  return best;
}

double edap_proxy(long long cycles, int active, const ArrayConfig& array) {
  const double cells = static_cast<double>(array.rows) * array.cols;
  const double c = static_cast<double>(cycles);
  return c * c * active * (cells * active);
}

}  // namespace cimmap
