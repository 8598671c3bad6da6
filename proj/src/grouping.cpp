#include "cimmap/grouping.hpp"

#include <algorithm>
#include <numeric>

#include "cimmap/metrics.hpp"
#include "cimmap/tetris.hpp"

namespace cimmap {

void validate_groups(const LayerSpec& layer, int g) {
  if (g < 1) throw ValidationError(layer.name + ": groups must be >= 1");
  if (layer.in_channels % g || layer.out_channels % g)
    throw ValidationError(layer.name +
                          ": groups must divide both channel counts");
}

std::vector<int> candidate_groups(const std::vector<LayerSpec>& net,
                                  int max_groups) {
  int g = 0;
  for (const auto& layer : net) {
    g = std::gcd(g, layer.in_channels);
    g = std::gcd(g, layer.out_channels);
  }
  std::vector<int> out;
  for (int d = 1; d <= std::min(g, max_groups); ++d) {
    if (g % d == 0) out.push_back(d);
  }
  if (out.empty()) out.push_back(1);
  return out;
}

GroupSweepResult group_sweep(const std::vector<LayerSpec>& net,
                             const ArrayConfig& array,
                             const std::map<int, double>& accuracy,
                             double max_drop_pct, const MapperOptions& opt) {
  GroupSweepResult result;
  const auto base_it = accuracy.find(1);
  const double base_acc =
      base_it != accuracy.end() ? base_it->second : 0.0;

  long long best_cycles = -1;
  for (int g : candidate_groups(net)) {
    GroupSweepEntry e;
    e.groups = g;
    for (const auto& layer : net) {
      MappingPlan p = tetris_pipeline(layer, array, g, opt);
      e.cycles += plan_cycles_total(p);
    }
    const auto it = accuracy.find(g);
    e.accuracy = it != accuracy.end() ? it->second : base_acc;
    e.drop = base_acc - e.accuracy;
    e.allowed = e.drop <= max_drop_pct;
    if (e.allowed && (best_cycles < 0 || e.cycles < best_cycles)) {
      best_cycles = e.cycles;
      result.picked = g;
    }
    result.entries.push_back(e);
  }
  return result;
}

}  // namespace cimmap
