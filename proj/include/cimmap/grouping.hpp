#pragma once

#include <map>
#include <vector>

#include "cimmap/mappers.hpp"
#include "cimmap/model.hpp"

namespace cimmap {

// Throws ValidationError unless g divides both channel counts.
void validate_groups(const LayerSpec& layer, int g);

// Divisors of gcd(in_channels, out_channels) across all layers, capped.
std::vector<int> candidate_groups(const std::vector<LayerSpec>& net,
                                  int max_groups = 8);

struct GroupSweepEntry {
  int groups = 0;
  long long cycles = 0;
  double accuracy = 0.0;
  double drop = 0.0;   // vs groups = 1
  bool allowed = false;
};

struct GroupSweepResult {
  std::vector<GroupSweepEntry> entries;
  int picked = 1;
};

// Evaluates tetrisg network cycles for each candidate group count and picks
// the cheapest whose accuracy drop stays within the threshold. The accuracy
// table maps group count -> accuracy (percent).
GroupSweepResult group_sweep(const std::vector<LayerSpec>& net,
                             const ArrayConfig& array,
                             const std::map<int, double>& accuracy,
                             double max_drop_pct = 0.5,
                             const MapperOptions& opt = {});

}  // namespace cimmap
