#pragma once

#include "cimmap/mappers.hpp"
#include "cimmap/model.hpp"

namespace cimmap {

// Refinement trace for one layer, stage by stage.
struct TetrisTrace {
  long long seed_cycles = 0;      // VW-SDK seed
  long long square_cycles = 0;    // after square-window swap
  long long marginal_cycles = 0;  // after marginal-window recount
  long long final_cycles = 0;     // after depth re-pack
  Window seed_window;
  Window square_window;
  bool square_accepted = false;
  bool depth_accepted = false;
  int pruned_channels = 0;
};

// Full pipeline: VW-SDK seed, square-window swap, marginal windows, depth
// re-pack with bounded pruning. groups > 1 runs on the grouped dims.
MappingPlan tetris_pipeline(const LayerSpec& layer, const ArrayConfig& array,
                            int groups = 1, const MapperOptions& opt = {},
                            TetrisTrace* trace = nullptr);

}  // namespace cimmap
