#pragma once

#include <optional>

#include "cimmap/model.hpp"

namespace cimmap {

struct MapperOptions {
  double prune_budget_pct = 3.0;  // residual channels droppable, % of IC
  bool serialize_groups = false;
};

// Uniform-window plan over the (possibly grouped) layer dims. Ceiling-form
// window grid; overhang unless clamp is set. Empty when the window is
// infeasible for the array.
std::optional<MappingPlan> make_uniform_plan(const LayerSpec& layer,
                                             const ArrayConfig& array,
                                             const Window& win, int groups,
                                             bool clamp);

// K x K windows sliding at stride 1, channel-tiled rows, kernel-aligned
// columns.
MappingPlan map_img2col(const LayerSpec& layer, const ArrayConfig& array);

// All input channels in one window set: the largest window with
// IC * PW_w * PW_h <= rows, preferring more kernel positions, then more
// area. Falls back to the img2col plan when even K x K does not fit.
MappingPlan map_sdk(const LayerSpec& layer, const ArrayConfig& array);

// Variable-window search: K x K benchmark, PW_h ascending outer loop,
// PW_w ascending inner loop, ranges inclusive of the input size, keep on
// strict improvement.
MappingPlan search_vw_sdk(const LayerSpec& layer, const ArrayConfig& array,
                          int groups = 1);

// VW-SDK plan, then drop the residual channel tile (IC mod IC_t) when it is
// nonzero and within the prune budget.
MappingPlan map_vwc_sdk(const LayerSpec& layer, const ArrayConfig& array,
                        const MapperOptions& opt = {});

}  // namespace cimmap
