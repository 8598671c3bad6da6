#include "cimmap/mappers.hpp"

#include <algorithm>
#include <cmath>

#include "cimmap/metrics.hpp"

namespace cimmap {

namespace {

void check_group_divides(const LayerSpec& layer, int groups) {
  if (groups < 1)
    throw ValidationError(layer.name + ": groups must be >= 1");
  if (layer.in_channels % groups || layer.out_channels % groups)
    throw ValidationError(layer.name +
                          ": groups must divide both channel counts");
}

WindowSet grid_set(const LayerSpec& layer, const Window& win, bool clamp) {
  WindowSet ws;
  ws.win = win;
  ws.stride_x = win.w - layer.kernel + 1;
  ws.stride_y = win.h - layer.kernel + 1;
  ws.count_x = window_count_ceil(layer.input_w, win.w, layer.kernel);
  ws.count_y = window_count_ceil(layer.input_h, win.h, layer.kernel);
  ws.clamped = clamp;
  return ws;
}

}  // namespace

std::optional<MappingPlan> make_uniform_plan(const LayerSpec& layer,
                                             const ArrayConfig& array,
                                             const Window& win, int groups,
                                             bool clamp) {
  if (win.w > layer.input_w || win.h > layer.input_h) return std::nullopt;
  const int ic = layer.in_channels / groups;
  const int oc = layer.out_channels / groups;
  const int ic_tile = input_channel_tile(array, win, ic);
  const int oc_tile = output_channel_tile(array, win, layer.kernel, oc);
  if (ic_tile < 1 || oc_tile < 1) return std::nullopt;

  MappingPlan plan;
  plan.layer = layer;
  plan.array = array;
  plan.groups = groups;
  TilePlan tile;
  tile.channels = ic;
  tile.ic_tile = ic_tile;
  tile.oc_tile = oc_tile;
  tile.windows.push_back(grid_set(layer, win, clamp));
  plan.tiles.push_back(std::move(tile));
  return plan;
}

MappingPlan map_img2col(const LayerSpec& layer, const ArrayConfig& array) {
  validate(layer);
  validate(array);
  const Window kxk{layer.kernel, layer.kernel};
  auto plan = make_uniform_plan(layer, array, kxk, 1, false);
  if (!plan)
    throw ValidationError(layer.name + ": kernel window does not fit array");
  plan->mapper = Mapper::img2col;
  return *plan;
}

MappingPlan map_sdk(const LayerSpec& layer, const ArrayConfig& array) {
  validate(layer);
  validate(array);
  const int k = layer.kernel;
  const int ic = layer.in_channels;

  // Largest window holding every input channel at once.
  Window best{0, 0};
  int best_kpw = -1;
  for (int h = k; h <= layer.input_h; ++h) {
    for (int w = k; w <= layer.input_w; ++w) {
      const Window win{w, h};
      if (static_cast<long long>(ic) * win.area() > array.rows) continue;
      if (output_channel_tile(array, win, k, layer.out_channels) < 1) continue;
      const int kpw = kernels_per_window(win, k);
      if (kpw > best_kpw ||
          (kpw == best_kpw && win.area() > best.area())) {
        best = win;
        best_kpw = kpw;
      }
    }
  }

  if (best_kpw < 0) {
    // Not even K x K fits all channels: channel-tiled fallback.
    MappingPlan plan = map_img2col(layer, array);
    plan.mapper = Mapper::sdk;
    return plan;
  }
  auto plan = make_uniform_plan(layer, array, best, 1, false);
  plan->mapper = Mapper::sdk;
  return *plan;
}

MappingPlan search_vw_sdk(const LayerSpec& layer, const ArrayConfig& array,
                          int groups) {
  validate(layer);
  validate(array);
  check_group_divides(layer, groups);

  const int k = layer.kernel;
  const Window kxk{k, k};
  auto best = make_uniform_plan(layer, array, kxk, groups, false);
  if (!best)
    throw ValidationError(layer.name + ": kernel window does not fit array");
  long long best_cycles = plan_cycles(*best);

  for (int h = k; h <= layer.input_h; ++h) {
    for (int w = k; w <= layer.input_w; ++w) {
      if (w == k && h == k) continue;
      auto cand = make_uniform_plan(layer, array, Window{w, h}, groups, false);
      if (!cand) continue;
      const long long c = plan_cycles(*cand);
      if (c < best_cycles) {
        best = std::move(cand);
        best_cycles = c;
      }
    }
  }
  best->mapper = Mapper::vw_sdk;
  return *best;
}

MappingPlan map_vwc_sdk(const LayerSpec& layer, const ArrayConfig& array,
                        const MapperOptions& opt) {
  MappingPlan plan = search_vw_sdk(layer, array);
  plan.mapper = Mapper::vwc_sdk;

  TilePlan& tile = plan.tiles.front();
  const int residual = tile.channels % tile.ic_tile;
  const int budget = static_cast<int>(
      std::ceil(opt.prune_budget_pct / 100.0 * tile.channels));
  if (residual > 0 && residual <= budget) {
    plan.pruned_channels = residual;
    tile.channels -= residual;
  }
  return plan;
}

}  // namespace cimmap
