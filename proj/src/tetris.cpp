#include "cimmap/tetris.hpp"

#include <algorithm>
#include <cmath>

#include "cimmap/metrics.hpp"

namespace cimmap {

namespace {

// Factor pairs (a, b) of n with a <= b, most balanced first.
std::vector<std::pair<int, int>> factor_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int a = static_cast<int>(std::sqrt(static_cast<double>(n))); a >= 1;
       --a) {
    if (n % a == 0) out.emplace_back(a, n / a);
  }
  return out;
}

// In-bounds regular grid (floor counts).
WindowSet floor_grid(const LayerSpec& layer, const Window& win) {
  WindowSet ws;
  ws.win = win;
  ws.stride_x = win.w - layer.kernel + 1;
  ws.stride_y = win.h - layer.kernel + 1;
  ws.count_x = window_fit(layer.input_w, win.w, layer.kernel).full;
  ws.count_y = window_fit(layer.input_h, win.h, layer.kernel).full;
  ws.clamped = true;
  return ws;
}

// Ceiling-count grid with the trailing origins clamped into the image.
WindowSet clamped_ceil_grid(const LayerSpec& layer, const Window& win) {
  WindowSet ws;
  ws.win = win;
  ws.stride_x = win.w - layer.kernel + 1;
  ws.stride_y = win.h - layer.kernel + 1;
  ws.count_x = window_count_ceil(layer.input_w, win.w, layer.kernel);
  ws.count_y = window_count_ceil(layer.input_h, win.h, layer.kernel);
  ws.clamped = true;
  return ws;
}

// One reshaped marginal strip. vertical = strip along the right edge
// (windows stacked in y); otherwise along the bottom edge. Returns an empty
// optional when the reshape cannot hold a kernel or would exceed the
// primary window's row footprint or kernel-position count.
std::optional<WindowSet> marginal_strip(const LayerSpec& layer,
                                        const Window& primary, int remainder,
                                        bool vertical, int kernel) {
  const int thin = remainder + kernel - 1;
  int long_dim = primary.area() / thin;
  long_dim = std::min(long_dim, vertical ? layer.input_h : layer.input_w);
  if (long_dim < kernel) return std::nullopt;

  Window mw = vertical ? Window{thin, long_dim} : Window{long_dim, thin};
  if (mw.area() > primary.area()) return std::nullopt;
  if (kernels_per_window(mw, kernel) > kernels_per_window(primary, kernel))
    return std::nullopt;

  WindowSet ws;
  ws.win = mw;
  ws.clamped = true;
  if (vertical) {
    ws.origin_x = layer.input_w - mw.w;
    ws.count_x = 1;
    ws.stride_y = mw.h - kernel + 1;
    ws.count_y = static_cast<int>(
        ceil_div(layer.input_h - mw.h, ws.stride_y) + 1);
  } else {
    ws.origin_y = layer.input_h - mw.h;
    ws.count_y = 1;
    ws.stride_x = mw.w - kernel + 1;
    ws.count_x = static_cast<int>(
        ceil_div(layer.input_w - mw.w, ws.stride_x) + 1);
  }
  return ws;
}

// Cheapest in-bounds cover for one window shape: floor grid plus marginal
// strips when that takes fewer windows than the clamped ceiling grid.
std::vector<WindowSet> best_cover(const LayerSpec& layer, const Window& win) {
  const int k = layer.kernel;
  const WindowSet ceil_form = clamped_ceil_grid(layer, win);

  const DimCount dx = window_fit(layer.input_w, win.w, k);
  const DimCount dy = window_fit(layer.input_h, win.h, k);
  std::vector<WindowSet> marg_form;
  marg_form.push_back(floor_grid(layer, win));
  bool feasible = true;
  if (dx.remainder) {
    auto s = marginal_strip(layer, win, dx.remainder, true, k);
    if (s)
      marg_form.push_back(*s);
    else
      feasible = false;
  }
  if (dy.remainder) {
    auto s = marginal_strip(layer, win, dy.remainder, false, k);
    if (s)
      marg_form.push_back(*s);
    else
      feasible = false;
  }

  long long n_marg = 0;
  for (const auto& ws : marg_form) n_marg += ws.count();
  if (feasible && n_marg < ceil_form.count()) return marg_form;
  return {ceil_form};
}

long long cover_count(const std::vector<WindowSet>& sets) {
  long long n = 0;
  for (const auto& ws : sets) n += ws.count();
  return n;
}

}  // namespace

MappingPlan tetris_pipeline(const LayerSpec& layer, const ArrayConfig& array,
                            int groups, const MapperOptions& opt,
                            TetrisTrace* trace) {
  MappingPlan seed = search_vw_sdk(layer, array, groups);
  const int k = layer.kernel;
  const int ic = seed.group_in_channels();
  const int oc = seed.group_out_channels();

  Window win = seed.tiles.front().windows.front().win;
  const int ic_tile = seed.tiles.front().ic_tile;
  const int oc_tile = seed.tiles.front().oc_tile;
  const long long col_passes = ceil_div(oc, oc_tile);
  long long cycles = plan_cycles(seed);

  TetrisTrace tr;
  tr.seed_cycles = cycles;
  tr.seed_window = win;

  // Square-window stage: swap to the most balanced factor pair of the
  // kernel-position count at a strictly smaller footprint. The channel and
  // output tiles carry over (the kernel-position count is preserved).
  const int n_conv = kernels_per_window(win, k);
  for (const auto& [a, b] : factor_pairs(n_conv)) {
    for (const Window cand : {Window{a + k - 1, b + k - 1},
                              Window{b + k - 1, a + k - 1}}) {
      if (cand.w > layer.input_w || cand.h > layer.input_h) continue;
      if (cand.area() >= win.area()) continue;
      const long long n =
          static_cast<long long>(
              window_count_ceil(layer.input_w, cand.w, k)) *
          window_count_ceil(layer.input_h, cand.h, k);
      const long long c = n * ceil_div(ic, ic_tile) * col_passes;
      if (c <= cycles) {
        win = cand;
        cycles = c;
        tr.square_accepted = true;
        break;
      }
    }
    if (tr.square_accepted) break;
  }
  tr.square_window = win;
  tr.square_cycles = cycles;

  // Marginal stage: cheapest in-bounds cover for the refined window.
  auto cover = best_cover(layer, win);
  const long long n_cover = cover_count(cover);
  long long marg_cycles = n_cover * ceil_div(ic, ic_tile) * col_passes;
  tr.marginal_cycles = marg_cycles;

  MappingPlan plan;
  plan.layer = layer;
  plan.array = array;
  plan.groups = groups;
  plan.serialize_groups = opt.serialize_groups;
  plan.mapper = groups > 1 ? Mapper::tetrisg : Mapper::tetris;
  {
    TilePlan t;
    t.channels = ic;
    t.ic_tile = ic_tile;
    t.oc_tile = oc_tile;
    t.windows = cover;
    plan.tiles.push_back(std::move(t));
  }

  // Depth stage: re-pack full tiles at the window's true row capacity and
  // shape a dedicated window for the channel tail, pruning within budget
  // when nothing fits. Accepted only on strictly fewer cycles.
  const int repack = std::min(array.rows / win.area(), ic);
  const int full_tiles = ic / repack;
  int tail = ic % repack;
  const int budget = static_cast<int>(
      std::ceil(opt.prune_budget_pct / 100.0 * ic));

  std::vector<TilePlan> depth_tiles;
  long long depth_cycles = 0;
  for (int i = 0; i < full_tiles; ++i) {
    TilePlan t;
    t.channels = repack;
    t.ic_tile = repack;
    t.oc_tile = oc_tile;
    t.windows = cover;
    depth_cycles += n_cover * col_passes;
    depth_tiles.push_back(std::move(t));
  }
  int pruned = 0;
  if (tail > 0) {
    const int max_conv = array.usable_cols() / oc;
    std::optional<Window> found;
    int keep = tail;
    while (!found && keep > 0 && pruned <= budget) {
      for (const auto& [a, b] : factor_pairs(std::max(max_conv, 1))) {
        for (const Window cand : {Window{b + k - 1, a + k - 1},
                                  Window{a + k - 1, b + k - 1}}) {
          if (cand.w > layer.input_w || cand.h > layer.input_h) continue;
          if (static_cast<long long>(cand.area()) * keep > array.rows)
            continue;
          if (output_channel_tile(array, cand, k, oc) < 1) continue;
          found = cand;
          break;
        }
        if (found) break;
      }
      if (!found) {
        --keep;
        ++pruned;
      }
    }
    TilePlan t;
    if (found && pruned <= budget) {
      t.channels = keep;
      t.ic_tile = keep;
      t.oc_tile = output_channel_tile(array, *found, k, oc);
      t.windows = best_cover(layer, *found);
      depth_cycles += cover_count(t.windows) * ceil_div(oc, t.oc_tile);
    } else {
      pruned = 0;
      t.channels = tail;
      t.ic_tile = tail;
      t.oc_tile = oc_tile;
      t.windows = cover;
      depth_cycles += n_cover * col_passes;
    }
    depth_tiles.push_back(std::move(t));
  }

  if (depth_cycles < marg_cycles) {
    plan.tiles = std::move(depth_tiles);
    plan.pruned_channels = pruned;
    tr.depth_accepted = true;
    tr.pruned_channels = pruned;
  }
  tr.final_cycles = plan_cycles(plan);
  if (trace) *trace = tr;
  return plan;
}

}  // namespace cimmap
