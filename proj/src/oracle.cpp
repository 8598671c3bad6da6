#include "cimmap/oracle.hpp"

#include <algorithm>
#include <fmt/core.h>
#include <vector>

namespace cimmap {

namespace {

struct Coverage {
  int out_w = 0;
  int out_h = 0;
  std::vector<char> hit;

  void mark(int ox, int oy) { hit[static_cast<size_t>(oy) * out_w + ox] = 1; }
  bool full() const {
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }
};

}  // namespace

OracleReport verify_plan(const MappingPlan& plan) {
  OracleReport rep;
  const LayerSpec& L = plan.layer;
  const ArrayConfig& A = plan.array;
  const int k = L.kernel;
  const int out_w = L.input_w - k + 1;
  const int out_h = L.input_h - k + 1;
  const int group_ic = L.in_channels / plan.groups;
  const int group_oc = L.out_channels / plan.groups;
  const bool in_bounds_required =
      plan.mapper == Mapper::tetris || plan.mapper == Mapper::tetrisg;

  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.errors.push_back(std::move(msg));
  };

  if (plan.groups < 1 || L.in_channels % plan.groups ||
      L.out_channels % plan.groups)
    fail("groups do not divide the channel counts");

  // Channel bookkeeping: tiles plus pruned channels account for the group.
  int mapped_channels = 0;
  for (const auto& t : plan.tiles) mapped_channels += t.channels;
  if (mapped_channels + plan.pruned_channels != group_ic)
    fail(fmt::format("tiles cover {} channels plus {} pruned, expected {}",
                     mapped_channels, plan.pruned_channels, group_ic));

  for (size_t ti = 0; ti < plan.tiles.size(); ++ti) {
    const TilePlan& tile = plan.tiles[ti];
    if (tile.ic_tile < 1 || tile.oc_tile < 1 || tile.windows.empty()) {
      fail(fmt::format("tile {} is degenerate", ti));
      continue;
    }

    Coverage cov;
    cov.out_w = out_w;
    cov.out_h = out_h;
    cov.hit.assign(static_cast<size_t>(out_w) * out_h, 0);

    long long windows_placed = 0;
    for (const WindowSet& ws : tile.windows) {
      const int kx = ws.win.w - k + 1;
      const int ky = ws.win.h - k + 1;
      if (kx < 1 || ky < 1) {
        fail(fmt::format("tile {}: window smaller than kernel", ti));
        continue;
      }
      // Row and column demand for this shape.
      const long long rows_needed =
          static_cast<long long>(tile.ic_tile) * ws.win.w * ws.win.h;
      if (rows_needed > A.rows)
        fail(fmt::format("tile {}: {} rows needed, array has {}", ti,
                         rows_needed, A.rows));
      const long long cols_needed = static_cast<long long>(kx) * ky *
                                    tile.oc_tile * A.weight_bits;
      if (cols_needed > A.cols)
        fail(fmt::format("tile {}: {} cols needed, array has {}", ti,
                         cols_needed, A.cols));

      for (int iy = 0; iy < ws.count_y; ++iy) {
        for (int ix = 0; ix < ws.count_x; ++ix) {
          int x = ws.origin_x + ix * ws.stride_x;
          int y = ws.origin_y + iy * ws.stride_y;
          if (ws.clamped) {
            x = std::min(x, L.input_w - ws.win.w);
            y = std::min(y, L.input_h - ws.win.h);
          }
          if (x < 0 || y < 0 || x >= L.input_w || y >= L.input_h) {
            fail(fmt::format("tile {}: window origin ({},{}) outside image",
                             ti, x, y));
            continue;
          }
          if (in_bounds_required &&
              (x + ws.win.w > L.input_w || y + ws.win.h > L.input_h)) {
            fail(fmt::format("tile {}: window at ({},{}) overhangs image",
                             ti, x, y));
          }
          ++windows_placed;
          // Kernel positions this window computes, clipped to the image.
          for (int oy = y; oy <= y + ws.win.h - k && oy < out_h; ++oy) {
            for (int ox = x; ox <= x + ws.win.w - k && ox < out_w; ++ox) {
              cov.mark(ox, oy);
            }
          }
        }
      }
    }

    if (!cov.full())
      fail(fmt::format("tile {}: output positions left uncovered", ti));

    // Pass counting by stepping, then one product per tile.
    long long row_passes = 0;
    for (int ch = 0; ch < tile.channels; ch += tile.ic_tile) ++row_passes;
    long long col_passes = 0;
    for (int oc0 = 0; oc0 < group_oc; oc0 += tile.oc_tile) ++col_passes;
    rep.replayed_cycles += windows_placed * row_passes * col_passes;
  }

  if (plan.serialize_groups) rep.replayed_cycles *= plan.groups;
  return rep;
}

}  // namespace cimmap
