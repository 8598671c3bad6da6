#include "cimmap/metrics.hpp"

#include <algorithm>

namespace cimmap {

int kernels_per_window(const Window& win, int kernel) {
  if (win.w < kernel || win.h < kernel) return 0;
  return (win.w - kernel + 1) * (win.h - kernel + 1);
}

int input_channel_tile(const ArrayConfig& array, const Window& win,
                       int in_channels) {
  const int fit = array.rows / win.area();
  return std::min(fit, in_channels);
}

int output_channel_tile(const ArrayConfig& array, const Window& win,
                        int kernel, int out_channels) {
  const int k = kernels_per_window(win, kernel);
  if (k == 0) return 0;
  const int fit = array.usable_cols() / k;
  return std::min(fit, out_channels);
}

DimCount window_fit(int input, int window, int kernel) {
  DimCount d;
  if (window > input) return d;
  const int stride = window - kernel + 1;
  d.full = (input - window) / stride + 1;
  d.remainder = (input - window) % stride;
  return d;
}

int window_count_ceil(int input, int window, int kernel) {
  const DimCount d = window_fit(input, window, kernel);
  if (d.full == 0) return 0;
  return d.full + (d.remainder ? 1 : 0);
}

long long plan_cycles(const MappingPlan& plan) {
  long long cycles = 0;
  const int oc = plan.group_out_channels();
  for (const auto& tile : plan.tiles) {
    const long long col_passes = ceil_div(oc, tile.oc_tile);
    cycles += tile.window_count() * tile.row_passes() * col_passes;
  }
  return cycles;
}

long long plan_cycles_total(const MappingPlan& plan) {
  const long long c = plan_cycles(plan);
  return plan.serialize_groups ? c * plan.groups : c;
}

double plan_utilization(const MappingPlan& plan) {
  const auto& a = plan.array;
  const int k = plan.layer.kernel;
  const int oc = plan.group_out_channels();
  const double cells = static_cast<double>(a.rows) * a.cols;

  long long total_passes = 0;
  double used = 0.0;
  for (const auto& tile : plan.tiles) {
    const int rp = tile.row_passes();
    const int cp = static_cast<int>(ceil_div(oc, tile.oc_tile));
    for (const auto& ws : tile.windows) {
      const int kpw = kernels_per_window(ws.win, k);
      for (int r = 0; r < rp; ++r) {
        const int ch =
            std::min(tile.ic_tile, tile.channels - r * tile.ic_tile);
        const long long rows_used =
            static_cast<long long>(ch) * ws.win.area();
        for (int c = 0; c < cp; ++c) {
          const int ocs = std::min(tile.oc_tile, oc - c * tile.oc_tile);
          const long long cols_used =
              static_cast<long long>(kpw) * ocs * a.weight_bits;
          used += ws.count() * (rows_used * cols_used / cells);
          total_passes += ws.count();
        }
      }
    }
  }
  return total_passes ? used / total_passes : 0.0;
}

long long conv_params(const LayerSpec& layer) {
  const long long k2 = static_cast<long long>(layer.kernel) * layer.kernel;
  return k2 * layer.in_channels * layer.out_channels / layer.groups;
}

long long conv_ops(const LayerSpec& layer) {
  return conv_params(layer) * layer.out_h() * layer.out_w();
}

}  // namespace cimmap
