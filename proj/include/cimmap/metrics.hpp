#pragma once

#include "cimmap/model.hpp"

namespace cimmap {

inline long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

// Kernel positions inside one window (per dimension: PW - K + 1).
int kernels_per_window(const Window& win, int kernel);

// Max input channels whose unrolled window pixels fit the rows.
// 0 means the window does not fit at all.
int input_channel_tile(const ArrayConfig& array, const Window& win,
                       int in_channels);

// Max output channels expressible in the usable columns for one window
// shape. 0 means infeasible (too many kernel positions per window).
int output_channel_tile(const ArrayConfig& array, const Window& win,
                        int kernel, int out_channels);

struct DimCount {
  int full = 0;       // windows at the regular stride, fully in bounds
  int remainder = 0;  // uncovered input pixels past the last full window
};

// Full-window count along one input dimension at coverage stride PW-K+1.
DimCount window_fit(int input, int window, int kernel);

// Ceiling-form count: full windows plus one overhang window per nonzero
// remainder.
int window_count_ceil(int input, int window, int kernel);

// Analytic cycle count: sum over tiles of windows * row passes * col passes.
long long plan_cycles(const MappingPlan& plan);

// Cycles after group handling (x groups when serialized).
long long plan_cycles_total(const MappingPlan& plan);

// Cycle-weighted fraction of crossbar cells holding weights, averaged over
// every (window, row pass, col pass) combination of the plan.
double plan_utilization(const MappingPlan& plan);

// Parameter and MAC counts for the layer (grouping divides both).
long long conv_params(const LayerSpec& layer);
long long conv_ops(const LayerSpec& layer);

}  // namespace cimmap
