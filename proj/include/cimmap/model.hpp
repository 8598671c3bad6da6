#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cimmap {

// One crossbar macro: rows take unrolled input windows, columns take kernels.
// Multi-bit weights occupy weight_bits adjacent columns per cell value.
struct ArrayConfig {
  int rows = 512;
  int cols = 512;
  int weight_bits = 1;

  int usable_cols() const { return cols / weight_bits; }
};

struct LayerSpec {
  std::string name;
  int input_h = 0;
  int input_w = 0;
  int kernel = 0;        // square KxK, stride 1, no padding
  int in_channels = 0;
  int out_channels = 0;
  int groups = 1;

  int out_h() const { return input_h - kernel + 1; }
  int out_w() const { return input_w - kernel + 1; }
};

enum class Mapper { img2col, sdk, vw_sdk, vwc_sdk, tetris, tetrisg };

const char* mapper_name(Mapper m);
Mapper mapper_from_name(const std::string& s);

// A parallel window: PW_w x PW_h patch of the input feature map whose
// unrolled pixels share one set of crossbar rows.
struct Window {
  int w = 0;
  int h = 0;

  int area() const { return w * h; }
  bool operator==(const Window&) const = default;
};

// A uniform grid of identical windows plus its placement recipe. Placement
// matters only to the replay oracle; the analytic cycle count uses count().
struct WindowSet {
  Window win;
  int origin_x = 0;  // first window origin (marginal strips are edge aligned)
  int origin_y = 0;
  int count_x = 0;   // windows along the input width
  int count_y = 0;   // windows along the input height
  int stride_x = 1;
  int stride_y = 1;
  bool clamped = false;  // true: last origin clamped in bounds; false: overhang

  long long count() const {
    return static_cast<long long>(count_x) * count_y;
  }
};

// One channel tile of a mapping: `channels` input channels served by the
// window sets below, ic_tile channels per row pass.
struct TilePlan {
  int channels = 0;
  int ic_tile = 0;
  int oc_tile = 0;
  std::vector<WindowSet> windows;

  int row_passes() const { return (channels + ic_tile - 1) / ic_tile; }
  long long window_count() const {
    long long n = 0;
    for (const auto& ws : windows) n += ws.count();
    return n;
  }
};

struct MappingPlan {
  Mapper mapper = Mapper::img2col;
  LayerSpec layer;
  ArrayConfig array;
  int groups = 1;               // grouped dims already divided into tiles
  bool serialize_groups = false;
  int pruned_channels = 0;      // per group
  std::vector<TilePlan> tiles;  // covers one group's in_channels/groups

  int group_in_channels() const { return layer.in_channels / groups; }
  int group_out_channels() const { return layer.out_channels / groups; }
};

struct MacroGrid {
  int r = 1;  // macros absorbing row passes
  int c = 1;  // macros absorbing column passes

  int size() const { return r * c; }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

void validate(const LayerSpec& layer);
void validate(const ArrayConfig& array);

}  // namespace cimmap
