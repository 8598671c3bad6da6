#include "cimmap/model.hpp"

namespace cimmap {

const char* mapper_name(Mapper m) {
  switch (m) {
    case Mapper::img2col: return "img2col";
    case Mapper::sdk: return "sdk";
    case Mapper::vw_sdk: return "vw_sdk";
    case Mapper::vwc_sdk: return "vwc_sdk";
    case Mapper::tetris: return "tetris";
    case Mapper::tetrisg: return "tetrisg";
  }
  return "?";
}

Mapper mapper_from_name(const std::string& s) {
  if (s == "img2col") return Mapper::img2col;
  if (s == "sdk") return Mapper::sdk;
  if (s == "vw_sdk" || s == "vw") return Mapper::vw_sdk;
  if (s == "vwc_sdk" || s == "vwc") return Mapper::vwc_sdk;
  if (s == "tetris") return Mapper::tetris;
  if (s == "tetrisg") return Mapper::tetrisg;
  throw ValidationError("unknown mapper: " + s);
}

void validate(const LayerSpec& layer) {
  if (layer.kernel < 1)
    throw ValidationError(layer.name + ": kernel must be >= 1");
  if (layer.input_h < layer.kernel || layer.input_w < layer.kernel)
    throw ValidationError(layer.name + ": input smaller than kernel");
  if (layer.in_channels < 1 || layer.out_channels < 1)
    throw ValidationError(layer.name + ": channel counts must be >= 1");
  if (layer.groups < 1)
    throw ValidationError(layer.name + ": groups must be >= 1");
  if (layer.in_channels % layer.groups || layer.out_channels % layer.groups)
    throw ValidationError(layer.name +
                          ": groups must divide both channel counts");
}

void validate(const ArrayConfig& array) {
  if (array.rows < 1 || array.cols < 1)
    throw ValidationError("array dimensions must be >= 1");
  if (array.weight_bits < 1)
    throw ValidationError("weight_bits must be >= 1");
  if (array.usable_cols() < 1)
    throw ValidationError("weight_bits exceeds array columns");
}

}  // namespace cimmap
