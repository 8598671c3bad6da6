#include "cimmap/report.hpp"

#include <algorithm>
#include <fmt/core.h>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "cimmap/grouping.hpp"
#include "cimmap/macro_grid.hpp"
#include "cimmap/metrics.hpp"
#include "cimmap/oracle.hpp"
#include "cimmap/tetris.hpp"

namespace cimmap {

namespace {

std::pair<int, int> parse_size(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) {
    const int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t\r");
    const auto e = item.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::vector<LayerSpec> load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open network file: " + path);

  std::vector<LayerSpec> net;
  if (ends_with(path, ".json")) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw ValidationError(fmt::format("{}: {}", path, ex.what()));
    }
    if (!j.is_array()) throw ValidationError(path + ": expected a top-level array of layers");
    for (const auto& e : j) {
      LayerSpec L;
      try {
        L.name = e.value("name", fmt::format("layer{}", net.size() + 1));
        if (e.contains("input")) {
          const auto [h, w] = parse_size(e["input"].get<std::string>());
          L.input_h = h;
          L.input_w = w;
        } else {
          L.input_h = e.at("input_h").get<int>();
          L.input_w = e.at("input_w").get<int>();
        }
        L.kernel = e.at("kernel").get<int>();
        L.in_channels = e.at("in_channels").get<int>();
        L.out_channels = e.at("out_channels").get<int>();
        L.groups = e.value("groups", 1);
      } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(fmt::format("{}: layer {}: {}", path, net.size() + 1, ex.what()));
      }
      validate(L);
      net.push_back(std::move(L));
    }
    return net;
  }

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() < 5)
      throw ValidationError("bad network line: " + line);
    LayerSpec L;
    L.name = f[0];
    const auto [h, w] = parse_size(f[1]);
    L.input_h = h;
    L.input_w = w;
    L.kernel = std::stoi(f[2]);
    L.in_channels = std::stoi(f[3]);
    L.out_channels = std::stoi(f[4]);
    L.groups = f.size() > 5 && !f[5].empty() ? std::stoi(f[5]) : 1;
    validate(L);
    net.push_back(std::move(L));
  }
  if (net.empty()) throw ValidationError("network file has no layers");
  return net;
}

std::map<int, double> load_accuracy_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open accuracy table: " + path);
  std::map<int, double> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() < 2) throw ValidationError("bad accuracy line: " + line);
    table[std::stoi(f[0])] = std::stod(f[1]);
  }
  return table;
}

std::string plan_tuple_text(const MappingPlan& plan) {
  std::string out;
  const int oc = plan.group_out_channels();
  for (const auto& tile : plan.tiles) {
    if (!out.empty()) out += " + ";
    const Window& w = tile.windows.front().win;
    out += fmt::format("{}x{}x{}x{}", w.w, w.h, tile.ic_tile,
                       std::min(tile.oc_tile, oc));
  }
  if (plan.pruned_channels)
    out += fmt::format(" (pruned {})", plan.pruned_channels);
  return out;
}

static MappingPlan plan_for(const LayerSpec& layer, const RunOptions& opt) {
  const Mapper m = opt.mapper;
  if (layer.groups > 1 && m != Mapper::tetrisg)
    throw ValidationError(layer.name +
                          ": only tetrisg maps natively grouped layers");
  switch (m) {
    case Mapper::img2col: return map_img2col(layer, opt.array);
    case Mapper::sdk: return map_sdk(layer, opt.array);
    case Mapper::vw_sdk: return search_vw_sdk(layer, opt.array);
    case Mapper::vwc_sdk: return map_vwc_sdk(layer, opt.array, opt.mapper_opt);
    case Mapper::tetris: return tetris_pipeline(layer, opt.array, 1,
                                                opt.mapper_opt);
    case Mapper::tetrisg: {
      const int g = std::max(opt.groups, layer.groups);
      validate_groups(layer, g);
      return tetris_pipeline(layer, opt.array, g, opt.mapper_opt);
    }
  }
  throw ValidationError("unhandled mapper");
}

NetworkResult run_network(const std::vector<LayerSpec>& net,
                          const RunOptions& opt) {
  NetworkResult result;
  for (const auto& layer : net) {
    LayerResult lr;
    lr.layer = layer;
    lr.plan = plan_for(layer, opt);
    lr.cycles = plan_cycles_total(lr.plan);
    const GridChoice gc = best_grid(lr.plan, opt.max_macros);
    lr.grid = gc.grid;
    lr.grid_cycles = gc.cycles;
    lr.active = gc.active;
    lr.utilization = plan_utilization(lr.plan);
    lr.edap = edap_proxy(gc.cycles, gc.active, opt.array);
    lr.tuple_text = plan_tuple_text(lr.plan);
    if (opt.run_oracle) {
      const OracleReport rep = verify_plan(lr.plan);
      lr.oracle_ok = rep.ok && rep.replayed_cycles == plan_cycles_total(lr.plan);
      lr.oracle_cycles = rep.replayed_cycles;
      result.oracle_ok = result.oracle_ok && lr.oracle_ok;
    }
    result.total_cycles += lr.cycles;
    result.total_grid_cycles += lr.grid_cycles;
    result.total_edap += lr.edap;
    result.total_params += conv_params(layer);
    result.total_ops += conv_ops(layer);
    result.avg_utilization += lr.utilization * lr.cycles;
    result.layers.push_back(std::move(lr));
  }
  if (result.total_cycles)
    result.avg_utilization /= static_cast<double>(result.total_cycles);
  return result;
}

void write_report(std::ostream& os, const NetworkResult& result,
                  const RunOptions& opt) {
  switch (opt.format) {
    case OutputFormat::table: {
      std::size_t name_w = 5, tuple_w = 6;
      for (const auto& lr : result.layers) {
        name_w = std::max(name_w, lr.layer.name.size());
        tuple_w = std::max(tuple_w, lr.tuple_text.size());
      }
      os << fmt::format("{:<{}} {:<{}} {:>7} {:>6} {:>9} {:>7} {:>12}\n",
                        "layer", name_w, "tuples", tuple_w, "windows", "util%",
                        "cycles", "grid", "edap");
      for (const auto& lr : result.layers) {
        long long windows = 0;
        for (const auto& t : lr.plan.tiles) windows += t.window_count();
        os << fmt::format(
            "{:<{}} {:<{}} {:>7} {:>6.1f} {:>9} {:>7} {:>12.3e}\n",
            lr.layer.name, name_w, lr.tuple_text, tuple_w, windows,
            lr.utilization * 100.0, lr.cycles,
            fmt::format("{}x{}", lr.grid.r, lr.grid.c), lr.edap);
        if (opt.run_oracle && !lr.oracle_ok)
          os << fmt::format("  !! oracle mismatch: replayed {} cycles\n",
                            lr.oracle_cycles);
      }
      os << fmt::format(
          "total: cycles={} grid_cycles={} params={} macs={} util={:.1f}% "
          "edap={:.3e}\n",
          result.total_cycles, result.total_grid_cycles, result.total_params,
          result.total_ops, result.avg_utilization * 100.0,
          result.total_edap);
      if (opt.run_oracle)
        os << fmt::format("oracle: {}\n", result.oracle_ok ? "ok" : "FAILED");
      break;
    }
    case OutputFormat::csv: {
      os << "layer,tuples,cycles,grid_cycles,grid,active,utilization,edap";
      if (opt.run_oracle) os << ",oracle";
      os << "\n";
      for (const auto& lr : result.layers) {
        os << fmt::format("{},{},{},{},{}x{},{},{:.6f},{:.6e}",
                          lr.layer.name, lr.tuple_text, lr.cycles,
                          lr.grid_cycles, lr.grid.r, lr.grid.c, lr.active,
                          lr.utilization, lr.edap);
        if (opt.run_oracle) os << (lr.oracle_ok ? ",ok" : ",mismatch");
        os << "\n";
      }
      os << fmt::format("total,,{},{},,,{:.6f},{:.6e}", result.total_cycles,
                        result.total_grid_cycles, result.avg_utilization,
                        result.total_edap);
      if (opt.run_oracle) os << (result.oracle_ok ? ",ok" : ",mismatch");
      os << "\n";
      break;
    }
    case OutputFormat::json: {
      nlohmann::ordered_json j;
      j["mapper"] = mapper_name(opt.mapper);
      j["array"] = {{"rows", opt.array.rows},
                    {"cols", opt.array.cols},
                    {"weight_bits", opt.array.weight_bits}};
      j["max_macros"] = opt.max_macros;
      j["layers"] = nlohmann::ordered_json::array();
      for (const auto& lr : result.layers) {
        nlohmann::ordered_json e;
        e["name"] = lr.layer.name;
        e["tuples"] = lr.tuple_text;
        e["cycles"] = lr.cycles;
        e["grid"] = fmt::format("{}x{}", lr.grid.r, lr.grid.c);
        e["grid_cycles"] = lr.grid_cycles;
        e["active_macros"] = lr.active;
        e["utilization"] = lr.utilization;
        e["edap"] = lr.edap;
        if (opt.run_oracle) {
          e["oracle_ok"] = lr.oracle_ok;
          e["oracle_cycles"] = lr.oracle_cycles;
        }
        j["layers"].push_back(std::move(e));
      }
      j["total_cycles"] = result.total_cycles;
      j["total_grid_cycles"] = result.total_grid_cycles;
      j["total_params"] = result.total_params;
      j["total_macs"] = result.total_ops;
      j["avg_utilization"] = result.avg_utilization;
      j["total_edap"] = result.total_edap;
      if (opt.run_oracle) j["oracle_ok"] = result.oracle_ok;
      os << j.dump(2) << "\n";
      break;
    }
  }
}

void write_grid_search(std::ostream& os, const LayerResult& lr,
                       const RunOptions& opt) {
  os << fmt::format("{}: grids up to {} macros\n", lr.layer.name,
                    opt.max_macros);
  for (const MacroGrid& g : enumerate_grids(opt.max_macros)) {
    os << fmt::format("  {}x{}: cycles={} active={}\n", g.r, g.c,
                      grid_cycles(lr.plan, g), active_macros(lr.plan, g));
  }
}

}  // namespace cimmap
