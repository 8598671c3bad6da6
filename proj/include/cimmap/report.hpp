#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cimmap/mappers.hpp"
#include "cimmap/model.hpp"

namespace cimmap {

enum class OutputFormat { table, csv, json };

// CSV or JSON network description. CSV columns:
//   name, input (N or NxM), kernel, in_channels, out_channels [, groups]
// '#' starts a comment line.
std::vector<LayerSpec> load_network(const std::string& path);

// CSV accuracy table: groups, accuracy_percent.
std::map<int, double> load_accuracy_table(const std::string& path);

struct RunOptions {
  ArrayConfig array;
  Mapper mapper = Mapper::vw_sdk;
  int groups = 1;
  int max_macros = 1;
  bool run_oracle = false;
  bool grid_search = false;
  OutputFormat format = OutputFormat::table;
  MapperOptions mapper_opt;
};

struct LayerResult {
  LayerSpec layer;
  MappingPlan plan;
  long long cycles = 0;        // single macro, groups folded in
  long long grid_cycles = 0;   // best grid within max_macros
  MacroGrid grid;
  int active = 0;
  double utilization = 0.0;
  double edap = 0.0;
  bool oracle_ok = true;
  long long oracle_cycles = 0;
  std::string tuple_text;       // window tuples, for humans
};

struct NetworkResult {
  std::vector<LayerResult> layers;
  long long total_cycles = 0;
  long long total_grid_cycles = 0;
  double avg_utilization = 0.0;  // cycle weighted
  double total_edap = 0.0;
  long long total_params = 0;
  long long total_ops = 0;
  bool oracle_ok = true;
};

NetworkResult run_network(const std::vector<LayerSpec>& net,
                          const RunOptions& opt);

void write_report(std::ostream& os, const NetworkResult& result,
                  const RunOptions& opt);

// Per-grid listing for one layer (the --grid-search view).
void write_grid_search(std::ostream& os, const LayerResult& lr,
                       const RunOptions& opt);

std::string plan_tuple_text(const MappingPlan& plan);

}  // namespace cimmap
