#include <fmt/core.h>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cimmap/grouping.hpp"
#include "cimmap/report.hpp"

namespace {

std::pair<int, int> parse_array(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos)
    throw cimmap::ValidationError("array must look like 512x512");
  return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution-to-crossbar mapping cost explorer"};
  app.get_formatter()->column_width(34);

  std::string network_path;
  std::string array_text = "512x512";
  std::string mapper_text = "vw_sdk";
  std::string format_text = "table";
  std::string accuracy_path;
  double accuracy_threshold = 0.5;
  double prune_budget = 3.0;
  int weight_bits = 1;
  int macros = 1;
  int group = 1;
  bool serialize_groups = false;
  bool oracle = false;
  bool grid_search = false;
  bool group_sweep_flag = false;

  app.add_option("--network", network_path,
                 "network description file (.csv or .json)")
      ->required();
  app.add_option("--array", array_text, "crossbar size ROWSxCOLS")
      ->capture_default_str();
  app.add_option("--weight-bits", weight_bits,
                 "columns per weight (multi-bit cells)")
      ->capture_default_str();
  app.add_option("--macros", macros, "macro budget for the grid search")
      ->capture_default_str();
  app.add_option("--mapper", mapper_text,
                 "img2col | sdk | vw_sdk | vwc_sdk | tetris | tetrisg")
      ->capture_default_str();
  app.add_option("--group", group, "groups for the tetrisg mapper")
      ->capture_default_str();
  app.add_flag("--serialize-groups", serialize_groups,
               "run groups one after another instead of concurrently");
  app.add_option("--accuracy-table", accuracy_path,
                 "groups,accuracy CSV enabling the group sweep");
  app.add_option("--accuracy-threshold", accuracy_threshold,
                 "max accuracy drop (percent) the sweep accepts")
      ->capture_default_str();
  app.add_option("--prune-budget", prune_budget,
                 "residual channels droppable, percent of IC")
      ->capture_default_str();
  app.add_option("--format", format_text, "table | csv | json")
      ->capture_default_str();
  app.add_flag("--oracle", oracle, "replay every plan and cross-check cycles");
  app.add_flag("--grid-search", grid_search,
               "list every macro grid per layer");
  app.add_flag("--group-sweep", group_sweep_flag,
               "sweep candidate group counts (needs --accuracy-table)");

  CLI11_PARSE(app, argc, argv);

  try {
    cimmap::RunOptions opt;
    const auto [rows, cols] = parse_array(array_text);
    opt.array.rows = rows;
    opt.array.cols = cols;
    opt.array.weight_bits = weight_bits;
    cimmap::validate(opt.array);
    opt.mapper = cimmap::mapper_from_name(mapper_text);
    opt.groups = group;
    opt.max_macros = macros;
    opt.run_oracle = oracle;
    opt.grid_search = grid_search;
    opt.mapper_opt.prune_budget_pct = prune_budget;
    opt.mapper_opt.serialize_groups = serialize_groups;
    if (format_text == "table")
      opt.format = cimmap::OutputFormat::table;
    else if (format_text == "csv")
      opt.format = cimmap::OutputFormat::csv;
    else if (format_text == "json")
      opt.format = cimmap::OutputFormat::json;
    else
      throw cimmap::ValidationError("unknown format: " + format_text);

    const auto net = cimmap::load_network(network_path);

    if (group_sweep_flag) {
      if (accuracy_path.empty())
        throw cimmap::ValidationError("--group-sweep needs --accuracy-table");
      const auto table = cimmap::load_accuracy_table(accuracy_path);
      const auto sweep = cimmap::group_sweep(net, opt.array, table,
                                             accuracy_threshold,
                                             opt.mapper_opt);
      std::cout << "groups cycles accuracy drop allowed\n";
      for (const auto& e : sweep.entries) {
        std::cout << fmt::format("{:>6} {:>6} {:>8.2f} {:>4.2f} {}\n",
                                 e.groups, e.cycles, e.accuracy, e.drop,
                                 e.allowed ? "yes" : "no");
      }
      std::cout << fmt::format("picked: G={}\n", sweep.picked);
      return 0;
    }

    const auto result = cimmap::run_network(net, opt);
    cimmap::write_report(std::cout, result, opt);
    if (grid_search) {
      for (const auto& lr : result.layers)
        cimmap::write_grid_search(std::cout, lr, opt);
    }
    if (oracle && !result.oracle_ok) {
      std::cerr << "oracle disagreement detected\n";
      return 3;
    }
    return 0;
  } catch (const cimmap::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
