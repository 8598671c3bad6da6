#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <numeric>
#include <random>

#include "cimmap/mappers.hpp"
#include "cimmap/metrics.hpp"
#include "cimmap/oracle.hpp"
#include "cimmap/tetris.hpp"

using namespace cimmap;

namespace {

const ArrayConfig kBig{512, 512, 1};
const LayerSpec kConv3{"conv3", 18, 18, 3, 32, 32, 1};

void expect_clean(const MappingPlan& plan, const char* what) {
  const OracleReport rep = verify_plan(plan);
  INFO(what, " ", plan.layer.name, " ", plan.layer.input_w, "x",
       plan.layer.input_h, " k", plan.layer.kernel, " ic",
       plan.layer.in_channels, " oc", plan.layer.out_channels, " g",
       plan.groups, " array ", plan.array.rows, "x", plan.array.cols, "b",
       plan.array.weight_bits);
  for (const auto& e : rep.errors) {
    INFO("oracle: ", e);
  }
  CHECK(rep.ok);
  CHECK(rep.replayed_cycles == plan_cycles_total(plan));
}

}  // namespace

TEST_CASE("replay agrees with the analytic count on randomized layers") {
  std::mt19937 rng(0xC1A0);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  int done = 0;
  while (done < 600) {
    const int k = std::array{1, 2, 3, 3, 5}[pick(0, 4)];
    LayerSpec l;
    l.name = "r" + std::to_string(done);
    l.kernel = k;
    l.input_w = pick(k, k + 28);
    l.input_h = pick(k, k + 28);
    l.in_channels = pick(1, 320);
    l.out_channels = pick(1, 320);

    ArrayConfig a;
    a.rows = std::array{64, 128, 256, 512}[pick(0, 3)];
    a.cols = std::array{32, 128, 512}[pick(0, 2)];
    a.weight_bits = std::array{1, 1, 2, 4}[pick(0, 3)];
    if (k * k > a.rows) continue;  // even the bare kernel cannot map
    ++done;

    const auto base = map_img2col(l, a);
    const auto vw = search_vw_sdk(l, a);
    const auto vwc = map_vwc_sdk(l, a);
    const auto tet = tetris_pipeline(l, a);
    expect_clean(base, "img2col");
    expect_clean(map_sdk(l, a), "sdk");
    expect_clean(vw, "vw");
    expect_clean(vwc, "vwc");
    expect_clean(tet, "tetris");

    // cost ordering is structural, not a tuning accident
    CHECK(plan_cycles(vw) <= plan_cycles(base));
    CHECK(plan_cycles(vwc) <= plan_cycles(vw));
    CHECK(plan_cycles(tet) <= plan_cycles(vw));

    // grouped run on a random divisor of both channel counts
    const int g = std::gcd(l.in_channels, l.out_channels);
    std::vector<int> divs;
    for (int d = 2; d <= std::min(g, 8); ++d)
      if (g % d == 0) divs.push_back(d);
    if (!divs.empty()) {
      const int G = divs[pick(0, static_cast<int>(divs.size()) - 1)];
      expect_clean(tetris_pipeline(l, a, G), "tetrisg");
      MapperOptions serial;
      serial.serialize_groups = true;
      expect_clean(tetris_pipeline(l, a, G, serial), "tetrisg serial");
    }

    // G=1 through the grouped entry point changes nothing
    const auto t1 = tetris_pipeline(l, a, 1);
    CHECK(t1.mapper == Mapper::tetris);
    CHECK(plan_cycles(t1) == plan_cycles(tet));
  }
}

TEST_CASE("oracle rejects plans with missing channel partitions") {
  auto p = tetris_pipeline(kConv3, kBig);
  REQUIRE(p.tiles.size() == 2);
  p.tiles.pop_back();
  const auto rep = verify_plan(p);
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.errors.empty());
  CHECK(rep.errors[0].find("channels") != std::string::npos);
}

TEST_CASE("oracle rejects uncovered output positions") {
  auto p = search_vw_sdk(kConv3, kBig);
  p.tiles[0].windows[0].count_x -= 1;
  const auto rep = verify_plan(p);
  CHECK_FALSE(rep.ok);
  bool uncovered = false;
  for (const auto& e : rep.errors)
    uncovered = uncovered || e.find("uncovered") != std::string::npos;
  CHECK(uncovered);
}

TEST_CASE("oracle rejects capacity overruns") {
  auto p = search_vw_sdk(kConv3, kBig);
  p.tiles[0].ic_tile = 400;  // 400 channels of a 8x4 window cannot fit
  const auto rep = verify_plan(p);
  CHECK_FALSE(rep.ok);
  bool rows = false;
  for (const auto& e : rep.errors)
    rows = rows || e.find("rows") != std::string::npos;
  CHECK(rows);
}

TEST_CASE("oracle rejects overhanging windows in clamped mappers") {
  // the 8x4 ceiling grid overhangs on the right; fine for vw, fatal
  // when the plan claims the in-bounds discipline
  auto p = search_vw_sdk(kConv3, kBig);
  REQUIRE(verify_plan(p).ok);
  p.mapper = Mapper::tetris;
  const auto rep = verify_plan(p);
  CHECK_FALSE(rep.ok);
  bool overhang = false;
  for (const auto& e : rep.errors)
    overhang = overhang || e.find("overhang") != std::string::npos;
  CHECK(overhang);
}

TEST_CASE("oracle rejects windows starting outside the image") {
  auto p = tetris_pipeline(kConv3, kBig);
  p.tiles[0].windows[0].origin_x = -3;
  const auto rep = verify_plan(p);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("oracle validates the declared pruning") {
  auto p = map_vwc_sdk(LayerSpec{"m", 5, 5, 3, 5, 3, 1},
                       ArrayConfig{40, 15, 5});
  CHECK(p.pruned_channels == 1);
  CHECK(verify_plan(p).ok);

  // pruning more than declared leaves channels unaccounted for
  p.tiles[0].channels -= 1;
  CHECK_FALSE(verify_plan(p).ok);
}
