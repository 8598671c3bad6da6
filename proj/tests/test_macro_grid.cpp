#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cimmap/macro_grid.hpp"
#include "cimmap/mappers.hpp"
#include "cimmap/metrics.hpp"
#include "cimmap/tetris.hpp"

using namespace cimmap;

namespace {

const ArrayConfig kBig{512, 512, 1};
const LayerSpec kConv5{"conv5", 7, 7, 3, 64, 64, 1};
const LayerSpec kConv7{"conv7", 5, 5, 5, 64, 256, 1};

}  // namespace

TEST_CASE("grid enumeration lists every shape within the budget") {
  CHECK(enumerate_grids(1).size() == 1);
  CHECK(enumerate_grids(4).size() == 8);
  CHECK(enumerate_grids(6).size() == 14);

  // row-major order, both dimensions ascending
  const auto g = enumerate_grids(4);
  CHECK(g[0].r == 1);
  CHECK(g[0].c == 1);
  CHECK(g[3].r == 1);
  CHECK(g[3].c == 4);
  CHECK(g[4].r == 2);
  CHECK(g[4].c == 1);
  for (const auto& e : g) CHECK(e.size() <= 4);
}

TEST_CASE("macros absorb row and column passes") {
  // conv5 window search: 5 windows, 3 row passes, 1 column pass
  const auto plan = search_vw_sdk(kConv5, kBig);
  REQUIRE(plan_cycles(plan) == 15);

  CHECK(grid_cycles(plan, {1, 1}) == 15);
  CHECK(grid_cycles(plan, {2, 1}) == 10);
  CHECK(grid_cycles(plan, {3, 1}) == 5);
  CHECK(grid_cycles(plan, {4, 1}) == 5);
  // column macros are useless when there is a single column pass
  CHECK(grid_cycles(plan, {1, 4}) == 15);

  CHECK(active_macros(plan, {1, 1}) == 1);
  CHECK(active_macros(plan, {2, 1}) == 2);
  CHECK(active_macros(plan, {4, 1}) == 3);  // only 3 row passes exist
  CHECK(active_macros(plan, {2, 2}) == 2);
}

TEST_CASE("best grid minimizes cycles then active macros then rows") {
  const auto plan = search_vw_sdk(kConv5, kBig);

  auto c1 = best_grid(plan, 1);
  CHECK(c1.grid.size() == 1);
  CHECK(c1.cycles == 15);

  auto c4 = best_grid(plan, 4);
  CHECK(c4.cycles == 5);
  CHECK(c4.grid.r == 3);
  CHECK(c4.grid.c == 1);
  CHECK(c4.active == 3);

  // a 4x1 grid costs the same 5 cycles but wakes no extra macro,
  // so the tie break keeps 3x1
  auto c8 = best_grid(plan, 8);
  CHECK(c8.cycles == 5);
  CHECK(c8.grid.r == 3);
  CHECK(c8.active == 3);
}

TEST_CASE("best grid cycles never increase with the budget") {
  for (const auto& layer : {kConv5, kConv7}) {
    for (const auto plan :
         {search_vw_sdk(layer, kBig), tetris_pipeline(layer, kBig)}) {
      long long prev = -1;
      for (int p : {1, 2, 3, 4, 6, 8, 12, 16}) {
        const auto c = best_grid(plan, p);
        if (prev >= 0) CHECK(c.cycles <= prev);
        prev = c.cycles;
      }
    }
  }
}

TEST_CASE("multi tile plans use the worst tile for active macros") {
  // tetris conv5 has three one-pass tiles; row macros stay idle
  const auto plan = tetris_pipeline(kConv5, kBig);
  REQUIRE(plan.tiles.size() == 3);
  CHECK(grid_cycles(plan, {1, 1}) == 14);
  CHECK(grid_cycles(plan, {4, 1}) == 14);
  CHECK(active_macros(plan, {4, 4}) == 1);
}

TEST_CASE("serialized groups scale grid cycles too") {
  MapperOptions serial;
  serial.serialize_groups = true;
  const auto plan = tetris_pipeline(kConv7, kBig, 2, serial);
  CHECK(grid_cycles(plan, {1, 1}) == plan_cycles_total(plan));
  CHECK(grid_cycles(plan, {1, 1}) == 4);
}

TEST_CASE("edap proxy scales with cycles squared and active area") {
  const ArrayConfig a{512, 512, 1};
  CHECK(edap_proxy(10, 1, a) == doctest::Approx(100.0 * 512 * 512));
  // doubling active macros quadruples the proxy (energy x area)
  CHECK(edap_proxy(10, 2, a) == doctest::Approx(4 * edap_proxy(10, 1, a)));
  // halving cycles at equal macros quarters it
  CHECK(edap_proxy(5, 1, a) == doctest::Approx(edap_proxy(10, 1, a) / 4));
}
