#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "waveqed/config.hpp"

using namespace waveqed;

TEST_CASE("minimal config fills defaults") {
  const RunConfig c = parse_config(
      "[system]\nomega1 = 1.0\nomega2 = -1.0\ngamma1 = 0.5\ngamma2 = 0.5\n"
      "separation = 2.0\n[experiment]\ntype = s1\n");
  CHECK(c.experiment == Experiment::s1);
  CHECK(c.mode == RunMode::exact);
  CHECK(c.delta_in == 0.0);
  CHECK(c.n_delta == 4801);
  CHECK(c.params.phase == 0.0);
}

TEST_CASE("validation errors carry the key path") {
  const std::string base =
      "[system]\ngamma1 = -1\n[experiment]\ntype = s1\n";
  try {
    parse_config(base);
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("system.gamma1") != std::string::npos);
  }
  try {
    parse_config("[system]\nunknown_thing = 3\n[experiment]\ntype = s1\n");
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("system.unknown_thing") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[experiment]\ntype = dance\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[experiment]\n"), std::invalid_argument);
}

TEST_CASE("transparency preset expands") {
  const RunConfig c = parse_config(
      "[system]\npreset = transparency\nomega = 2.0\ngamma_r = 1.0\n"
      "[experiment]\ntype = density\n");
  CHECK(c.params.omega1 == 2.0);
  CHECK(c.params.omega2 == -2.0);
  CHECK(c.params.gamma1 == 1.0);
  CHECK(c.params.gamma2 == 1.0);
  CHECK(c.params.separation == 1.0);
  CHECK(c.params.phase == 0.0);
}

TEST_CASE("set overrides beat file values") {
  const RunConfig c = parse_config(
      "[system]\npreset = transparency\nomega = 2.0\n[experiment]\n"
      "type = ratio\n[grid]\ntau = 0.5\n",
      {"grid.tau=0.75", "output.path=x.csv"});
  CHECK(c.tau == 0.75);
  CHECK(c.output_path == "x.csv");
}

TEST_CASE("deterministic byte-identical output") {
  const std::string cfg =
      "[system]\npreset = transparency\nomega = 2.0\ngamma_r = 0.4\n"
      "[experiment]\ntype = s1\n[grid]\nk_min = -2\nk_max = 2\nn_k = 51\n"
      "[output]\npath = /tmp/waveqed_det_a.csv\n";
  RunConfig a = parse_config(cfg);
  CHECK(run(a) == 0);
  RunConfig b = parse_config(cfg, {"output.path=/tmp/waveqed_det_b.csv"});
  CHECK(run(b) == 0);
  std::ifstream fa("/tmp/waveqed_det_a.csv"), fb("/tmp/waveqed_det_b.csv");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().find("k,re_s11") == 0);
  // 17 significant digits and newline endings
  CHECK(sa.str().find("\r") == std::string::npos);
  std::remove("/tmp/waveqed_det_a.csv");
  std::remove("/tmp/waveqed_det_b.csv");
}

TEST_CASE("density run emits the documented columns") {
  const std::string cfg =
      "[system]\npreset = transparency\nomega = 2.0\ngamma_r = 0.5\n"
      "[experiment]\ntype = density\n[grid]\nn_delta = 51\ndelta_max = 4\n"
      "[output]\npath = /tmp/waveqed_dens.csv\n";
  CHECK(run(parse_config(cfg)) == 0);
  std::ifstream f("/tmp/waveqed_dens.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "delta_out,p_same,p_opposite");
  int rows = 0;
  for (std::string line; std::getline(f, line);) ++rows;
  CHECK(rows == 51);
  std::remove("/tmp/waveqed_dens.csv");
}
