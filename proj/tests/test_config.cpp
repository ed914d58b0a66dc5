#include <doctest.h>

#include "slicereg/config.hpp"
#include "slicereg/errors.hpp"

using namespace slicereg;

TEST_CASE("config parses sections, comments, strings and arrays") {
  const Config cfg = Config::parse_string(
      "# top comment\n"
      "[joint]\n"
      "lr_rotation = 0.01  # inline comment\n"
      "stride = 3\n"
      "name = \"quoted value\"\n"
      "\n"
      "[phantom]\n"
      "semi_axes = [40, 33, 21]\n"
      "seed = 7\n");
  CHECK(cfg.has("joint", "lr_rotation"));
  CHECK(!cfg.has("joint", "absent"));
  CHECK(cfg.get_double("joint", "lr_rotation", 0.0) == doctest::Approx(0.01));
  CHECK(cfg.get_long("joint", "stride", 1) == 3);
  CHECK(cfg.get_string("joint", "name", "") == "quoted value");
  CHECK(cfg.get_string("joint", "missing", "fallback") == "fallback");
  const auto axes = cfg.get_array("phantom", "semi_axes");
  REQUIRE(axes.size() == 3);
  CHECK(axes[1] == doctest::Approx(33.0));
  CHECK(cfg.get_long("phantom", "seed", 0) == 7);
}

TEST_CASE("config rejects malformed input with the origin in the message") {
  CHECK_THROWS_AS(Config::parse_string("[unclosed\nx = 1\n"), DataError);
  CHECK_THROWS_AS(Config::parse_string("keywithoutvalue\n"), DataError);
  CHECK_THROWS_AS(Config::parse_string("= novalue\n"), DataError);
  try {
    Config::parse_string("bad line\n", "myfile.toml");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("myfile.toml") != std::string::npos);
  }
  const Config cfg = Config::parse_string("[a]\nx = notanumber\n");
  CHECK_THROWS_AS(cfg.get_double("a", "x", 0.0), DataError);
  CHECK_THROWS_AS(cfg.get_array("a", "x"), DataError);
  CHECK_THROWS_AS(cfg.require_double("a", "missing"), DataError);
}

TEST_CASE("init and optimizer sections apply defaults and validate ranges") {
  const Config empty = Config::parse_string("");
  const InitConfig init = init_config_from(empty);
  CHECK(init.momentum == doctest::Approx(0.6));
  CHECK(init.iterations == 10000);
  const OptimConfig joint = optim_config_from(empty, "joint");
  CHECK(joint.momentum == doctest::Approx(0.75));
  CHECK(joint.stop_window == 1000);
  CHECK(joint.stop_tol == doctest::Approx(1e-5));
  CHECK(joint.stride == 1);

  const Config set = Config::parse_string(
      "[init]\nmomentum = 0.3\niterations = 55\n"
      "[joint]\nstride = 4\nstop_window = 20\nlr_offset_xy = 0.125\n");
  CHECK(init_config_from(set).momentum == doctest::Approx(0.3));
  CHECK(init_config_from(set).iterations == 55);
  const OptimConfig j2 = optim_config_from(set, "joint");
  CHECK(j2.stride == 4);
  CHECK(j2.stop_window == 20);
  CHECK(j2.lr_offset_xy == doctest::Approx(0.125));

  CHECK_THROWS_AS(init_config_from(Config::parse_string("[init]\nmomentum = 1.0\n")), DataError);
  CHECK_THROWS_AS(init_config_from(Config::parse_string("[init]\nlr_scaling = -1\n")), DataError);
  CHECK_THROWS_AS(optim_config_from(Config::parse_string("[joint]\nstride = 0\n"), "joint"),
                  DataError);
  CHECK_THROWS_AS(optim_config_from(Config::parse_string("[joint]\nstop_tol = 0\n"), "joint"),
                  DataError);
}

TEST_CASE("phantom section fills the spec and the truth transform") {
  const Config cfg = Config::parse_string(
      "[phantom]\n"
      "dims = [64, 64, 64]\n"
      "semi_axes = [20, 16, 11]\n"
      "slice_count = 4\n"
      "truth_scaling = 0.9\n"
      "truth_spacing = 3.5\n"
      "truth_rotation_z = 0.2\n"
      "truth_offsets = [1, 2, 3, 4, 5, 6, 7, 8]\n"
      "seed = 42\n");
  const PhantomSpec spec = phantom_spec_from(cfg);
  CHECK(spec.dims.nx == 64);
  CHECK(spec.semi_axes[2] == doctest::Approx(11.0));
  CHECK(spec.slice_count == 4);
  CHECK(spec.seed == 42);
  CHECK(spec.truth.scaling == doctest::Approx(0.9));
  CHECK(spec.truth.rotation_z == doctest::Approx(0.2));
  REQUIRE(spec.truth.per_slice_offsets.size() == 4);
  CHECK(spec.truth.per_slice_offsets[3][1] == doctest::Approx(8.0));
  // Default offset_z centers the stack.
  const PhantomSpec dflt = phantom_spec_from(Config::parse_string("[phantom]\nslice_count = 5\n"));
  CHECK(dflt.truth.offset_z == doctest::Approx(-0.5 * dflt.truth.spacing * 4));

  CHECK_THROWS_AS(
      phantom_spec_from(Config::parse_string("[phantom]\nslice_count = 3\ntruth_offsets = [1, 2]\n")),
      DataError);
  CHECK_THROWS_AS(phantom_spec_from(Config::parse_string("[phantom]\ndims = [64, 64]\n")),
                  DataError);
}
