#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cmsba/error.hpp"
#include "cmsba/pipeline.hpp"

using namespace cmsba;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cmsba_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

fs::path write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Config, DefaultsFileMatchesBuiltins) {
  RunConfig c = load_config(fs::path(CMSBA_SOURCE_DIR) / "config" / "defaults.toml");
  RunConfig d;
  EXPECT_EQ(c.quad.nodes, d.quad.nodes);
  EXPECT_EQ(c.quad.tolerance, d.quad.tolerance);
  EXPECT_EQ(c.quad.max_levels, d.quad.max_levels);
  EXPECT_EQ(c.quad.circle_eps, d.quad.circle_eps);
  EXPECT_EQ(c.fd.h, d.fd.h);
  EXPECT_EQ(c.trials, d.trials);
  EXPECT_EQ(c.seed, d.seed);
}

TEST(Config, OverridesAndErrors) {
  fs::path dir = scratch("config");
  fs::create_directories(dir);
  RunConfig c = load_config(write_file(dir / "a.toml", "# c\n[quadrature]\nnodes = 32\ntolerance = \"1e-6\"\n"
                                                         "[identity]\nrichardson = false\nseed = 42\n"));
  EXPECT_EQ(c.quad.nodes, 32);
  EXPECT_EQ(c.quad.tolerance, 1e-6);
  EXPECT_FALSE(c.fd.richardson);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_THROW(load_config(write_file(dir / "b.toml", "[quadrature]\nnodes = 2\n")), MalformedExpression);
  EXPECT_THROW(load_config(write_file(dir / "c.toml", "[quadrature]\nnodez = 8\n")), MalformedExpression);
  EXPECT_THROW(load_config(write_file(dir / "d.toml", "[other]\nx = 1\n")), MalformedExpression);
  EXPECT_THROW(load_config(write_file(dir / "e.toml", "[quadrature]\nnodes = many\n")), MalformedExpression);
  EXPECT_THROW(load_config(dir / "missing.toml"), MalformedExpression);
  fs::remove_all(dir);
}

TEST(Pipeline, ParameterRanges) {
  EXPECT_THROW(check_compute_parameters(BACase::rational, 0, 1), MalformedExpression);
  EXPECT_THROW(check_compute_parameters(BACase::trig, 2, 0), MalformedExpression);
  EXPECT_THROW(check_compute_parameters(BACase::deformed_rational, 2, 1), MalformedExpression);
  EXPECT_NO_THROW(check_compute_parameters(BACase::deformed_trig, 2, -1));
}

TEST(Pipeline, JsonRoundTripAndCache) {
  BAResult r = compute_ba(BACase::deformed_rational, 2, -1);
  BAResult back = result_from_json(result_to_json(r));
  EXPECT_EQ(back.expr, r.expr);
  EXPECT_EQ(back.positions, r.positions);
  EXPECT_EQ(back.spectral, r.spectral);
  ASSERT_EQ(back.trace.size(), r.trace.size());
  EXPECT_EQ(back.trace_product(), r.trace_product());

  fs::path dir = scratch("cache");
  BAResult first = compute_cached(BACase::rational, 2, 2, dir);
  ASSERT_TRUE(fs::exists(dir / "rational_2_2.json"));
  EXPECT_EQ(compute_cached(BACase::rational, 2, 2, dir).expr, first.expr);
  write_file(dir / "rational_2_2.json", "{broken");
  EXPECT_EQ(compute_cached(BACase::rational, 2, 2, dir).expr, first.expr);
  fs::remove_all(dir);

  EXPECT_EQ(cache_dir(std::string("/tmp/x")), fs::path("/tmp/x"));
}
