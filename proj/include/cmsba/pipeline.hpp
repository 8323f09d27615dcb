#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cmsba/ba/ba_result.hpp"
#include "cmsba/numeric/identity.hpp"

namespace cmsba {

// Defaults shared by every subcommand; see config/defaults.toml.
struct RunConfig {
  QuadConfig quad;
  FDConfig fd;
  int trials = 20;
  std::uint64_t seed = 1;
};

// Flat TOML subset: [quadrature] nodes, tolerance, max_levels, circle_eps,
// clearance, decay; [identity] h, richardson, trials, seed. Unknown keys are
// rejected. Throws MalformedExpression.
RunConfig load_config(const std::filesystem::path& path);

// Symbolic constructions: rational and trig for m >= 1, deformed residues
// for m <= -1. Throws MalformedExpression for parameters outside that range.
void check_compute_parameters(BACase c, int n, int m);
BAResult compute_ba(BACase c, int n, int m);

nlohmann::json result_to_json(const BAResult& r);
BAResult result_from_json(const nlohmann::json& j);

// Files <dir>/<case>_<n>_<m>.json. `dir` falls back to $BA_CACHE_DIR; with
// neither set there is no caching. A corrupt entry is recomputed.
std::optional<std::filesystem::path> cache_dir(const std::optional<std::string>& flag);
BAResult compute_cached(BACase c, int n, int m, const std::optional<std::filesystem::path>& dir);

}  // namespace cmsba
