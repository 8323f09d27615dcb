#include "cmsba/report.hpp"

namespace cmsba {

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j = {{"check-id", check_id}, {"parameters", parameters}, {"residual", residual},
                      {"tolerance", tolerance},  {"pass", pass},             {"runtime-ms", runtime_ms}};
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

VerifyReport report_from_json(const nlohmann::json& j) {
  VerifyReport r;
  r.check_id = j.at("check-id").get<std::string>();
  r.parameters = j.value("parameters", nlohmann::json::object());
  if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
  r.residual = j.at("residual").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.runtime_ms = j.value("runtime-ms", 0.0);
  r.detail = j.value("detail", std::string{});
  return r;
}

}  // namespace cmsba
