#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace cmsba {

// Outcome of one check. Symbolic checks report residual 0 (identically zero)
// or 1 (nonzero remainder, described in `detail`).
struct VerifyReport {
  std::string check_id;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  double runtime_ms = 0;
  std::string detail;

  nlohmann::json to_json() const;
};

VerifyReport report_from_json(const nlohmann::json& j);

// Measures wall time from construction; `stamp` writes it into a report.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }
  void stamp(VerifyReport& r) const { r.runtime_ms = elapsed_ms(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace cmsba
