#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace cubicform {

enum class Status { Pass, Fail, Inconclusive };

std::string status_name(Status s);

/// Outcome of one named check, with human-readable details and numeric residuals.
struct VerificationReport {
  VerificationReport() = default;
  explicit VerificationReport(std::string name) : check_name(std::move(name)) {}

  std::string check_name;
  Status status = Status::Pass;
  std::vector<std::string> details;
  std::vector<double> residuals;

  bool passed() const { return status == Status::Pass; }
  /// Records a failure; a single failure makes the whole report FAIL.
  void fail(std::string detail);
  void note(std::string detail) { details.push_back(std::move(detail)); }
};

nlohmann::json to_json(const VerificationReport& r);
std::string to_text(const VerificationReport& r);

}  // namespace cubicform
