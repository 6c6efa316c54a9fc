#include "cubicform/report.hpp"

#include <sstream>

namespace cubicform {

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

void VerificationReport::fail(std::string detail) {
  status = Status::Fail;
  details.push_back(std::move(detail));
}

nlohmann::json to_json(const VerificationReport& r) {
  return {{"check_name", r.check_name},
          {"status", status_name(r.status)},
          {"details", r.details},
          {"residuals", r.residuals}};
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "[" << status_name(r.status) << "] " << r.check_name << "\n";
  for (const auto& d : r.details) os << "    " << d << "\n";
  if (!r.residuals.empty()) {
    os << "    residuals:";
    for (double x : r.residuals) os << " " << x;
    os << "\n";
  }
  return os.str();
}

}  // namespace cubicform
