#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubicform/rational.hpp"

namespace cubicform::cli {

enum class Command { Table, QExp, Verify, Divisor, Weight, All };
enum class Format { Text, Json };

struct RunConfig {
  Command command = Command::Verify;
  Rational prec = 12;
  double tol = 1e-6;
  long bound = 3;
  Format format = Format::Text;
  std::optional<std::string> corrupt;
};

/// Names accepted by --corrupt. Each one feeds a deliberately broken input to one check.
const std::vector<std::string>& corruption_names();

/// Exit codes: 0 all checks pass, 1 a check failed or was inconclusive, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubicform::cli
