// Verification report records and their CSV / JSON-lines serialization.
#pragma once

#include "haarlab/grid.hpp"

#include <string>
#include <vector>

namespace haarlab {

struct CheckRecord {
  std::string check;
  std::string label;  // partition label or "" for global checks
  std::vector<GridInterval> witnesses;
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckRecord> records;

  bool all_pass() const;
  std::size_t violation_count() const;
  void append(VerificationReport other);
};

std::string to_csv(const VerificationReport& report);
std::string to_json_lines(const VerificationReport& report);

}  // namespace haarlab
