#include "haarlab/report.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace haarlab {

bool VerificationReport::all_pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

std::size_t VerificationReport::violation_count() const {
  std::size_t n = 0;
  for (const auto& r : records)
    if (!r.pass) ++n;
  return n;
}

void VerificationReport::append(VerificationReport other) {
  records.insert(records.end(), std::make_move_iterator(other.records.begin()),
                 std::make_move_iterator(other.records.end()));
}

namespace {

std::string csv_escape(const std::string& s) {
  bool quote = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string witnesses_str(const CheckRecord& r) {
  std::string s;
  for (const auto& w : r.witnesses) {
    if (!s.empty()) s += ";";
    s += interval_str(w);
  }
  return s;
}

}  // namespace

std::string to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "check,label,pass,witnesses,detail\n";
  for (const auto& r : report.records) {
    os << csv_escape(r.check) << ',' << csv_escape(r.label) << ',' << (r.pass ? "true" : "false")
       << ',' << csv_escape(witnesses_str(r)) << ',' << csv_escape(r.detail) << '\n';
  }
  return os.str();
}

std::string to_json_lines(const VerificationReport& report) {
  std::ostringstream os;
  for (const auto& r : report.records) {
    nlohmann::json j;
    j["check"] = r.check;
    j["label"] = r.label;
    j["pass"] = r.pass;
    auto arr = nlohmann::json::array();
    for (const auto& w : r.witnesses) {
      arr.push_back({{"grid", w.grid == GridKind::Standard ? "standard" : "shifted"},
                     {"scale", w.scale},
                     {"index", w.index}});
    }
    j["witnesses"] = arr;
    j["detail"] = r.detail;
    os << j.dump() << '\n';
  }
  return os.str();
}

}  // namespace haarlab
