// Structured results for the verification tool: an ordered list of named
// checks with pass / fail / recorded statuses, a canonical JSON form that is
// byte-identical across repeated runs of the same configuration, and an
// id-level diff between two reports.
#pragma once

#include <string>
#include <vector>

namespace qiso {

struct CheckRecord {
  std::string id;      // stable dotted identifier, e.g. "frt.ybe.n3"
  std::string status;  // "pass" | "fail" | "recorded"
  std::string detail;  // short exact description of what was computed
  double seconds = 0;  // wall time; advisory only, never serialized
};

struct RunReport {
  std::vector<int> sizes;
  int degree_max = 4;
  std::vector<std::string> suites;  // canonical execution order
  std::vector<CheckRecord> checks;  // deterministic order

  std::size_t count(const std::string& status) const;
  bool all_passed() const;  // no check carries status "fail"
};

// Canonical serialization: fixed key order, two-space indent, sorted content,
// trailing newline, no timing data. Byte-identical for identical inputs.
std::string to_json_string(const RunReport& rep);

// Parses a report written by to_json_string; throws std::invalid_argument on
// malformed input or an unknown format tag.
RunReport report_from_json(const std::string& text);

struct DiffEntry {
  std::string id;
  std::string left;   // status (or status + detail) on the first report
  std::string right;  // status (or status + detail) on the second report
};

struct ReportDiff {
  std::vector<std::string> only_left;   // check ids missing from the second
  std::vector<std::string> only_right;  // check ids missing from the first
  std::vector<DiffEntry> status_changed;
  std::vector<DiffEntry> detail_changed;  // same status, different detail
  bool identical = false;
};

ReportDiff diff_reports(const RunReport& a, const RunReport& b);
std::string diff_to_text(const ReportDiff& d);

}  // namespace qiso
