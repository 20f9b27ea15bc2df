#include "qiso/report.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qiso {

namespace {
constexpr const char* kFormatTag = "qiso-verify-report";
constexpr int kFormatVersion = 1;
}  // namespace

std::size_t RunReport::count(const std::string& status) const {
  std::size_t c = 0;
  for (const auto& r : checks) {
    if (r.status == status) ++c;
  }
  return c;
}

bool RunReport::all_passed() const { return count("fail") == 0; }

std::string to_json_string(const RunReport& rep) {
  nlohmann::ordered_json j;
  j["format"] = kFormatTag;
  j["version"] = kFormatVersion;
  j["config"] = nlohmann::ordered_json::object();
  j["config"]["sizes"] = rep.sizes;
  j["config"]["degree_max"] = rep.degree_max;
  j["config"]["suites"] = rep.suites;
  j["summary"] = nlohmann::ordered_json::object();
  j["summary"]["total"] = rep.checks.size();
  j["summary"]["pass"] = rep.count("pass");
  j["summary"]["fail"] = rep.count("fail");
  j["summary"]["recorded"] = rep.count("recorded");
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& r : rep.checks) {
    nlohmann::ordered_json c;
    c["id"] = r.id;
    c["status"] = r.status;
    c["detail"] = r.detail;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report_from_json: parse error: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kFormatTag) {
    throw std::invalid_argument("report_from_json: not a verification report");
  }
  RunReport rep;
  const auto& cfg = j.at("config");
  rep.sizes = cfg.at("sizes").get<std::vector<int>>();
  rep.degree_max = cfg.at("degree_max").get<int>();
  rep.suites = cfg.at("suites").get<std::vector<std::string>>();
  for (const auto& c : j.at("checks")) {
    CheckRecord r;
    r.id = c.at("id").get<std::string>();
    r.status = c.at("status").get<std::string>();
    r.detail = c.at("detail").get<std::string>();
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

ReportDiff diff_reports(const RunReport& a, const RunReport& b) {
  ReportDiff d;
  std::map<std::string, const CheckRecord*> left, right;
  for (const auto& r : a.checks) left.emplace(r.id, &r);
  for (const auto& r : b.checks) right.emplace(r.id, &r);
  for (const auto& [id, rec] : left) {
    auto it = right.find(id);
    if (it == right.end()) {
      d.only_left.push_back(id);
      continue;
    }
    if (rec->status != it->second->status) {
      d.status_changed.push_back({id, rec->status, it->second->status});
    } else if (rec->detail != it->second->detail) {
      d.detail_changed.push_back({id, rec->detail, it->second->detail});
    }
  }
  for (const auto& [id, rec] : right) {
    (void)rec;
    if (!left.count(id)) d.only_right.push_back(id);
  }
  d.identical = d.only_left.empty() && d.only_right.empty() && d.status_changed.empty() &&
                d.detail_changed.empty();
  return d;
}

std::string diff_to_text(const ReportDiff& d) {
  if (d.identical) return "reports are identical\n";
  std::ostringstream os;
  for (const auto& id : d.only_left) os << "only in first:  " << id << "\n";
  for (const auto& id : d.only_right) os << "only in second: " << id << "\n";
  for (const auto& e : d.status_changed) {
    os << "status changed: " << e.id << ": " << e.left << " -> " << e.right << "\n";
  }
  for (const auto& e : d.detail_changed) {
    os << "detail changed: " << e.id << ": \"" << e.left << "\" -> \"" << e.right << "\"\n";
  }
  return os.str();
}

}  // namespace qiso
