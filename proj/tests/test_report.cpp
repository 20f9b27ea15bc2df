#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "qiso/report.hpp"
#include "qiso/suite.hpp"

using namespace qiso;

TEST_CASE("suite runner is deterministic at the byte level") {
  RunConfig cfg;
  cfg.sizes = {2};
  cfg.suites = {"frt"};
  RunReport a = run_suites(cfg);
  RunReport b = run_suites(cfg);
  CHECK(to_json_string(a) == to_json_string(b));
  CHECK(!a.checks.empty());
  CHECK(a.all_passed());
}

TEST_CASE("check ids are unique and statuses valid") {
  RunConfig cfg;
  cfg.sizes = {2};
  cfg.suites = {"frt", "obstructions", "lorentz"};
  RunReport rep = run_suites(cfg);
  std::set<std::string> ids;
  for (const auto& c : rep.checks) {
    CHECK(ids.insert(c.id).second);
    CHECK((c.status == "pass" || c.status == "fail" || c.status == "recorded"));
  }
  CHECK(rep.count("pass") + rep.count("fail") + rep.count("recorded") == rep.checks.size());
}

TEST_CASE("requested suites run in canonical order") {
  RunConfig cfg;
  cfg.sizes = {2};
  cfg.suites = {"lorentz", "frt"};  // reversed on purpose
  RunReport rep = run_suites(cfg);
  REQUIRE(rep.suites.size() == 2);
  CHECK(rep.suites[0] == "frt");
  CHECK(rep.suites[1] == "lorentz");
  CHECK(rep.checks.front().id.rfind("frt.", 0) == 0);
  CHECK(rep.checks.back().id.rfind("lorentz.", 0) == 0);
}

TEST_CASE("json serialization round trips") {
  RunConfig cfg;
  cfg.sizes = {2};
  cfg.suites = {"frt"};
  RunReport rep = run_suites(cfg);
  RunReport back = report_from_json(to_json_string(rep));
  CHECK(back.sizes == rep.sizes);
  CHECK(back.degree_max == rep.degree_max);
  CHECK(back.suites == rep.suites);
  REQUIRE(back.checks.size() == rep.checks.size());
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    CHECK(back.checks[i].id == rep.checks[i].id);
    CHECK(back.checks[i].status == rep.checks[i].status);
    CHECK(back.checks[i].detail == rep.checks[i].detail);
  }
  // And the round trip is idempotent at the byte level.
  CHECK(to_json_string(back) == to_json_string(rep));
}

TEST_CASE("diff detects status detail and membership changes") {
  RunReport a;
  a.sizes = {2};
  a.suites = {"frt"};
  a.checks.push_back({"alpha", "pass", "fine", 0});
  a.checks.push_back({"beta", "pass", "fine", 0});
  a.checks.push_back({"gamma", "recorded", "value 7", 0});

  RunReport b = a;
  CHECK(diff_reports(a, b).identical);

  b.checks[1].status = "fail";
  b.checks[2].detail = "value 8";
  b.checks.push_back({"delta", "pass", "", 0});
  ReportDiff d = diff_reports(a, b);
  CHECK(!d.identical);
  REQUIRE(d.status_changed.size() == 1);
  CHECK(d.status_changed[0].id == "beta");
  CHECK(d.status_changed[0].left == "pass");
  CHECK(d.status_changed[0].right == "fail");
  REQUIRE(d.detail_changed.size() == 1);
  CHECK(d.detail_changed[0].id == "gamma");
  REQUIRE(d.only_right.size() == 1);
  CHECK(d.only_right[0] == "delta");
  CHECK(d.only_left.empty());
  CHECK(diff_to_text(d).find("beta") != std::string::npos);

  RunReport c = a;
  c.checks.pop_back();
  ReportDiff d2 = diff_reports(a, c);
  REQUIRE(d2.only_left.size() == 1);
  CHECK(d2.only_left[0] == "gamma");
}

TEST_CASE("configuration validation rejects out of range input") {
  RunConfig cfg;
  cfg.sizes = {9};
  CHECK_THROWS_AS(run_suites(cfg), std::invalid_argument);
  cfg.sizes = {1};
  CHECK_THROWS_AS(run_suites(cfg), std::invalid_argument);
  cfg.sizes = {};
  CHECK_THROWS_AS(run_suites(cfg), std::invalid_argument);
  cfg.sizes = {2};
  cfg.degree_max = 6;
  CHECK_THROWS_AS(run_suites(cfg), std::invalid_argument);
  cfg.degree_max = 4;
  cfg.suites = {"frt", "bogus"};
  CHECK_THROWS_AS(run_suites(cfg), std::invalid_argument);
}

TEST_CASE("malformed json is rejected") {
  CHECK_THROWS_AS(report_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(report_from_json("{\"format\": \"something-else\"}"), std::invalid_argument);
}
