// Command line driver for the exact verification suites.
//
//   qiso_verify [--n 2,3,4] [--suite frt ...] [--degree-max 4]
//               [--json PATH] [--dump-tensors DIR] [--timings]
//   qiso_verify diff FIRST.json SECOND.json
//
// Exit code 0 when no asserted check failed (diff: when the reports match).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qiso/report.hpp"
#include "qiso/suite.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run_diff(const std::string& first, const std::string& second) {
  qiso::RunReport a = qiso::report_from_json(read_file(first));
  qiso::RunReport b = qiso::report_from_json(read_file(second));
  qiso::ReportDiff d = qiso::diff_reports(a, b);
  std::cout << qiso::diff_to_text(d);
  return d.identical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the braided inhomogeneous orthogonal structures"};
  app.require_subcommand(0, 1);

  qiso::RunConfig cfg;
  std::vector<std::string> suites;
  std::string json_path;
  bool timings = false;

  app.add_option("--n", cfg.sizes, "Sizes to verify (each in [2, 8])")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--suite", suites,
                 "Suites to run: frt, obstructions, quantum, poisson, lorentz, all")
      ->delimiter(',');
  app.add_option("--degree-max", cfg.degree_max, "Graded-dimension sweep bound (in [2, 5])")
      ->capture_default_str();
  app.add_option("--json", json_path, "Write the canonical JSON report to this path");
  app.add_option("--dump-tensors", cfg.dump_dir, "Write tensor dumps into this directory");
  app.add_flag("--timings", timings, "Print per-check wall times to stderr");

  CLI::App* diff = app.add_subcommand("diff", "Compare two JSON reports by check id");
  std::string diff_a, diff_b;
  diff->add_option("first", diff_a, "First report")->required();
  diff->add_option("second", diff_b, "Second report")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (diff->parsed()) return run_diff(diff_a, diff_b);

    if (!suites.empty()) {
      bool all = false;
      for (const auto& s : suites) {
        if (s == "all") all = true;
      }
      if (!all) {
        cfg.suites = suites;
      }
    }
    qiso::RunReport rep = qiso::run_suites(cfg);

    for (const auto& c : rep.checks) {
      std::cout << "[" << c.status << "] " << c.id;
      if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << "\n";
      if (timings) {
        std::cerr << std::fixed << std::setprecision(3) << std::setw(10) << c.seconds << "s  "
                  << c.id << "\n";
      }
    }
    std::cout << rep.checks.size() << " checks: " << rep.count("pass") << " passed, "
              << rep.count("fail") << " failed, " << rep.count("recorded") << " recorded\n";

    if (!json_path.empty()) {
      std::ofstream os(json_path, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + json_path);
      os << qiso::to_json_string(rep);
    }
    return rep.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
