// Driver that runs the verification suites over a set of sizes and collects
// CheckRecords. All computations are exact; every reported value is either a
// structural boolean, an integer count, or an exact scalar string, so the
// resulting report is byte-deterministic.
#pragma once

#include <string>
#include <vector>

#include "qiso/report.hpp"

namespace qiso {

// Suites, in canonical execution order:
//   frt          R-matrix construction and its structural identities
//   obstructions Yang-Baxter defect of the involutive coupler
//   quantum      braided algebra: comultiplication, graded dimensions,
//                rewrite spans, reality, mixed interchange
//   poisson      bracket tables, Jacobi sweeps, quasitriangularity, braiding
//   lorentz      the signature (1,3) fixed-size checks
inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> k = {"frt", "obstructions", "quantum", "poisson",
                                             "lorentz"};
  return k;
}

struct RunConfig {
  std::vector<int> sizes = {3};  // each in [2, 8]
  int degree_max = 4;            // graded-dimension sweep bound, in [2, 5]
  std::vector<std::string> suites = known_suites();
  std::string dump_dir;  // when nonempty, write tensor dumps here
};

// Validates the configuration (throws std::invalid_argument) and runs the
// requested suites in canonical order with sizes ascending. Exceptions from
// individual constructions are captured as "fail" records, never propagated.
RunReport run_suites(const RunConfig& cfg);

}  // namespace qiso
