#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace esakia {

/// Bounds for the exhaustive theorem suites.
struct SuiteOptions {
  std::size_t max_base = 3;   // base posets X
  std::size_t max_total = 5;  // posets standing alone or as domains of maps
  std::size_t max_fiber = 2;  // fiber sizes of presheaves
  double sample = 1.0;        // fraction of instances kept; 1 is exhaustive
  std::uint64_t seed = 0;     // drives sampling only
};

/// Outcome of one property over a suite's instance stream.
struct TheoremTally {
  std::string name;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::string first_failure;  // empty when every instance passed

  bool ok() const { return passed == instances; }
};

struct SuiteReport {
  std::string suite;
  SuiteOptions options;
  std::vector<TheoremTally> theorems;

  bool ok() const;
  std::size_t instances() const;
};

/// strict-etale, duality-roundtrip, equivalence, colimits, heyting-laws.
const std::vector<std::string>& suite_names();

/// Runs one named suite, or every suite for "all". Throws
/// std::invalid_argument for an unknown name.
std::vector<SuiteReport> run_suites(std::string_view name, const SuiteOptions& options);
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

/// Deterministic text report: one line per theorem, then a verdict line.
void print_report(std::ostream& out, const SuiteReport& report);

}  // namespace esakia
