#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gbs {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;  ///< 0 when the criterion has none
  std::map<std::string, long long> counts;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::string data_dir;   ///< holds graphs/, tilesets/, quotients/
  std::vector<int> only;  ///< empty runs all
};

/// Runs one acceptance criterion (1..12). Exceptions become failures with the message as detail.
CriterionResult run_criterion(int id, const VerifyOptions& opt);
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt);
std::string acceptance_report_json(const std::vector<CriterionResult>& results, const VerifyOptions& opt);
/// `PASS  3 lambda identities (0.12 s) ...`
std::string format_result_line(const CriterionResult& r);

}  // namespace gbs
