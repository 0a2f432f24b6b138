#pragma once
#include <string>
#include <vector>

#include "app/commands.hpp"

namespace iaw {

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string status;  // PASS, FAIL or SKIP
  std::string detail;
  double runtime = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  RunManifest manifest{"accept"};
  bool passed() const;
};

// quick: every criterion except the long eigen solve and the two stability
// runs (2, 10a, 10b); full: all of them. Each criterion writes its runs
// under <out_dir>/cNN_*; the summary goes to <out_dir>/manifest.json.
// Lines are passed to log as each criterion finishes.
AcceptanceReport run_acceptance(const std::string& suite, const std::string& out_dir, const Log& log = nullptr);

std::string format_criterion(const CriterionResult& c);

// the experiment files shipped under configs/
extern const char* const stability_1d_config;
extern const char* const stability_2d_config;
extern const char* const smoke_2d_config;

}  // namespace iaw
