#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sec {

// One verdict from the desk-scale benchmark battery.  `details` is a single
// line of measured-vs-threshold numbers; `seconds` is wall time including any
// shared precomputation charged to the criterion that owns it.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

// Suite names: spectral {1,2}, gradients {3}, models {4,5,12}, training {6},
// selection {7,8,11}, matching {9,10}, and "all".
std::vector<std::string> acceptance_suites();
std::vector<int> suite_criteria(const std::string& suite);

// Runs every criterion of the suite in id order.  CSV artifacts for the
// figure/table analogs are written under out_dir (created on demand); pass
// out_dir = "" to skip artifact emission.  `progress` (optional) fires after
// each criterion finishes.  Throws DataError for an unknown suite name.
std::vector<CriterionResult> run_acceptance_suite(
    const std::string& suite, const std::string& out_dir,
    const std::function<void(const CriterionResult&)>& progress = {});

// Pretty JSON: per-criterion verdicts plus an overall flag.
std::string acceptance_summary_json(const std::vector<CriterionResult>& results);

}  // namespace sec
