#pragma once

#include <string>
#include <vector>

namespace homlab {

// One acceptance check over the bundled fixtures.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;     // witness text on failure, summary on success
    double seconds = 0.0;
    double budget = 0.0;    // wall-clock budget; exceeding it fails the criterion
};

// Run the acceptance criteria (all of them, or the listed ids). Fixed seeds;
// the report text is deterministic.
std::vector<CriterionResult> run_paper_criteria(const std::vector<int>& only = {});

// Names for `--only` filtering: e.g. "covers", "p3".
std::vector<int> criteria_matching(const std::string& tag);

std::string format_report(const std::vector<CriterionResult>& results, bool with_timings);
std::string format_report_jsonl(const std::vector<CriterionResult>& results, bool with_timings);

}  // namespace homlab
