// Verification gate: runs every benchmark criterion, prints one verdict line
// each, and exits nonzero if any fails.  An output directory for the CSV
// artifacts may be passed as argv[1].

#include <cstdio>
#include <string>
#include <vector>

#include "sec/acceptance.hpp"

int main(int argc, char** argv) {
    const std::string out_dir = argc > 1 ? argv[1] : "";
    const auto report = [](const sec::CriterionResult& r) {
        printf("criterion %2d [%s]: %s - %s (%.1fs)\n", r.id, r.name.c_str(),
               r.pass ? "PASS" : "FAIL", r.details.c_str(), r.seconds);
        fflush(stdout);
    };

    std::vector<sec::CriterionResult> results;
    try {
        results = sec::run_acceptance_suite("all", out_dir, report);
    } catch (const std::exception& e) {
        fprintf(stderr, "fatal: %s\n", e.what());
        return 1;
    }

    int passed = 0;
    for (const sec::CriterionResult& r : results) passed += r.pass ? 1 : 0;
    printf("%d/%zu criteria passed\n", passed, results.size());
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}
