// Acceptance gate: runs the numbered criteria and prints one PASS/FAIL line
// per criterion. Registered with ctest one criterion at a time.

#include <cstring>
#include <iostream>

#include <qbl/acceptance.hpp>

int main(int argc, char** argv)
{
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            ids.push_back(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--json") == 0) {
            // handled after the run
        } else if (std::strcmp(argv[i], "--help") == 0) {
            std::cout << "usage: qbl_acceptance [--criterion N]... [--json]\n";
            return 0;
        }
    }
    bool want_json = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--json") == 0) want_json = true;

    auto results = qbl::acceptance::run_all(ids);
    std::cout << qbl::acceptance::report_lines(results);
    if (want_json) std::cout << qbl::acceptance::report_json(results) << "\n";

    int failures = 0;
    for (const auto& r : results)
        if (!r.pass) ++failures;
    return failures == 0 ? 0 : 1;
}
