#ifndef QBL_ACCEPTANCE_HPP
#define QBL_ACCEPTANCE_HPP

#include <string>
#include <vector>

#include "qbl/numeric.hpp"

namespace qbl::acceptance {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::vector<Check> checks;
};

// ids 1..11; throws DomainError for anything else
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all(const std::vector<int>& ids = {});

std::string report_json(const std::vector<CriterionResult>& results);
// one "criterion N PASS/FAIL (x.xs): name" line each
std::string report_lines(const std::vector<CriterionResult>& results);

} // namespace qbl::acceptance

#endif
