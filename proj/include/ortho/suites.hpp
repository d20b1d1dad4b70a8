#pragma once

#include <string>
#include <vector>

#include "ortho/report.hpp"

namespace ortho {

// names of all registered verification suites, in registry order
std::vector<std::string> registered_suites();

// one-line statement of the claim a suite exercises
std::string suite_anchor(const std::string& name);

// runs one suite to a report; unknown names raise std::invalid_argument
ReportDocument run_suite(const std::string& name, const ScenarioConfig& config);

}  // namespace ortho
