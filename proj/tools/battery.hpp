#pragma once

#include <string>

#include "report.hpp"

namespace divlab::tools {

// Built-in verification battery. "quick" runs small fixed-value checks in a
// few seconds; "full" adds the large-scale statistical checks and stays
// within the hour. Throws std::invalid_argument on unknown profile.
ExperimentReport verify_suite(const std::string& profile);

}  // namespace divlab::tools
