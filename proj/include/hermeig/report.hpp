#pragma once

#include <string>
#include <vector>

#include "hermeig/checks.hpp"

namespace hermeig {

enum class ReportFormat { Json, Csv, Text };

// Formats a double with 12 significant digits; the single number formatter
// used everywhere in report emission so outputs stay byte-stable.
std::string format_number(double v);

// Deterministic serialization: reports sorted by (check_id, domain_id),
// stable key order, fixed float formatting.
std::string emit_report(std::vector<CheckReport> reports, ReportFormat format);

// True exit-success: no genuine Fail or Error; hypothesis-not-met,
// inconclusive and unsupported statuses do not fail a run.
bool all_checks_pass(const std::vector<CheckReport>& reports);

}  // namespace hermeig
