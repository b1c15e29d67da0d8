#pragma once

#include <string>

#include "topotype/counting.hpp"

namespace topotype {

enum class OutputFormat { kPlain, kJson, kCsv };

OutputFormat parse_output_format(const std::string& name);

/// Genus as a decimal string, or "n/a" with the reason when there is no
/// hyperbolic action for these parameters.
std::string genus_text(long p, int k, int R);

std::string render_count_report(const CountReport& report, OutputFormat format);
std::string render_total_report(const TotalReport& report, OutputFormat format);

/// Inverse of the JSON rendering. Every number travels as a decimal string.
CountReport parse_count_report_json(const std::string& text);
TotalReport parse_total_report_json(const std::string& text);

}  // namespace topotype
