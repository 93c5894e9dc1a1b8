#pragma once

// Flat records written as CSV or JSON lines with 12 significant digits.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zeta_ladder::report {

using Value = std::variant<double, long long, bool, std::string>;
using Record = std::vector<std::pair<std::string, Value>>;

enum class Format { csv, json_lines };

/// "csv" or "json-lines"; PreconditionError otherwise.
Format parse_format(const std::string& name);

/// %.12g; nan and inf spelled out.
std::string format_number(double x);

/// CSV takes its header from the first record.
void write_records(std::ostream& out, Format format, const std::vector<Record>& records);

}  // namespace zeta_ladder::report
