#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qlink::table {

/// Rectangular numeric result set. Degenerate cells hold NaN and render as
/// "nan" so downstream joins never lose rows. Serialization is fully
/// deterministic: the same table always produces the same bytes.
struct ResultTable {
    std::string tool_version;
    std::string ledger_version;
    std::uint64_t scenario_hash = 0;
    std::vector<std::string> columns;
    std::vector<std::string> units;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
    std::string to_json() const;
};

/// Shortest round-trippable decimal form of a double; "nan" for NaN.
std::string format_number(double value);

/// FNV-1a 64-bit, used to stamp tables with the scenario they came from.
std::uint64_t fnv1a64(const std::string& text);

std::string hex64(std::uint64_t value);

}  // namespace qlink::table
