#include "qlink/table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "nlohmann/json.hpp"

namespace qlink::table {

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[40];
    // shortest form that survives a round trip
    for (int precision : {15, 16, 17}) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) {
            break;
        }
    }
    return buf;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    out << "# metadata: tool=qlink " << tool_version << "; scenario=" << hex64(scenario_hash)
        << "; ledger=" << ledger_version << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    for (std::size_t i = 0; i < units.size(); ++i) {
        out << (i ? "," : "") << units[i];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string ResultTable::to_json() const {
    nlohmann::ordered_json doc;
    doc["metadata"] = {{"tool", "qlink " + tool_version},
                       {"scenario", hex64(scenario_hash)},
                       {"ledger", ledger_version}};
    doc["columns"] = columns;
    doc["units"] = units;
    auto& data = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json json_row = nlohmann::ordered_json::array();
        for (const double v : row) {
            if (std::isnan(v)) {
                json_row.push_back(nullptr);
            } else {
                json_row.push_back(v);
            }
        }
        data.push_back(std::move(json_row));
    }
    return doc.dump(2) + "\n";
}

}  // namespace qlink::table
