#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "multiport/run_config.hpp"

namespace multiport::cli {

inline constexpr int kSchemaVersion = 1;

/// Plain numeric/text table for CSV output.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

/// Shortest text that reads back to the same double; "inf"/"nan" otherwise.
std::string number(double value);

/// Output document: versioned envelope, config echo, result payload and an
/// optional CSV table. Runtime is written as null when timing is disabled.
class Report {
public:
    explicit Report(RunConfig config);

    nlohmann::json& result() { return result_; }
    Table& table() { return table_; }

    std::string render(double runtime_seconds) const;

private:
    std::string render_json(double runtime_seconds) const;
    std::string render_csv(double runtime_seconds) const;

    RunConfig config_;
    nlohmann::json result_ = nlohmann::json::object();
    Table table_;
};

/// Writes to `path`, or to stdout when it is empty.
void emit(const std::string& text, const std::string& path);

}  // namespace multiport::cli
