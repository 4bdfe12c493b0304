#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifndef MULTIPORT_VERSION
#define MULTIPORT_VERSION "0.0.0"
#endif

namespace multiport::cli {

std::string number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    // nlohmann uses the shortest round-trip representation
    return nlohmann::json(value).dump();
}

Report::Report(RunConfig config) : config_(std::move(config)) {}

std::string Report::render(double runtime_seconds) const {
    return config_.format == "csv" ? render_csv(runtime_seconds) : render_json(runtime_seconds);
}

std::string Report::render_json(double runtime_seconds) const {
    nlohmann::ordered_json doc;
    doc["schema"] = kSchemaVersion;
    doc["tool"] = "multiport";
    doc["version"] = MULTIPORT_VERSION;
    doc["command"] = config_.command;
    doc["config"] = nlohmann::json(config_);
    doc["seed"] = config_.seed;
    doc["runtime_seconds"] = config_.no_timing ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(runtime_seconds);
    doc["result"] = result_;
    return doc.dump(2) + "\n";
}

std::string Report::render_csv(double runtime_seconds) const {
    std::ostringstream out;
    out << "# schema: " << kSchemaVersion << "\n";
    out << "# tool: multiport " << MULTIPORT_VERSION << "\n";
    out << "# command: " << config_.command << "\n";
    out << "# config: " << nlohmann::json(config_).dump() << "\n";
    out << "# seed: " << config_.seed << "\n";
    out << "# runtime_seconds: " << (config_.no_timing ? std::string("null") : number(runtime_seconds)) << "\n";
    for (std::size_t i = 0; i < table_.columns.size(); ++i) out << (i ? "," : "") << table_.columns[i];
    out << "\n";
    for (const auto& row : table_.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    file << text;
    if (!file) throw std::runtime_error("failed writing " + path);
}

}  // namespace multiport::cli
