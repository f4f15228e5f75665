#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace hypertopo::cli {

enum class Format { csv, json };

/// Where a command's data goes and what the manifest sidecar records.
struct RunContext {
    std::string command;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 1;
    std::string out;
    Format format = Format::csv;
    std::size_t workers = 1;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

/// CSV text to an array of row objects. Fields that parse fully as numbers
/// become numbers, empty fields become null.
nlohmann::ordered_json csv_to_json(const std::string& csv);

/// Writes `csv` (converted when --format json) to --out or stdout, then the
/// manifest sidecar next to the data file.
void emit_table(RunContext& ctx, const std::string& csv);

/// Writes an already-serialised document verbatim.
void emit_document(RunContext& ctx, const std::string& text);

void write_manifest(const RunContext& ctx, const std::vector<std::string>& outputs);

}  // namespace hypertopo::cli
