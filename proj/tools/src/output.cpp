#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include <hypertopo/error.hpp>

#ifndef HYPERTOPO_VERSION
#define HYPERTOPO_VERSION "0.0.0"
#endif

namespace hypertopo::cli {

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
        } else {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::ordered_json typed(const std::string& s) {
    if (s.empty()) return nullptr;
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec == std::errc() && ptr == end && std::isfinite(v)) {
        std::int64_t iv = 0;
        auto [ip, iec] = std::from_chars(s.data(), end, iv);
        if (iec == std::errc() && ip == end) return iv;
        return v;
    }
    return s;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw spec_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw spec_error("failed writing " + path);
}

}  // namespace

nlohmann::ordered_json csv_to_json(const std::string& csv) {
    const auto rows = parse_csv(csv);
    auto out = nlohmann::ordered_json::array();
    if (rows.empty()) return out;
    const auto& header = rows.front();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < header.size(); ++c) {
            obj[header[c]] = c < rows[r].size() ? typed(rows[r][c]) : nullptr;
        }
        out.push_back(std::move(obj));
    }
    return out;
}

void emit_table(RunContext& ctx, const std::string& csv) {
    emit_document(ctx, ctx.format == Format::json ? csv_to_json(csv).dump(1) + "\n" : csv);
}

void emit_document(RunContext& ctx, const std::string& text) {
    if (ctx.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    write_file(ctx.out, text);
    write_manifest(ctx, {ctx.out});
}

void write_manifest(const RunContext& ctx, const std::vector<std::string>& outputs) {
    nlohmann::ordered_json m;
    m["command"] = ctx.command;
    m["params"] = ctx.params;
    m["seed"] = ctx.seed;
    m["version"] = HYPERTOPO_VERSION;
    m["outputs"] = outputs;
    m["summary"] = ctx.summary;
    m["wall_clock_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.started).count();
    write_file(ctx.out + ".manifest.json", m.dump(1) + "\n");
}

}  // namespace hypertopo::cli
