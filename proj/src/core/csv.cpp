#include "phasic/core/csv.hpp"

#include "phasic/core/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace phasic {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

CsvDocument read_csv(const std::filesystem::path& path, const std::vector<std::string>& expected_header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot open " + path.string(), 0);
    CsvDocument doc;
    std::string line;
    std::size_t number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (!have_header) {
            if (!expected_header.empty() && fields != expected_header) {
                std::string want;
                for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
                throw IngestionError(path.string() + ":" + std::to_string(number) + ": expected header '" + want + "'",
                                     number);
            }
            doc.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != doc.header.size()) {
            throw IngestionError(path.string() + ":" + std::to_string(number) + ": expected " +
                                     std::to_string(doc.header.size()) + " fields, found " +
                                     std::to_string(fields.size()),
                                 number);
        }
        doc.rows.push_back({number, std::move(fields)});
    }
    if (!have_header) throw IngestionError(path.string() + ": missing header", 0);
    return doc;
}

double parse_double(std::string_view text, std::size_t line, std::string_view column) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw IngestionError("line " + std::to_string(line) + ": column '" + std::string(column) +
                                 "' is not a finite number: '" + std::string(text) + "'",
                             line);
    }
    return v;
}

int parse_int(std::string_view text, std::size_t line, std::string_view column) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw IngestionError("line " + std::to_string(line) + ": column '" + std::string(column) +
                                 "' is not an integer: '" + std::string(text) + "'",
                             line);
    }
    return v;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw Error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace phasic
