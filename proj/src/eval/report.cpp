#include "phasic/eval/report.hpp"

#include "phasic/core/csv.hpp"
#include "phasic/core/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

namespace phasic::eval {

using nlohmann::json;

namespace {

std::string percent(const std::optional<double>& v) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * *v);
    return buf;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

json metrics_json(const MetricsReport& m) {
    return {{"accuracy", m.accuracy},
            {"auc", optional_json(m.auc)},
            {"f1", optional_json(m.f1)},
            {"sensitivity", optional_json(m.sensitivity)},
            {"specificity", optional_json(m.specificity)},
            {"tp", m.counts.tp},
            {"tn", m.counts.tn},
            {"fp", m.counts.fp},
            {"fn", m.counts.fn}};
}

MetricsReport metrics_from_json(const json& j) {
    MetricsReport m;
    m.accuracy = j.at("accuracy").get<double>();
    m.auc = optional_from(j, "auc");
    m.f1 = optional_from(j, "f1");
    m.sensitivity = optional_from(j, "sensitivity");
    m.specificity = optional_from(j, "specificity");
    m.counts = {j.at("tp").get<std::size_t>(), j.at("tn").get<std::size_t>(), j.at("fp").get<std::size_t>(),
                j.at("fn").get<std::size_t>()};
    return m;
}

}  // namespace

ReportRow report_row(const fusion::EnsembleConfig& config, const MetricsReport& metrics,
                     std::vector<FoldReport> folds) {
    std::set<std::string> bgs;
    for (const auto& m : config.members) bgs.insert(m.background);
    ReportRow row;
    for (const auto& b : bgs) row.background += (row.background.empty() ? "" : ",") + b;
    row.method = config.name;
    if (bgs.size() == 1 && row.method.rfind(*bgs.begin() + "/", 0) == 0) {
        row.method = row.method.substr(bgs.begin()->size() + 1);
    }
    row.scores_fused = config.members.size();
    row.metrics = metrics;
    row.folds = std::move(folds);
    return row;
}

std::string format_table(std::span<const ReportRow> rows) {
    const std::vector<std::string> header = {"Background", "Method",      "Scores Fused", "Accuracy",
                                             "AUC",        "F1",          "Sensitivity",  "Specificity"};
    std::vector<std::vector<std::string>> cells = {header};
    for (const auto& r : rows) {
        const auto& m = r.metrics;
        cells.push_back({r.background, r.method, std::to_string(r.scores_fused), percent(m.accuracy), percent(m.auc),
                         percent(m.f1), percent(m.sensitivity), percent(m.specificity)});
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t c = 0; c < cells[i].size(); ++c) {
            const auto& s = cells[i][c];
            const std::string pad(width[c] - s.size(), ' ');
            // Text columns left-aligned, numbers right-aligned.
            out += c < 2 ? s + pad : pad + s;
            out += c + 1 < cells[i].size() ? "  " : "\n";
        }
        if (i == 0) {
            std::size_t total = 0;
            for (auto w : width) total += w + 2;
            out += std::string(total - 2, '-') + "\n";
        }
    }
    return out;
}

std::string report_json(std::span<const ReportRow> rows) {
    json doc = {{"rows", json::array()}};
    for (const auto& r : rows) {
        json row = {{"background", r.background},
                    {"method", r.method},
                    {"scores_fused", r.scores_fused},
                    {"metrics", metrics_json(r.metrics)},
                    {"folds", json::array()}};
        for (const auto& f : r.folds) {
            row["folds"].push_back({{"fold", f.fold}, {"samples", f.samples}, {"metrics", metrics_json(f.metrics)}});
        }
        doc["rows"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

void write_report(const std::filesystem::path& dir, std::span<const ReportRow> rows) {
    write_text_file(dir / "report.txt", format_table(rows));
    write_text_file(dir / "report.json", report_json(rows));
}

std::vector<ReportRow> read_report_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataIntegrityError("cannot open report " + path.string());
    std::vector<ReportRow> rows;
    try {
        const json doc = json::parse(in);
        for (const auto& r : doc.at("rows")) {
            ReportRow row;
            row.background = r.at("background").get<std::string>();
            row.method = r.at("method").get<std::string>();
            row.scores_fused = r.at("scores_fused").get<std::size_t>();
            row.metrics = metrics_from_json(r.at("metrics"));
            for (const auto& f : r.at("folds")) {
                row.folds.push_back({f.at("fold").get<int>(), f.at("samples").get<std::size_t>(),
                                     metrics_from_json(f.at("metrics"))});
            }
            rows.push_back(std::move(row));
        }
    } catch (const json::exception& e) {
        throw DataIntegrityError("malformed report " + path.string() + ": " + e.what());
    }
    return rows;
}

}  // namespace phasic::eval
