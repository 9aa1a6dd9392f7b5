#include "phasic/fusion/score_io.hpp"

#include "phasic/core/csv.hpp"
#include "phasic/core/error.hpp"

#include <charconv>

namespace phasic::fusion {

namespace {

const std::vector<std::string> kScoreHeader = {"sample_id", "score_no_release", "score_release"};
const std::vector<std::string> kDetectorHeader = {"sample_id", "x", "y", "w", "h", "confidence"};

std::string located(const std::filesystem::path& path, std::size_t line, const std::string& what) {
    return path.string() + ":" + std::to_string(line) + ": " + what;
}

}  // namespace

ScoreTable read_score_csv(const std::filesystem::path& path) {
    const CsvDocument doc = read_csv(path, kScoreHeader);
    ScoreTable table;
    for (const auto& row : doc.rows) {
        const auto& f = row.fields;
        if (f[0].empty()) throw IngestionError(located(path, row.line, "empty sample_id"), row.line);
        ScoreVector s;
        try {
            s = {parse_double(f[1], row.line, kScoreHeader[1]), parse_double(f[2], row.line, kScoreHeader[2])};
        } catch (const IngestionError& e) {
            throw IngestionError(path.string() + ": " + e.what(), row.line);
        }
        if (s.no_release < 0.0 || s.release < 0.0) {
            throw IngestionError(located(path, row.line, "scores must be non-negative"), row.line);
        }
        if (!table.emplace(f[0], s).second) {
            throw IngestionError(located(path, row.line, "duplicated sample_id '" + f[0] + "'"), row.line);
        }
    }
    return table;
}

void write_score_csv(const std::filesystem::path& path, const ScoreTable& table) {
    std::string text = "sample_id,score_no_release,score_release\n";
    for (const auto& [id, s] : table) {
        text += id + "," + format_double(s.no_release) + "," + format_double(s.release) + "\n";
    }
    write_text_file(path, text);
}

DetectionTable read_detector_csv(const std::filesystem::path& path) {
    const CsvDocument doc = read_csv(path, kDetectorHeader);
    DetectionTable table;
    for (const auto& row : doc.rows) {
        const auto& f = row.fields;
        if (f[0].empty()) throw IngestionError(located(path, row.line, "empty sample_id"), row.line);
        DetectionBox b;
        try {
            b = {parse_double(f[1], row.line, "x"), parse_double(f[2], row.line, "y"), parse_double(f[3], row.line, "w"),
                 parse_double(f[4], row.line, "h"), parse_double(f[5], row.line, "confidence")};
            b.validate();
        } catch (const InvalidArgument& e) {
            throw IngestionError(located(path, row.line, e.what()), row.line);
        } catch (const IngestionError& e) {
            throw IngestionError(path.string() + ": " + e.what(), row.line);
        }
        table[f[0]].push_back(b);
    }
    return table;
}

void write_detector_csv(const std::filesystem::path& path, const DetectionTable& table) {
    std::string text = "sample_id,x,y,w,h,confidence\n";
    for (const auto& [id, boxes] : table) {
        for (const auto& b : boxes) {
            text += id + "," + format_double(b.x) + "," + format_double(b.y) + "," + format_double(b.w) + "," +
                    format_double(b.h) + "," + format_double(b.confidence) + "\n";
        }
    }
    write_text_file(path, text);
}

std::string patch_key(const std::string& sample_id, int x_offset) {
    return sample_id + ".p" + std::to_string(x_offset);
}

ScoreTable collapse_patch_rows(const ScoreTable& rows) {
    std::map<std::string, std::vector<PatchScore>> grouped;
    for (const auto& [key, score] : rows) {
        const std::size_t dot = key.rfind(".p");
        int offset = -1;
        if (dot != std::string::npos && dot + 2 < key.size()) {
            const char* first = key.data() + dot + 2;
            const char* last = key.data() + key.size();
            const auto [ptr, ec] = std::from_chars(first, last, offset);
            if (ec != std::errc() || ptr != last) offset = -1;
        }
        if (offset < 0) throw DataIntegrityError("patch score row '" + key + "' lacks a .p<offset> suffix");
        grouped[key.substr(0, dot)].push_back({offset, score});
    }
    ScoreTable out;
    for (const auto& [id, patches] : grouped) out.emplace(id, max_rule_patches(std::span<const PatchScore>(patches)));
    return out;
}

}  // namespace phasic::fusion
