#include "phasic/data/manifest.hpp"

#include "phasic/core/csv.hpp"
#include "phasic/core/error.hpp"

#include <set>

namespace phasic::data {

namespace {

const std::vector<std::string> kHeader = {"sample_id", "experiment_id", "background", "label", "image_path",
                                          "peak_x",    "peak_y",        "interval_x0", "interval_x1"};

std::string where(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

bool is_background(std::string_view b) { return b == "A" || b == "B" || b == "C"; }

ManifestSummary Manifest::summary() const {
    ManifestSummary s;
    for (const auto& r : records) {
        (r.label == Label::Release ? s.release : s.no_release) += 1;
        ++s.per_experiment[r.experiment_id];
    }
    return s;
}

Manifest load_manifest(const std::filesystem::path& path, const LoadOptions& options) {
    const CsvDocument doc = read_csv(path, kHeader);
    const auto base = path.parent_path();
    Manifest m;
    std::set<std::string> seen;
    for (const auto& row : doc.rows) {
        const auto& f = row.fields;
        const std::string at = where(path, row.line);
        auto fail = [&](const std::string& what) { throw IngestionError(at + what, row.line); };

        SampleRecord r;
        r.sample_id = f[0];
        r.experiment_id = f[1];
        r.background = f[2];
        if (r.sample_id.empty()) fail("empty sample_id");
        if (r.experiment_id.empty()) fail("empty experiment_id");
        if (!is_background(r.background)) fail("background '" + r.background + "' is not A, B or C");
        try {
            r.label = parse_label(f[3]);
        } catch (const InvalidArgument&) {
            fail("label '" + f[3] + "' is neither release nor no-release");
        }
        if (f[4].empty()) fail("empty image_path");
        r.image_path = f[4];
        if (r.image_path.is_relative()) r.image_path = base / r.image_path;

        const bool has_peak = !f[5].empty() || !f[6].empty();
        const bool has_interval = !f[7].empty() || !f[8].empty();
        try {
            if (has_peak) r.peak = PeakPosition{parse_int(f[5], row.line, "peak_x"), parse_int(f[6], row.line, "peak_y")};
            if (has_interval) {
                r.interval = ReleaseInterval{parse_int(f[7], row.line, "interval_x0"), parse_int(f[8], row.line, "interval_x1")};
            }
        } catch (const IngestionError& e) {
            fail(e.what());
        }
        if (r.label == Label::Release && (!r.peak || !r.interval)) fail("release sample lacks peak or interval labels");
        if (r.label == Label::NoRelease && (r.peak || r.interval)) fail("no-release sample carries release labels");
        if (r.interval && r.interval->x1 < r.interval->x0) fail("release interval ends before it starts");

        if (!seen.insert(r.sample_id).second) fail("duplicated sample_id '" + r.sample_id + "'");
        if (options.check_images && !std::filesystem::exists(r.image_path)) {
            fail("image file not found: " + r.image_path.string());
        }
        m.records.push_back(std::move(r));
    }
    if (m.records.empty()) m.warnings.push_back(path.string() + ": manifest has no samples");
    return m;
}

void write_manifest(const std::filesystem::path& path, std::span<const SampleRecord> records) {
    const auto base = path.parent_path();
    std::string text;
    for (std::size_t i = 0; i < kHeader.size(); ++i) text += (i ? "," : "") + kHeader[i];
    text += "\n";
    for (const auto& r : records) {
        std::filesystem::path p = r.image_path;
        if (p.is_absolute() || !base.empty()) {
            const auto rel = p.lexically_proximate(base.empty() ? std::filesystem::path(".") : base);
            if (!rel.empty()) p = rel;
        }
        text += r.sample_id + "," + r.experiment_id + "," + r.background + "," + std::string(label_name(r.label)) + "," +
                p.generic_string() + ",";
        text += r.peak ? std::to_string(r.peak->x) + "," + std::to_string(r.peak->y) + "," : ",,";
        text += r.interval ? std::to_string(r.interval->x0) + "," + std::to_string(r.interval->x1) : ",";
        text += "\n";
    }
    write_text_file(path, text);
}

}  // namespace phasic::data
