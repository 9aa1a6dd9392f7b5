#include "derive.hpp"

#include "phasic/core/csv.hpp"
#include "phasic/core/error.hpp"
#include "phasic/core/io.hpp"
#include "phasic/core/parallel.hpp"
#include "phasic/fusion/ensemble.hpp"
#include "phasic/region/patches.hpp"
#include "phasic/saliency/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>

namespace phasic::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kVariantHeader = {"sample_id", "experiment_id", "label", "mode",
                                                 "x_offset",  "image_path",    "note"};

// Bumped whenever derived outputs change for identical inputs.
constexpr const char* kDeriveVersion = "derive-1";

std::string geometry_key(const region::Geometry& g) {
    return std::to_string(g.common_begin) + "," + std::to_string(g.common_end) + "," + std::to_string(g.top_rows) +
           "," + std::to_string(g.window) + "," + std::to_string(g.stride);
}

std::string params_key(saliency::Method m, const saliency::SaliencyParams& p) {
    using saliency::Method;
    std::string k = format_double(p.threshold_for(m)) + "," + format_double(p.roi_line_fraction) + ",";
    switch (m) {
        case Method::SimpSal:
            k += std::to_string(p.simpsal.working_min_dim) + "," + format_double(p.simpsal.local_max_floor);
            break;
        case Method::Gbvs:
            k += std::to_string(p.gbvs.lattice_divisor) + "," + std::to_string(p.gbvs.lattice_cap) + "," +
                 format_double(p.gbvs.sigma_fraction) + "," + format_double(p.gbvs.log_floor) + "," +
                 format_double(p.gbvs.tolerance) + "," + std::to_string(p.gbvs.max_iterations);
            break;
        case Method::CoSaliency:
            k += std::to_string(p.cosaliency.k_single) + "," + std::to_string(p.cosaliency.k_multi) + "," +
                 std::to_string(p.cosaliency.seed) + "," + std::to_string(p.cosaliency.max_iterations) + "," +
                 std::to_string(p.cosaliency.working_max_dim) + "," + format_double(p.cosaliency.spatial_sigma);
            break;
        case Method::SpectralResidual:
            k += std::to_string(p.spectral.working_min_dim) + "," + format_double(p.spectral.log_epsilon) + "," +
                 format_double(p.spectral.blur_sigma);
            break;
        case Method::Wavelet:
            k += std::to_string(static_cast<int>(p.wavelet.family)) + "," + std::to_string(p.wavelet.levels) + "," +
                 std::to_string(p.wavelet.clamp_levels) + "," + format_double(p.wavelet.ridge) + "," +
                 format_double(p.wavelet.blur_sigma);
            break;
    }
    return k;
}

// A unit is everything one sample contributes for one method family: a
// single variant for global and patch methods, up to three for a detector.
struct Unit {
    std::string name;                   ///< O, Z1, Z2, P200, P290 or a detector id
    std::vector<std::string> variants;  ///< requested variant ids it writes
};

std::vector<Unit> plan_units(const std::vector<std::string>& methods) {
    std::vector<Unit> units;
    for (const auto& m : methods) {
        const auto dot = m.find('.');
        const std::string name = dot == std::string::npos ? m : m.substr(0, dot);
        auto it = std::find_if(units.begin(), units.end(), [&](const Unit& u) { return u.name == name; });
        if (it == units.end()) {
            units.push_back({name, {}});
            it = units.end() - 1;
        }
        it->variants.push_back(m);
    }
    return units;
}

using UnitRows = std::map<std::string, std::vector<VariantRow>>;  // by variant id

struct UnitResult {
    std::string cache_key;
    std::string digest;
    UnitRows rows;
    bool reused = false;
    bool substituted = false;
};

json rows_to_json(const UnitRows& rows) {
    json j = json::object();
    for (const auto& [variant, list] : rows) {
        json arr = json::array();
        for (const auto& r : list) arr.push_back({r.mode, r.x_offset, r.file, r.note});
        j[variant] = std::move(arr);
    }
    return j;
}

UnitRows rows_from_json(const json& j, const data::SampleRecord& rec) {
    UnitRows rows;
    for (const auto& [variant, arr] : j.items()) {
        for (const auto& e : arr) {
            rows[variant].push_back({rec.sample_id, rec.experiment_id, rec.label, e.at(0).get<std::string>(),
                                     e.at(1).get<int>(), e.at(2).get<std::string>(), e.at(3).get<std::string>()});
        }
    }
    return rows;
}

}  // namespace

std::vector<VariantRow> read_variant_manifest(const fs::path& path) {
    const CsvDocument doc = read_csv(path, kVariantHeader);
    std::vector<VariantRow> rows;
    rows.reserve(doc.rows.size());
    for (const auto& r : doc.rows) {
        const auto& f = r.fields;
        VariantRow v{f[0], f[1], Label::NoRelease, f[3], parse_int(f[4], r.line, "x_offset"), f[5], f[6]};
        try {
            v.label = parse_label(f[2]);
        } catch (const InvalidArgument& e) {
            throw IngestionError(path.string() + ":" + std::to_string(r.line) + ": " + e.what(), r.line);
        }
        if (v.mode != "full" && v.mode != "manual" && v.mode != "auto") {
            throw IngestionError(path.string() + ":" + std::to_string(r.line) + ": unknown mode '" + v.mode + "'", r.line);
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

void write_variant_manifest(const fs::path& path, const std::vector<VariantRow>& rows) {
    std::string text;
    for (std::size_t i = 0; i < kVariantHeader.size(); ++i) text += kVariantHeader[i] + (i + 1 < kVariantHeader.size() ? "," : "\n");
    for (const auto& r : rows) {
        text += r.sample_id + "," + r.experiment_id + "," + std::string(label_name(r.label)) + "," + r.mode + "," +
                std::to_string(r.x_offset) + "," + r.file + "," + r.note + "\n";
    }
    write_text_file(path, text);
}

fs::path variant_dir(const fs::path& derived, const std::string& background, const std::string& method) {
    return derived / background / method;
}

std::vector<std::string> expand_methods(const std::vector<std::string>& spec) {
    const auto all = fusion::all_method_ids();
    std::set<std::string> wanted;
    for (const auto& s : spec) {
        std::vector<std::string> ids;
        if (s == "all") ids = all;
        else if (s == "global") ids = fusion::global_method_ids();
        else if (s == "patch") ids = fusion::patch_method_ids();
        else if (s == "saliency") ids = fusion::saliency_method_ids();
        else if (std::find(all.begin(), all.end(), s) != all.end()) ids = {s};
        else throw InvalidArgument("unknown method '" + s + "'");
        wanted.insert(ids.begin(), ids.end());
    }
    std::vector<std::string> out;
    for (const auto& id : all) {
        if (wanted.count(id)) out.push_back(id);
    }
    if (out.empty()) throw InvalidArgument("no methods selected");
    return out;
}

int pseudo_peak_x(std::uint64_t seed, const std::string& sample_id, int width) {
    // FNV-1a, then a splitmix64 finalizer.
    std::uint64_t h = 0xcbf29ce484222325ull ^ seed;
    for (unsigned char c : sample_id) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
    return static_cast<int>(h % static_cast<std::uint64_t>(width));
}

DeriveSummary derive(const DeriveOptions& options, const Logger& log) {
    const Dataset ds = load_dataset(options.dataset, options.backgrounds);
    const auto methods = expand_methods(options.methods);
    const auto units = plan_units(methods);
    const region::Geometry& g = ds.geometry;
    DeriveSummary summary;

    for (const auto& [bg, manifest] : ds.manifests) {
        std::vector<data::SampleRecord> records = manifest.records;
        std::sort(records.begin(), records.end(),
                  [](const auto& a, const auto& b) { return a.sample_id < b.sample_id; });
        const fs::path bg_dir = options.out / bg;
        const fs::path cache_path = bg_dir / "cache.json";
        json cache = json::object();
        if (fs::exists(cache_path)) {
            try {
                std::ifstream in(cache_path);
                cache = json::parse(in);
            } catch (const json::exception&) {
                log.warn(cache_path.string() + " is unreadable; recomputing everything");
                cache = json::object();
            }
        }
        for (const auto& m : methods) fs::create_directories(variant_dir(options.out, bg, m));

        std::vector<std::vector<UnitResult>> results(records.size());
        parallel_for(records.size(), options.workers, [&](std::size_t i) {
            const auto& rec = records[i];
            const std::string input_digest = sha256_file(rec.image_path);
            std::optional<ImageMatrix> original;
            auto image = [&]() -> const ImageMatrix& {
                if (!original) original = read_png(rec.image_path);
                return *original;
            };
            for (const auto& unit : units) {
                UnitResult res;
                res.cache_key = unit.name + "/" + rec.sample_id;
                std::string key = std::string(kDeriveVersion) + "|" + input_digest + "|" + unit.name + "|" +
                                  geometry_key(g) + "|";
                for (const auto& v : unit.variants) key += v + ";";
                const bool is_patch = unit.name == "P200" || unit.name == "P290";
                const bool is_global = unit.name == "O" || unit.name == "Z1" || unit.name == "Z2";
                int peak_x = 0;
                if (is_patch) {
                    peak_x = rec.peak ? rec.peak->x : pseudo_peak_x(options.seed, rec.sample_id, image().width());
                    key += "|peak=" + std::to_string(peak_x);
                } else if (!is_global) {
                    key += "|" + params_key(saliency::parse_method(unit.name), options.params);
                }
                res.digest = sha256_hex(key);

                if (cache.contains(res.cache_key) && cache[res.cache_key].value("digest", "") == res.digest) {
                    UnitRows rows = rows_from_json(cache[res.cache_key].at("rows"), rec);
                    bool present = true;
                    for (const auto& [variant, list] : rows) {
                        for (const auto& r : list) present = present && fs::exists(variant_dir(options.out, bg, variant) / r.file);
                    }
                    if (present) {
                        res.rows = std::move(rows);
                        res.reused = true;
                        results[i].push_back(std::move(res));
                        continue;
                    }
                }

                auto row = [&](const std::string& mode, int offset, const std::string& file, const std::string& note = "") {
                    return VariantRow{rec.sample_id, rec.experiment_id, rec.label, mode, offset, file, note};
                };
                const std::string file = rec.sample_id + ".png";
                if (is_global) {
                    const fs::path dst = variant_dir(options.out, bg, unit.name) / file;
                    if (unit.name == "O") {
                        fs::copy_file(rec.image_path, dst, fs::copy_options::overwrite_existing);
                    } else {
                        write_png(dst, region::apply_global(region::parse_global_method(unit.name), image(), g));
                    }
                    res.rows[unit.name].push_back(row("full", 0, file));
                } else if (is_patch) {
                    const auto pm = region::parse_patch_method(unit.name);
                    const fs::path dir = variant_dir(options.out, bg, unit.name);
                    const region::Patch manual = region::training_patch(pm, image(), peak_x, g);
                    const std::string mfile = rec.sample_id + ".manual.png";
                    write_png(dir / mfile, manual.image);
                    res.rows[unit.name].push_back(row("manual", manual.x_offset, mfile));
                    for (const auto& p : region::test_patches(pm, image(), g, rec.sample_id).patches) {
                        const std::string pfile = rec.sample_id + ".p" + std::to_string(p.x_offset) + ".png";
                        write_png(dir / pfile, p.image);
                        res.rows[unit.name].push_back(row("auto", p.x_offset, pfile));
                    }
                } else {
                    const auto method = saliency::parse_method(unit.name);
                    const auto t = saliency::saliency_triplet_or_substitute(image(), method, options.params, rec.sample_id);
                    res.substituted = t.roi_substituted;
                    const std::string note = t.roi_substituted ? "roi-substituted" : "";
                    if (t.roi_substituted) {
                        log.warn(bg + "/" + rec.sample_id + ": " + unit.name +
                                 " ROI crop is empty; FG substituted for FG-ROI and ROI");
                    }
                    for (const auto& v : unit.variants) {
                        const std::string part = v.substr(v.find('.') + 1);
                        const ImageMatrix& out = part == "fg" ? t.fg : part == "fgroi" ? t.fg_roi : t.roi;
                        write_png(variant_dir(options.out, bg, v) / file, out);
                        res.rows[v].push_back(row("full", 0, file, part == "fg" ? "" : note));
                    }
                }
                results[i].push_back(std::move(res));
            }
        });

        std::map<std::string, std::vector<VariantRow>> manifests;
        for (auto& per_sample : results) {
            for (auto& res : per_sample) {
                cache[res.cache_key] = {{"digest", res.digest}, {"rows", rows_to_json(res.rows)}};
                (res.reused ? summary.reused : summary.computed) += 1;
                summary.substituted += res.substituted;
                for (auto& [variant, rows] : res.rows) {
                    auto& dst = manifests[variant];
                    dst.insert(dst.end(), rows.begin(), rows.end());
                }
            }
        }
        for (const auto& m : methods) {
            const auto& rows = manifests[m];
            write_variant_manifest(variant_dir(options.out, bg, m) / "manifest.csv", rows);
            summary.images += rows.size();
            ++summary.variants;
        }
        write_text_file(cache_path, cache.dump() + "\n");
        log.info("derive: background " + bg + ": " + std::to_string(methods.size()) + " variant(s) from " +
                 std::to_string(records.size()) + " sample(s)");
    }
    return summary;
}

}  // namespace phasic::cli
