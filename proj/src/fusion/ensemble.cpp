#include "phasic/fusion/ensemble.hpp"

#include "phasic/core/csv.hpp"
#include "phasic/core/error.hpp"
#include "phasic/core/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>

namespace phasic::fusion {

std::string_view member_kind_name(MemberKind k) {
    switch (k) {
        case MemberKind::Classifier: return "classifier";
        case MemberKind::Patch: return "patch";
        case MemberKind::Detector: return "detector";
    }
    throw InvalidArgument("unknown member kind");
}

MemberKind parse_member_kind(std::string_view s) {
    for (MemberKind k : {MemberKind::Classifier, MemberKind::Patch, MemberKind::Detector}) {
        if (member_kind_name(k) == s) return k;
    }
    throw InvalidArgument("unknown member kind '" + std::string(s) + "'");
}

void EnsembleConfig::validate() const {
    if (members.empty()) throw InvalidArgument("ensemble '" + name + "' has no members");
    std::set<std::string> keys;
    for (const auto& m : members) {
        if (m.background != "A" && m.background != "B" && m.background != "C") {
            throw InvalidArgument("ensemble '" + name + "': background '" + m.background + "' is not A, B or C");
        }
        if (!keys.insert(m.key()).second) {
            throw InvalidArgument("ensemble '" + name + "': duplicated member '" + m.key() + "'");
        }
    }
}

ScoreTable load_member_scores(const EnsembleMember& member, std::span<const std::string> sample_ids) {
    switch (member.kind) {
        case MemberKind::Classifier: return read_score_csv(member.source);
        case MemberKind::Patch: return collapse_patch_rows(read_score_csv(member.source));
        case MemberKind::Detector: {
            const DetectionTable boxes = read_detector_csv(member.source);
            ScoreTable out;
            for (const auto& id : sample_ids) {
                const auto it = boxes.find(id);
                const std::span<const DetectionBox> b =
                    it == boxes.end() ? std::span<const DetectionBox>{} : std::span<const DetectionBox>(it->second);
                out.emplace(id, detector_to_scores(b, member.mapping));
            }
            return out;
        }
    }
    throw InvalidArgument("unknown member kind");
}

std::vector<FusedSample> run_ensemble(const EnsembleConfig& config, std::span<const std::string> sample_ids,
                                      const std::map<std::string, ScoreTable>& member_scores, int workers) {
    config.validate();
    std::vector<std::string> ids(sample_ids.begin(), sample_ids.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<const ScoreTable*> tables;
    std::vector<std::string> missing;
    for (const auto& m : config.members) {
        const auto it = member_scores.find(m.key());
        tables.push_back(it == member_scores.end() ? nullptr : &it->second);
    }
    for (const auto& id : ids) {
        for (std::size_t k = 0; k < tables.size(); ++k) {
            if (!tables[k] || !tables[k]->contains(id)) missing.push_back("(" + id + ", " + config.members[k].key() + ")");
        }
    }
    if (!missing.empty()) {
        std::string msg = "ensemble '" + config.name + "': " + std::to_string(missing.size()) + " missing score(s):";
        for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
        if (missing.size() > 20) msg += " ...";
        throw DataIntegrityError(msg);
    }

    std::vector<FusedSample> out(ids.size());
    parallel_for(ids.size(), workers, [&](std::size_t i) {
        std::vector<ScoreVector> scores;
        scores.reserve(tables.size());
        for (const ScoreTable* t : tables) scores.push_back(t->at(ids[i]));
        const ScoreVector fused = sum_fuse(scores);
        out[i] = {ids[i], fused, predict(fused)};
    });
    return out;
}

std::vector<FusedSample> run_ensemble(const EnsembleConfig& config, std::span<const std::string> sample_ids,
                                      int workers) {
    config.validate();
    std::map<std::string, ScoreTable> scores;
    for (const auto& m : config.members) scores.emplace(m.key(), load_member_scores(m, sample_ids));
    return run_ensemble(config, sample_ids, scores, workers);
}

void write_fused_csv(const std::filesystem::path& path, std::span<const FusedSample> fused) {
    std::string text = "sample_id,score_no_release,score_release,prediction\n";
    for (const auto& f : fused) {
        text += f.sample_id + "," + format_double(f.fused.no_release) + "," + format_double(f.fused.release) + "," +
                std::string(label_name(f.prediction)) + "\n";
    }
    write_text_file(path, text);
}

std::vector<EnsembleConfig> read_ensembles(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open ensembles file " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
    const auto base = path.parent_path();
    std::vector<EnsembleConfig> out;
    try {
        for (const auto& e : doc.at("ensembles")) {
            EnsembleConfig cfg;
            cfg.name = e.at("name").get<std::string>();
            for (const auto& m : e.at("members")) {
                EnsembleMember mem;
                mem.background = m.at("background").get<std::string>();
                mem.method = m.at("method").get<std::string>();
                mem.kind = parse_member_kind(m.value("kind", "classifier"));
                mem.source = m.at("source").get<std::string>();
                if (mem.source.is_relative()) mem.source = base / mem.source;
                const std::string mapping = m.value("mapping", "max_confidence");
                if (mapping == "max_confidence") {
                    mem.mapping = DetectorMapping::MaxConfidence;
                } else if (mapping == "decision") {
                    mem.mapping = DetectorMapping::Decision;
                } else {
                    throw InvalidArgument("unknown detector mapping '" + mapping + "'");
                }
                cfg.members.push_back(std::move(mem));
            }
            cfg.validate();
            out.push_back(std::move(cfg));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
    return out;
}

void write_ensembles(const std::filesystem::path& path, std::span<const EnsembleConfig> configs) {
    nlohmann::json list = nlohmann::json::array();
    const auto base = path.parent_path();
    for (const auto& c : configs) {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& m : c.members) {
            nlohmann::json j = {{"background", m.background},
                                {"method", m.method},
                                {"kind", member_kind_name(m.kind)},
                                {"source", m.source.lexically_proximate(base).generic_string()}};
            if (m.kind == MemberKind::Detector) {
                j["mapping"] = m.mapping == DetectorMapping::Decision ? "decision" : "max_confidence";
            }
            members.push_back(std::move(j));
        }
        list.push_back({{"name", c.name}, {"members", std::move(members)}});
    }
    write_text_file(path, nlohmann::json{{"ensembles", std::move(list)}}.dump(2) + "\n");
}

std::vector<std::string> global_method_ids() { return {"O", "Z1", "Z2"}; }
std::vector<std::string> patch_method_ids() { return {"P200", "P290"}; }

std::vector<std::string> saliency_method_ids() {
    std::vector<std::string> out;
    for (const char* m : {"simpsal", "gbvs", "cos", "spe", "wavelet"}) {
        for (const char* v : {"fg", "fgroi", "roi"}) out.push_back(std::string(m) + "." + v);
    }
    return out;
}

std::vector<std::string> all_method_ids() {
    auto out = global_method_ids();
    for (auto& v : {patch_method_ids(), saliency_method_ids()}) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::filesystem::path member_score_path(const std::filesystem::path& root, const std::string& background,
                                        const std::string& method) {
    return root / background / (method + ".csv");
}

std::vector<EnsembleConfig> standard_ensembles(const std::filesystem::path& root) {
    auto member = [&](const std::string& bg, const std::string& method, MemberKind kind) {
        return EnsembleMember{bg, method, kind, member_score_path(root, bg, method), DetectorMapping::MaxConfidence};
    };
    auto group = [&](std::initializer_list<std::string> bgs, const std::vector<std::string>& methods, MemberKind kind) {
        std::vector<EnsembleMember> out;
        for (const auto& bg : bgs) {
            for (const auto& m : methods) out.push_back(member(bg, m, kind));
        }
        return out;
    };
    auto concat = [](std::initializer_list<std::vector<EnsembleMember>> parts) {
        std::vector<EnsembleMember> out;
        for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
        return out;
    };
    const auto abc = {std::string("A"), std::string("B"), std::string("C")};
    const auto global = group(abc, global_method_ids(), MemberKind::Classifier);
    const auto patch = group(abc, patch_method_ids(), MemberKind::Patch);
    const auto saliency = group(abc, saliency_method_ids(), MemberKind::Classifier);
    const auto detector = group(abc, {kDetectorMethod}, MemberKind::Detector);

    return {
        {"A/O", {member("A", "O", MemberKind::Classifier)}},
        {"A/Z1", {member("A", "Z1", MemberKind::Classifier)}},
        {"A/Z2", {member("A", "Z2", MemberKind::Classifier)}},
        {"A/Global", group({"A"}, global_method_ids(), MemberKind::Classifier)},
        {"Global", global},
        {"Patch", patch},
        {"Detector", detector},
        {"Global+Patch", concat({global, patch})},
        {"Global+Patch+Saliency", concat({global, patch, saliency})},
        {"AllMethods", concat({global, patch, saliency, detector})},
    };
}

}  // namespace phasic::fusion
