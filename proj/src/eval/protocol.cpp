#include "phasic/eval/protocol.hpp"

#include "phasic/core/csv.hpp"
#include "phasic/core/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace phasic::eval {

using nlohmann::json;

std::filesystem::path provenance_path(const std::filesystem::path& score_file) {
    std::filesystem::path p = score_file;
    p += ".provenance.json";
    return p;
}

Provenance read_provenance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataIntegrityError("cannot open provenance file " + path.string());
    Provenance p;
    try {
        const json doc = json::parse(in);
        for (const auto& [id, model] : doc.at("models").items()) {
            p.models[id] = model.at("train_experiments").get<std::vector<std::string>>();
        }
        for (const auto& [sid, model] : doc.at("samples").items()) p.samples[sid] = model.get<std::string>();
    } catch (const json::exception& e) {
        throw DataIntegrityError("malformed provenance file " + path.string() + ": " + e.what());
    }
    return p;
}

void write_provenance(const std::filesystem::path& path, const Provenance& p) {
    json doc;
    doc["models"] = json::object();
    for (const auto& [id, exps] : p.models) doc["models"][id] = {{"train_experiments", exps}};
    doc["samples"] = p.samples;
    write_text_file(path, doc.dump(1) + "\n");
}

void check_provenance(const Provenance& p, const FoldPlan& plan,
                      const std::map<std::string, std::string>& experiment_of, const std::string& source) {
    std::map<std::string, std::set<int>> model_folds;
    for (const auto& [id, exps] : p.models) {
        auto& folds = model_folds[id];
        for (const auto& e : exps) folds.insert(plan.fold_of(e));
    }
    for (const auto& [sid, exp] : experiment_of) {
        const auto it = p.samples.find(sid);
        if (it == p.samples.end()) {
            throw ProtocolViolation(source + ": no model recorded for sample " + sid);
        }
        const auto m = model_folds.find(it->second);
        if (m == model_folds.end()) {
            throw ProtocolViolation(source + ": sample " + sid + " refers to unknown model " + it->second);
        }
        const int fold = plan.fold_of(exp);
        if (m->second.count(fold)) {
            throw ProtocolViolation(source + ": model " + it->second + " scored sample " + sid + " of fold " +
                                    std::to_string(fold) + " but was trained on that fold");
        }
    }
}

std::vector<SampleInfo> unique_samples(std::span<const data::SampleRecord> records) {
    std::map<std::string, SampleInfo> by_id;
    for (const auto& r : records) {
        const auto [it, inserted] = by_id.emplace(r.sample_id, SampleInfo{r.sample_id, r.experiment_id, r.label});
        if (!inserted && (it->second.experiment_id != r.experiment_id || it->second.label != r.label)) {
            throw DataIntegrityError("sample " + r.sample_id + " has conflicting experiment or label across manifests");
        }
    }
    std::vector<SampleInfo> out;
    out.reserve(by_id.size());
    for (auto& [id, info] : by_id) out.push_back(std::move(info));
    return out;
}

CrossValidatedReport cross_validated_run(const fusion::EnsembleConfig& config, const FoldPlan& plan,
                                         std::span<const data::SampleRecord> manifest,
                                         const std::map<std::string, fusion::ScoreTable>& member_scores,
                                         const std::map<std::string, Provenance>& provenance,
                                         const RunOptions& options) {
    config.validate();
    check_grouping(plan, manifest);
    const auto samples = unique_samples(manifest);
    if (samples.empty()) throw InvalidArgument("cross_validated_run: manifest has no samples");

    std::map<std::string, std::string> experiment_of;
    std::vector<std::string> ids;
    for (const auto& s : samples) {
        experiment_of[s.sample_id] = s.experiment_id;
        ids.push_back(s.sample_id);
    }
    for (const auto& m : config.members) {
        const auto it = provenance.find(m.key());
        if (it != provenance.end()) {
            check_provenance(it->second, plan, experiment_of, m.key());
        } else if (options.require_provenance) {
            throw ProtocolViolation(m.key() + ": score source carries no fold provenance");
        }
    }

    CrossValidatedReport report;
    report.ensemble = config.name;
    report.members = config.members.size();
    report.fused = fusion::run_ensemble(config, ids, member_scores, options.workers);

    // run_ensemble returns samples sorted by id, matching `samples`.
    struct Column {
        std::vector<Label> labels, predictions;
        std::vector<double> scores;
        void add(Label l, const fusion::FusedSample& f) {
            labels.push_back(l);
            predictions.push_back(f.prediction);
            scores.push_back(f.fused.release);
        }
    };
    std::vector<Column> per_fold(plan.k);
    Column all;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        per_fold[plan.fold_of(samples[i].experiment_id)].add(samples[i].label, report.fused[i]);
        all.add(samples[i].label, report.fused[i]);
    }

    Confusion pooled;
    for (int f = 0; f < plan.k; ++f) {
        const Column& c = per_fold[f];
        if (c.labels.empty()) continue;
        FoldReport fr{f, c.labels.size(), compute_metrics(c.labels, c.predictions, c.scores, MetricsMode::Lenient)};
        pooled += fr.metrics.counts;
        report.folds.push_back(std::move(fr));
    }
    report.pooled = metrics_from_counts(pooled, options.mode);
    report.pooled.auc = roc_auc(all.labels, all.scores);
    if (!report.pooled.auc && options.mode == MetricsMode::Strict) {
        throw UndefinedMetricError("metrics: AUC is undefined when one class is absent");
    }
    return report;
}

CrossValidatedReport cross_validated_run(const fusion::EnsembleConfig& config, const FoldPlan& plan,
                                         std::span<const data::SampleRecord> manifest, const RunOptions& options) {
    config.validate();
    std::vector<std::string> ids;
    for (const auto& s : unique_samples(manifest)) ids.push_back(s.sample_id);
    std::map<std::string, fusion::ScoreTable> scores;
    std::map<std::string, Provenance> provenance;
    for (const auto& m : config.members) {
        scores[m.key()] = fusion::load_member_scores(m, ids);
        const auto side = provenance_path(m.source);
        if (std::filesystem::exists(side)) provenance[m.key()] = read_provenance(side);
    }
    return cross_validated_run(config, plan, manifest, scores, provenance, options);
}

}  // namespace phasic::eval
