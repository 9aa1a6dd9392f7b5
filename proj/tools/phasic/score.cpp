#include "score.hpp"

#include "derive.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/io.hpp"
#include "phasic/core/parallel.hpp"
#include "phasic/data/baseline.hpp"
#include "phasic/eval/protocol.hpp"
#include "phasic/fusion/ensemble.hpp"
#include "phasic/fusion/score_io.hpp"

#include <set>

namespace phasic::cli {

namespace fs = std::filesystem;

namespace {

std::string model_id(int fold) { return "fold" + std::to_string(fold); }

// Experiments behind each fold's model, from the samples it was trained on.
struct FoldModels {
    eval::Provenance provenance;
    void add_training(int fold, const std::string& experiment) {
        auto& list = provenance.models[model_id(fold)];
        if (std::find(list.begin(), list.end(), experiment) == list.end()) list.push_back(experiment);
    }
    void finish() {
        for (auto& [id, list] : provenance.models) std::sort(list.begin(), list.end());
    }
};

void score_variant(const ScoreOptions& o, const std::string& bg, const std::string& method, const Logger& log) {
    const fs::path dir = variant_dir(o.derived, bg, method);
    const auto rows = read_variant_manifest(dir / "manifest.csv");
    if (rows.empty()) throw DataIntegrityError(dir.string() + ": variant manifest is empty");
    const auto patch_ids = fusion::patch_method_ids();
    const bool patch = std::find(patch_ids.begin(), patch_ids.end(), method) != patch_ids.end();

    std::vector<data::FeatureVector> features(rows.size());
    parallel_for(rows.size(), o.workers, [&](std::size_t i) {
        features[i] = data::image_features(read_png(dir / rows[i].file), o.feature_side);
    });

    fusion::ScoreTable table;
    FoldModels models;
    for (int f = 0; f < o.plan.k; ++f) {
        std::vector<data::LabeledFeatures> train;
        std::vector<std::size_t> test;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            const bool in_fold = o.plan.fold_of(r.experiment_id) == f;
            const bool train_row = patch ? r.mode == "manual" : r.mode == "full";
            const bool test_row = patch ? r.mode == "auto" : r.mode == "full";
            if (in_fold && test_row) test.push_back(i);
            if (!in_fold && train_row) {
                train.push_back({features[i], r.label});
                models.add_training(f, r.experiment_id);
            }
        }
        if (test.empty()) continue;
        const data::BaselineScorer scorer = data::BaselineScorer::train(train, o.shrinkage);
        for (auto i : test) {
            const auto& r = rows[i];
            const std::string key = patch ? fusion::patch_key(r.sample_id, r.x_offset) : r.sample_id;
            table[key] = scorer.score(features[i]);
            models.provenance.samples[r.sample_id] = model_id(f);
        }
    }
    models.finish();
    const fs::path path = fusion::member_score_path(o.out, bg, method);
    fusion::write_score_csv(path, table);
    eval::write_provenance(eval::provenance_path(path), models.provenance);
    log.info("score-baseline: " + bg + "/" + method + ": " + std::to_string(table.size()) + " row(s)");
}

void score_detector(const ScoreOptions& o, const Dataset& ds, const std::string& bg, const Logger& log) {
    const auto& records = ds.manifests.at(bg).records;
    std::vector<ImageMatrix> zones(records.size());
    parallel_for(records.size(), o.workers, [&](std::size_t i) {
        zones[i] = region::zone_common(read_png(records[i].image_path), ds.geometry);
    });

    fusion::DetectionTable table;
    FoldModels models;
    for (int f = 0; f < o.plan.k; ++f) {
        std::vector<data::BaselineDetector::Example> train;
        std::vector<std::size_t> test;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            if (o.plan.fold_of(r.experiment_id) == f) {
                test.push_back(i);
            } else if (r.label == Label::Release) {
                train.push_back({zones[i], r.interval->x1 - r.interval->x0});
                models.add_training(f, r.experiment_id);
            }
        }
        if (test.empty()) continue;
        const auto det = data::BaselineDetector::train(train);
        for (auto i : test) {
            auto boxes = det.detect(zones[i]);
            if (!boxes.empty()) table[records[i].sample_id] = std::move(boxes);
            models.provenance.samples[records[i].sample_id] = model_id(f);
        }
    }
    models.finish();
    const fs::path path = fusion::member_score_path(o.out, bg, fusion::kDetectorMethod);
    fusion::write_detector_csv(path, table);
    eval::write_provenance(eval::provenance_path(path), models.provenance);
    log.info("score-baseline: " + bg + "/detector: boxes for " + std::to_string(table.size()) + " of " +
             std::to_string(records.size()) + " sample(s)");
}

}  // namespace

ScoreSummary score_baseline(const ScoreOptions& o, const Logger& log) {
    const Dataset ds = load_dataset(o.dataset, o.backgrounds);
    eval::check_grouping(o.plan, ds.records());
    const auto methods = expand_methods(o.methods);
    ScoreSummary summary;
    for (const auto& [bg, manifest] : ds.manifests) {
        for (const auto& m : methods) {
            if (!fs::exists(variant_dir(o.derived, bg, m) / "manifest.csv")) {
                throw InvalidArgument("derived variant " + bg + "/" + m + " not found under " + o.derived.string() +
                                      "; run derive first");
            }
            score_variant(o, bg, m, log);
            ++summary.score_files;
        }
        if (o.detector) {
            score_detector(o, ds, bg, log);
            ++summary.score_files;
        }
    }

    std::vector<fusion::EnsembleConfig> available;
    for (auto& cfg : fusion::standard_ensembles(o.out)) {
        const bool complete = std::all_of(cfg.members.begin(), cfg.members.end(),
                                          [](const auto& m) { return fs::exists(m.source); });
        if (complete) available.push_back(std::move(cfg));
    }
    fusion::write_ensembles(o.out / "ensembles.json", available);
    summary.ensembles = available.size();
    return summary;
}

}  // namespace phasic::cli
