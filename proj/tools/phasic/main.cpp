#include "common.hpp"
#include "derive.hpp"
#include "score.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/io.hpp"
#include "phasic/core/parallel.hpp"
#include "phasic/data/synth.hpp"
#include "phasic/eval/protocol.hpp"
#include "phasic/eval/report.hpp"
#include "phasic/fusion/ensemble.hpp"
#include "phasic/region/patches.hpp"
#include "phasic/saliency/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <set>

namespace fs = std::filesystem;
using namespace phasic;
using namespace phasic::cli;

namespace {

// Exit codes.
constexpr int kRuntimeError = 1;
constexpr int kInvalidArgument = 2;
constexpr int kProtocolViolation = 3;
constexpr int kDataError = 4;

struct Common {
    int workers = default_workers();
    bool quiet = false;
    Logger log() const { return Logger{quiet}; }
};

region::Geometry geometry_for(const std::string& dataset, int scale) {
    if (!dataset.empty()) return data::read_dataset_geometry(dataset);
    return region::Geometry{}.scaled(scale);
}

std::vector<fusion::EnsembleConfig> select_ensembles(const std::string& path, const std::vector<std::string>& names) {
    auto all = fusion::read_ensembles(path);
    if (names.empty()) return all;
    std::vector<fusion::EnsembleConfig> out;
    for (const auto& n : names) {
        auto it = std::find_if(all.begin(), all.end(), [&](const auto& c) { return c.name == n; });
        if (it == all.end()) {
            std::string known;
            for (const auto& c : all) known += (known.empty() ? "" : ", ") + c.name;
            throw InvalidArgument("ensemble '" + n + "' not found in " + path + " (known: " + known + ")");
        }
        out.push_back(*it);
    }
    return out;
}

// Each distinct member of the selected ensembles as a one-member ensemble.
std::vector<fusion::EnsembleConfig> single_member_ensembles(const std::vector<fusion::EnsembleConfig>& configs) {
    std::vector<fusion::EnsembleConfig> out;
    std::set<std::string> seen;
    for (const auto& c : configs) {
        for (const auto& m : c.members) {
            if (seen.insert(m.key()).second) out.push_back({m.key(), {m}});
        }
    }
    return out;
}

void print_table(const std::vector<eval::ReportRow>& rows) { std::cout << eval::format_table(rows) << std::flush; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phasic: saliency, zoning, fusion and evaluation pipeline for FSCV release images"};
    app.set_config("--config", "", "TOML config file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--workers", common.workers, "Worker threads (default: $PHASIC_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    app.add_flag("-q,--quiet", common.quiet, "Only print warnings and errors");

    std::function<void()> run;

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic FSCV dataset for backgrounds A, B and C");
    data::DatasetSpec synth_spec;
    std::string synth_out;
    bool synth_force = false;
    synth->add_option("-o,--out", synth_out, "Output directory")->required();
    synth->add_option("--experiments", synth_spec.experiments, "Number of experiments")->capture_default_str();
    synth->add_option("--per-exp", synth_spec.per_experiment, "Samples per class per experiment")->capture_default_str();
    synth->add_option("--seed", synth_spec.seed, "Random seed")->capture_default_str();
    synth->add_option("--scale", synth_spec.scale, "Divide the 875x600 geometry by this factor")->capture_default_str();
    synth->add_flag("--force", synth_force, "Write into a non-empty output directory");
    synth->callback([&] {
        run = [&] {
            if (!synth_force && directory_has_entries(synth_out)) {
                throw InvalidArgument("output directory " + synth_out + " is not empty (use --force to overwrite)");
            }
            synth_spec.workers = common.workers;
            const auto s = data::generate_dataset(synth_out, synth_spec);
            for (const auto& w : s.warnings) common.log().warn(w);
            std::cout << "Samples per background: " << s.samples << "\nImages written: " << s.images
                      << "\nManifests: " << s.manifests.size() << "\n";
        };
    });

    // derive
    auto* derive_cmd = app.add_subcommand("derive", "Build the derived datasets (global, patch and saliency variants)");
    DeriveOptions derive_opt;
    std::string derive_bgs, derive_methods = "all";
    derive_cmd->add_option("-d,--dataset", derive_opt.dataset, "Dataset directory")->required();
    derive_cmd->add_option("-o,--out", derive_opt.out, "Output directory")->required();
    derive_cmd->add_option("--backgrounds", derive_bgs, "Comma-separated subset of A,B,C");
    derive_cmd->add_option("--methods", derive_methods, "all, global, patch, saliency or method ids, comma-separated")
        ->capture_default_str();
    derive_cmd->add_option("--threshold", derive_opt.params.mask_threshold, "Saliency mask threshold")
        ->capture_default_str();
    derive_cmd->add_option("--line-fraction", derive_opt.params.roi_line_fraction,
                           "ROI row/column threshold as a fraction of the line length")
        ->capture_default_str();
    derive_cmd->add_option("--seed", derive_opt.seed, "Seed for no-release manual patch positions")->capture_default_str();
    derive_cmd->callback([&] {
        run = [&] {
            derive_opt.backgrounds = parse_backgrounds(derive_bgs);
            derive_opt.methods = split_list(derive_methods);
            derive_opt.workers = common.workers;
            const auto s = derive(derive_opt, common.log());
            std::cout << "Derived variants: " << s.variants << "\nImages: " << s.images << "\nComputed: " << s.computed
                      << "\nReused: " << s.reused << "\nROI substitutions: " << s.substituted << "\n";
        };
    });

    // saliency
    auto* sal = app.add_subcommand("saliency", "Saliency map of one image, optionally with mask, FG, FG-ROI and ROI");
    std::string sal_image, sal_method, sal_out, sal_triplet;
    saliency::SaliencyParams sal_params;
    sal->add_option("-i,--image", sal_image, "Input PNG")->required();
    sal->add_option("-m,--method", sal_method, "simpsal, gbvs, cos, spe or wavelet")->required();
    sal->add_option("-o,--out", sal_out, "Output saliency map PNG")->required();
    sal->add_option("--triplet-dir", sal_triplet, "Also write mask.png, fg.png, fgroi.png and roi.png here");
    sal->add_option("--threshold", sal_params.mask_threshold, "Mask threshold")->capture_default_str();
    sal->add_option("--line-fraction", sal_params.roi_line_fraction, "ROI line threshold fraction")->capture_default_str();
    sal->callback([&] {
        run = [&] {
            const auto method = saliency::parse_method(sal_method);
            const ImageMatrix img = read_png(sal_image);
            if (sal_triplet.empty()) {
                write_png(sal_out, saliency::compute_saliency(method, img, sal_params));
                return;
            }
            const auto t = saliency::saliency_triplet_or_substitute(img, method, sal_params, sal_image);
            if (t.roi_substituted) common.log().warn("ROI crop is empty; FG substituted for FG-ROI and ROI");
            write_png(sal_out, t.map);
            const fs::path dir = sal_triplet;
            write_png(dir / "mask.png", t.mask);
            write_png(dir / "fg.png", t.fg);
            write_png(dir / "fgroi.png", t.fg_roi);
            write_png(dir / "roi.png", t.roi);
        };
    });

    // zones
    auto* zones = app.add_subcommand("zones", "Apply a global zoning method (O, Z1, Z2) to one image");
    std::string zone_image, zone_method, zone_out, zone_dataset;
    int zone_scale = 1;
    zones->add_option("-i,--image", zone_image, "Input PNG")->required();
    zones->add_option("-m,--method", zone_method, "O, Z1 or Z2")->required();
    zones->add_option("-o,--out", zone_out, "Output PNG")->required();
    zones->add_option("--scale", zone_scale, "Divide the default geometry by this factor")->capture_default_str();
    zones->add_option("--dataset", zone_dataset, "Take the geometry from this dataset's synth.json");
    zones->callback([&] {
        run = [&] {
            const auto g = geometry_for(zone_dataset, zone_scale);
            write_png(zone_out, region::apply_global(region::parse_global_method(zone_method), read_png(zone_image), g));
        };
    });

    // patches
    auto* patches = app.add_subcommand("patches", "Cut patches (P200, P290) from one image");
    std::string patch_image, patch_method, patch_out, patch_dataset;
    int patch_scale = 1;
    std::optional<int> patch_peak;
    patches->add_option("-i,--image", patch_image, "Input PNG")->required();
    patches->add_option("-m,--method", patch_method, "P200 or P290")->required();
    patches->add_option("-o,--out-dir", patch_out, "Output directory")->required();
    patches->add_option("--peak-x", patch_peak, "Manual patch centered on this column (default: automatic windows)");
    patches->add_option("--scale", patch_scale, "Divide the default geometry by this factor")->capture_default_str();
    patches->add_option("--dataset", patch_dataset, "Take the geometry from this dataset's synth.json");
    patches->callback([&] {
        run = [&] {
            const auto g = geometry_for(patch_dataset, patch_scale);
            const auto m = region::parse_patch_method(patch_method);
            const ImageMatrix img = read_png(patch_image);
            const fs::path dir = patch_out;
            const std::string stem = fs::path(patch_image).stem().string();
            if (patch_peak) {
                const auto p = region::training_patch(m, img, *patch_peak, g);
                write_png(dir / (stem + ".manual.png"), p.image);
                std::cout << stem << ".manual.png x_offset=" << p.x_offset << "\n";
                return;
            }
            for (const auto& p : region::test_patches(m, img, g, stem).patches) {
                const std::string name = stem + ".p" + std::to_string(p.x_offset) + ".png";
                write_png(dir / name, p.image);
                std::cout << name << "\n";
            }
        };
    });

    // foldplan
    auto* foldplan = app.add_subcommand("foldplan", "Assign experiments to folds, grouped by experiment");
    std::string fold_dataset, fold_out;
    int fold_k = 10;
    std::uint64_t fold_seed = 0;
    foldplan->add_option("-d,--dataset", fold_dataset, "Dataset directory")->required();
    foldplan->add_option("-o,--out", fold_out, "Output experiment_id,fold CSV")->required();
    foldplan->add_option("--k", fold_k, "Number of folds")->capture_default_str();
    foldplan->add_option("--seed", fold_seed, "Shuffle seed")->capture_default_str();
    foldplan->callback([&] {
        run = [&] {
            const Dataset ds = load_dataset(fold_dataset);
            const auto records = ds.records();
            const auto plan = eval::grouped_kfold(records, fold_k, fold_seed);
            eval::check_grouping(plan, records);
            eval::write_fold_plan(fold_out, plan);
            for (int f = 0; f < plan.k; ++f) {
                const auto s = eval::split(plan, ds.manifests.begin()->second.records, f);
                common.log().info("fold " + std::to_string(f) + ": " + std::to_string(plan.experiments_in(f).size()) +
                                  " experiment(s), " + std::to_string(s.test.size()) + " sample(s)");
            }
            std::cout << "Experiments: " << plan.assignment.size() << "\nFolds: " << plan.k << "\n";
        };
    });

    // score-baseline
    auto* score = app.add_subcommand("score-baseline", "Cross-validated baseline scores for every derived variant");
    ScoreOptions score_opt;
    std::string score_plan, score_bgs, score_methods = "all";
    bool score_no_detector = false;
    score->add_option("-d,--dataset", score_opt.dataset, "Dataset directory")->required();
    score->add_option("--derived", score_opt.derived, "Derived dataset directory")->required();
    score->add_option("--plan", score_plan, "Fold plan CSV")->required();
    score->add_option("-o,--out", score_opt.out, "Score directory")->required();
    score->add_option("--backgrounds", score_bgs, "Comma-separated subset of A,B,C");
    score->add_option("--methods", score_methods, "all, global, patch, saliency or method ids")->capture_default_str();
    score->add_flag("--no-detector", score_no_detector, "Skip the baseline detector");
    score->add_option("--shrinkage", score_opt.shrinkage, "Covariance shrinkage of the baseline scorer")
        ->capture_default_str();
    score->callback([&] {
        run = [&] {
            score_opt.plan = eval::read_fold_plan(score_plan);
            score_opt.backgrounds = parse_backgrounds(score_bgs);
            score_opt.methods = split_list(score_methods);
            score_opt.detector = !score_no_detector;
            score_opt.workers = common.workers;
            const auto s = score_baseline(score_opt, common.log());
            std::cout << "Score files: " << s.score_files << "\nEnsembles: " << s.ensembles << "\n";
        };
    });

    // fuse
    auto* fuse = app.add_subcommand("fuse", "Sum-rule fusion of one ensemble");
    std::string fuse_ensembles, fuse_name, fuse_dataset, fuse_out, fuse_report;
    fuse->add_option("-e,--ensembles", fuse_ensembles, "Ensembles JSON")->required();
    fuse->add_option("-n,--name", fuse_name, "Ensemble name")->required();
    fuse->add_option("-d,--dataset", fuse_dataset, "Dataset directory (sample ids and labels)")->required();
    fuse->add_option("-o,--out", fuse_out, "Fused scores CSV")->required();
    fuse->add_option("--report-dir", fuse_report, "Also write report.txt and report.json here");
    fuse->callback([&] {
        run = [&] {
            const auto config = select_ensembles(fuse_ensembles, {fuse_name}).front();
            const Dataset ds = load_dataset(fuse_dataset);
            const auto samples = eval::unique_samples(ds.records());
            std::vector<std::string> ids;
            std::vector<Label> labels, preds;
            std::vector<double> scores;
            for (const auto& s : samples) ids.push_back(s.sample_id);
            const auto fused = fusion::run_ensemble(config, ids, common.workers);
            fusion::write_fused_csv(fuse_out, fused);
            for (std::size_t i = 0; i < fused.size(); ++i) {
                labels.push_back(samples[i].label);
                preds.push_back(fused[i].prediction);
                scores.push_back(fused[i].fused.release);
            }
            std::cout << "Scores Fused: " << config.members.size() << "\n";
            const std::vector<eval::ReportRow> rows = {
                eval::report_row(config, eval::compute_metrics(labels, preds, scores, eval::MetricsMode::Lenient))};
            print_table(rows);
            if (!fuse_report.empty()) eval::write_report(fuse_report, rows);
        };
    });

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Cross-validated metrics of ensembles under a grouped fold plan");
    std::string eval_ensembles, eval_dataset, eval_plan, eval_out;
    std::vector<std::string> eval_names;
    int eval_k = 10;
    std::uint64_t eval_seed = 0;
    bool eval_singles = false, eval_no_provenance = false, eval_strict = false;
    eval_cmd->add_option("-e,--ensembles", eval_ensembles, "Ensembles JSON")->required();
    eval_cmd->add_option("-d,--dataset", eval_dataset, "Dataset directory")->required();
    eval_cmd->add_option("-n,--name", eval_names, "Ensemble name (repeatable; default: all)");
    eval_cmd->add_option("--plan", eval_plan, "Fold plan CSV (default: build one from --k and --seed)");
    eval_cmd->add_option("--k", eval_k, "Number of folds when no plan is given")->capture_default_str();
    eval_cmd->add_option("--seed", eval_seed, "Fold shuffle seed when no plan is given")->capture_default_str();
    eval_cmd->add_option("-o,--out", eval_out, "Report directory (report.txt, report.json)");
    eval_cmd->add_flag("--single-members", eval_singles, "Also report every member on its own");
    eval_cmd->add_flag("--allow-missing-provenance", eval_no_provenance, "Accept score files without provenance");
    eval_cmd->add_flag("--strict", eval_strict, "Fail on undefined metrics instead of reporting n/a");
    eval_cmd->callback([&] {
        run = [&] {
            const Dataset ds = load_dataset(eval_dataset);
            const auto records = ds.records();
            const auto plan = eval_plan.empty() ? eval::grouped_kfold(records, eval_k, eval_seed)
                                                : eval::read_fold_plan(eval_plan);
            auto configs = select_ensembles(eval_ensembles, eval_names);
            if (eval_singles) {
                auto singles = single_member_ensembles(configs);
                configs.insert(configs.end(), singles.begin(), singles.end());
            }
            eval::RunOptions opt;
            opt.require_provenance = !eval_no_provenance;
            opt.mode = eval_strict ? eval::MetricsMode::Strict : eval::MetricsMode::Lenient;
            opt.workers = common.workers;
            std::vector<eval::ReportRow> rows;
            for (const auto& c : configs) {
                auto r = eval::cross_validated_run(c, plan, records, opt);
                rows.push_back(eval::report_row(c, r.pooled, std::move(r.folds)));
                common.log().info("eval: " + c.name + " done");
            }
            print_table(rows);
            if (!eval_out.empty()) eval::write_report(eval_out, rows);
        };
    });

    // report
    auto* report = app.add_subcommand("report", "Print result tables from report.json files");
    std::vector<std::string> report_in;
    bool report_json = false;
    report->add_option("inputs", report_in, "report.json files")->required();
    report->add_flag("--json", report_json, "Print the merged JSON document instead of the table");
    report->callback([&] {
        run = [&] {
            std::vector<eval::ReportRow> rows;
            for (const auto& p : report_in) {
                auto r = eval::read_report_json(p);
                rows.insert(rows.end(), r.begin(), r.end());
            }
            if (report_json) std::cout << eval::report_json(rows);
            else print_table(rows);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        run();
        return 0;
    } catch (const ProtocolViolation& e) {
        std::cerr << "protocol violation: " << e.what() << '\n';
        return kProtocolViolation;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kInvalidArgument;
    } catch (const IngestionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const DataIntegrityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}
