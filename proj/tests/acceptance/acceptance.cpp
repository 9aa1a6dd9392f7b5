// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [--skip-e2e] [--keep DIR] [--only N]

#include "markov_oracle.hpp"
#include "oracles.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/transforms.hpp"
#include "phasic/data/fscv.hpp"
#include "phasic/data/synth.hpp"
#include "phasic/eval/folds.hpp"
#include "phasic/eval/metrics.hpp"
#include "phasic/eval/report.hpp"
#include "phasic/fusion/detector.hpp"
#include "phasic/fusion/ensemble.hpp"
#include "phasic/fusion/scores.hpp"
#include "phasic/region/patches.hpp"
#include "phasic/region/zones.hpp"
#include "phasic/saliency/cosaliency.hpp"
#include "phasic/saliency/extraction.hpp"
#include "phasic/saliency/gbvs.hpp"
#include "phasic/saliency/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace phasic;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failed expectations of one criterion.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) failures_.push_back(what);
    }
    void note(const std::string& s) { notes_.push_back(s); }
    bool passed() const { return failures_.empty(); }
    std::size_t checks() const { return checks_; }
    const std::vector<std::string>& failures() const { return failures_; }
    const std::vector<std::string>& notes() const { return notes_; }

private:
    std::size_t checks_ = 0;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// 1. Mask extraction against per-pixel oracles.
void algorithm_fidelity(Checker& c) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dim(2, 40), ch(0, 1);
    std::uniform_real_distribution<double> density(0.05, 0.95), th(0.0, 12.0);
    int empty = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int w = dim(rng), h = dim(rng);
        const ImageMatrix o = oracle::random_image(w, h, ch(rng) ? 3 : 1, rng);
        const BinaryMask b = oracle::random_mask(w, h, density(rng), rng);
        const double t = std::floor(th(rng) * 4) / 4;
        const auto roi_th = saliency::RoiThreshold::uniform(t);
        const std::string tag = "trial " + std::to_string(trial);

        const ImageMatrix fg = saliency::foreground(o, b);
        c.expect(fg == oracle::foreground(o, b), tag + ": foreground differs from oracle");

        const ImageMatrix expect_fgroi = oracle::fg_roi(o, b, t, t);
        const ImageMatrix expect_roi = oracle::fg_roi(oracle::foreground(o, b), b, t, t);
        if (expect_fgroi.data().empty()) {
            ++empty;
            bool threw = false, threw_roi = false;
            try {
                saliency::fg_roi(o, b, roi_th, tag);
            } catch (const EmptyRoiError&) {
                threw = true;
            }
            try {
                saliency::roi(o, b, roi_th, tag);
            } catch (const EmptyRoiError&) {
                threw_roi = true;
            }
            c.expect(threw && threw_roi, tag + ": empty crop did not raise EmptyRoiError");
            continue;
        }
        const ImageMatrix got_fgroi = saliency::fg_roi(o, b, roi_th);
        const ImageMatrix got_roi = saliency::roi(o, b, roi_th);
        c.expect(got_fgroi == expect_fgroi, tag + ": fg_roi differs from oracle");
        c.expect(got_roi == expect_roi, tag + ": roi differs from oracle");
        c.expect(got_roi == saliency::fg_roi(fg, b, roi_th), tag + ": roi != fg_roi(foreground)");
    }
    c.note("200 triples, " + std::to_string(empty) + " with an empty crop");
}

// 2. Zone and patch geometry at the published size.
void geometry_fidelity(Checker& c) {
    std::mt19937_64 rng(202);
    const ImageMatrix img = oracle::random_image(875, 600, 3, rng);
    const region::Geometry g;
    const ImageMatrix z1 = region::zone_common(img, g), z2 = region::zone_concat(img, g);
    c.expect(z1.width() == 875 && z1.height() == 200, "common zone is not 875x200");
    c.expect(z2.width() == 875 && z2.height() == 290, "concatenated zone is not 875x290");
    c.expect(z1.at(10, 0, 1) == img.at(10, 320, 1), "common zone does not start at row 320");
    c.expect(z2.at(10, 89, 0) == img.at(10, 89, 0) && z2.at(10, 90, 0) == img.at(10, 320, 0),
             "concatenated zone is not rows 0..89 followed by 320..519");

    const auto set = region::auto_patches(z1, g);
    std::vector<int> offsets;
    for (const auto& p : set.patches) offsets.push_back(p.x_offset);
    c.expect(offsets == std::vector<int>{0, 135, 270, 405, 540, 675}, "auto patch offsets differ");
    for (const auto& p : set.patches) {
        c.expect(p.image.width() == 200 && p.image.height() == 200, "auto patch is not 200x200");
    }

    const auto concat = region::auto_patches(z2, g);
    c.expect(concat.patches.size() == 6, "concatenated zone does not give 6 patches");
    const ImageMatrix padded = region::pad_to_square(concat.patches[2].image, 290);
    c.expect(padded.width() == 290 && padded.height() == 290, "padded patch is not 290x290");
    bool zero_right = true, kept_left = true;
    for (int ch = 0; ch < 3; ++ch) {
        for (int y = 0; y < 290; ++y) {
            for (int x = 0; x < 290; ++x) {
                if (x >= 200) zero_right = zero_right && padded.at(x, y, ch) == 0.0;
                else kept_left = kept_left && padded.at(x, y, ch) == z2.at(270 + x, y, ch);
            }
        }
    }
    c.expect(zero_right, "padding columns are not zero");
    c.expect(kept_left, "padding altered the patch");
}

ImageMatrix disk_image(int w, int h, int cx, int cy, int r) {
    ImageMatrix img(w, h, 3, 0.1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
                for (int ch = 0; ch < 3; ++ch) img.at(x, y, ch) = 0.9;
            }
        }
    }
    return img;
}

std::pair<int, int> argmax(const SaliencyMap& m) {
    int bx = 0, by = 0;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (m.at(x, y) > m.at(bx, by)) bx = x, by = y;
        }
    }
    return {bx, by};
}

bool in_unit_range(const SaliencyMap& m) { return m.values().min() >= 0.0 && m.values().max() <= 1.0; }

// 3. Saliency sanity suite.
void saliency_suite(Checker& c) {
    using saliency::Method;
    const ImageMatrix flat(96, 80, 3, 0.5);
    std::mt19937_64 rng(303);
    const ImageMatrix noise = oracle::random_image(96, 80, 3, rng);
    for (Method m : saliency::kAllMethods) {
        const std::string id(saliency::method_id(m));
        c.expect(saliency::compute_saliency(m, flat).all_zero(), id + ": constant image gives a non-zero map");
        c.expect(in_unit_range(saliency::compute_saliency(m, noise)), id + ": output outside [0,1]");
    }

    // Disk radius 10 at (40,70): the maximum must fall inside its bounding box.
    const ImageMatrix disk = disk_image(128, 112, 40, 70, 10);
    for (Method m : {Method::SimpSal, Method::Gbvs}) {
        const SaliencyMap map = saliency::compute_saliency(m, disk);
        const auto [x, y] = argmax(map);
        c.expect(in_unit_range(map), std::string(saliency::method_id(m)) + ": disk map outside [0,1]");
        c.expect(std::abs(x - 40) <= 10 && std::abs(y - 70) <= 10,
                 std::string(saliency::method_id(m)) + ": disk maximum at (" + std::to_string(x) + "," +
                     std::to_string(y) + ")");
    }

    ImageMatrix dot(64, 64, 3, 0.0);
    for (int ch = 0; ch < 3; ++ch) dot.at(20, 41, ch) = 1.0;
    {
        const auto [x, y] = argmax(saliency::compute_saliency(Method::SpectralResidual, dot));
        c.expect(std::abs(x - 20) <= 2 && std::abs(y - 41) <= 2, "spe: bright-pixel maximum more than 2 px away");
    }

    ImageMatrix quad(64, 64, 3, 0.5);
    for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
            for (int ch = 0; ch < 3; ++ch) quad.at(x, y, ch) = ((x + y) % 2) ? 0.9 : 0.1;
        }
    }
    {
        const SaliencyMap map = saliency::compute_saliency(Method::Wavelet, quad);
        double inside = 0, outside = 0;
        for (int y = 0; y < 64; ++y) {
            for (int x = 0; x < 64; ++x) (x < 32 && y < 32 ? inside : outside) += map.at(x, y);
        }
        c.expect(inside / 1024 > outside / 3072, "wavelet: textured quadrant is not the most salient");
    }

    // Co-saliency: a red blob shared by two images is where the maps peak.
    auto blob_image = [](double g, double b) {
        ImageMatrix img(8, 8, 3);
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 8; ++x) {
                const bool blob = x >= 3 && x < 6 && y >= 2 && y < 5;
                img.at(x, y, 0) = blob ? 0.9 : 0.05;
                img.at(x, y, 1) = blob ? 0.05 : g;
                img.at(x, y, 2) = blob ? 0.05 : b;
            }
        }
        return img;
    };
    const ImageMatrix group[2] = {blob_image(0.8, 0.1), blob_image(0.1, 0.8)};
    const auto co = saliency::cosaliency(group);
    for (const auto& m : co.maps) {
        c.expect(in_unit_range(m), "cos: map outside [0,1]");
        c.expect(m.at(4, 3) == 1.0, "cos: shared blob is not the maximum");
    }

    // GBVS chains against a dense eigen-solve.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0, worst_sum = 0.0;
    for (int side = 3; side <= 12; ++side) {
        Matrix f(side, side);
        for (double& v : f.data()) v = u(rng);
        const auto chain = saliency::activation_chain(f);
        const auto dense = chain.dense();
        const int n = side * side;
        Eigen::MatrixXd p(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) p(i, j) = dense.at(i, j);
        }
        const auto expect = oracle::stationary(p);
        for (const auto& e : {saliency::power_iteration(chain), saliency::power_iteration(dense, {}, 1e-12, 100000)}) {
            const double sum = std::accumulate(e.distribution.begin(), e.distribution.end(), 0.0);
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
            for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(e.distribution[i] - expect[i]));
        }
    }
    c.expect(worst_sum <= 1e-9, "gbvs: equilibrium sum off by " + fmt(worst_sum));
    c.expect(worst <= 1e-6, "gbvs: equilibrium differs from eigen-solve by " + fmt(worst));
    c.note("GBVS lattices 3x3..12x12: max |pi - eig| = " + fmt(worst) + ", max |sum - 1| = " + fmt(worst_sum));
}

// 4. Transform round trips.
void numerics(Checker& c) {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> dim(2, 96);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double fft_worst = 0.0, dwt_worst = 0.0;
    const WaveletFamily families[] = {WaveletFamily::Haar, WaveletFamily::Db2, WaveletFamily::Db4};
    for (int trial = 0; trial < 100; ++trial) {
        Matrix m(dim(rng), dim(rng));
        for (double& v : m.data()) v = u(rng);
        const ComplexMatrix back = ifft2(fft2(m));
        for (std::size_t i = 0; i < m.size(); ++i) {
            fft_worst = std::max(fft_worst, std::abs(back.data[i] - std::complex<double>(m.data()[i], 0.0)));
        }
        const int levels = 1 + trial % 4;
        const Matrix rec = idwt2(dwt2(m, families[trial % 3], levels));
        for (std::size_t i = 0; i < m.size(); ++i) dwt_worst = std::max(dwt_worst, std::abs(rec.data()[i] - m.data()[i]));
    }
    c.expect(fft_worst <= 1e-9, "FFT round trip error " + fmt(fft_worst));
    c.expect(dwt_worst <= 1e-8, "DWT round trip error " + fmt(dwt_worst));
    c.note("max error: FFT " + fmt(fft_worst) + ", DWT " + fmt(dwt_worst));
}

// 5. Fusion rules against brute force.
void fusion_rules(Checker& c) {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> count(1, 63);
    std::uniform_real_distribution<double> u(0.0, 1.0), scale(0.01, 100.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::string tag = "set " + std::to_string(trial);
        std::vector<fusion::ScoreVector> s(count(rng));
        for (auto& v : s) {
            v.release = u(rng);
            v.no_release = trial % 2 ? 1.0 - v.release : u(rng);
        }
        long double a = 0, b = 0;
        for (const auto& v : s) a += v.no_release, b += v.release;
        const auto fused = fusion::sum_fuse(s);
        c.expect(std::abs(fused.no_release - static_cast<double>(a)) <= 1e-12 * s.size() &&
                     std::abs(fused.release - static_cast<double>(b)) <= 1e-12 * s.size(),
                 tag + ": sum_fuse differs from the oracle");
        const Label oracle_label = b > a ? Label::Release : Label::NoRelease;
        if (std::abs(static_cast<double>(b - a)) > 1e-9) {
            c.expect(fusion::predict(fused) == oracle_label, tag + ": fused prediction differs from the oracle");
        }

        // Max rule: first patch with the strictly largest release score.
        std::size_t best = 0;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i].release > s[best].release) best = i;
        }
        c.expect(fusion::max_rule_patches(s) == s[best], tag + ": max rule picked the wrong patch");

        auto shuffled = s;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        c.expect(fusion::sum_fuse(shuffled) == fused, tag + ": sum_fuse depends on member order");

        const double k = scale(rng);
        auto scaled = s;
        for (auto& v : scaled) v.release *= k, v.no_release *= k;
        c.expect(fusion::predict(fusion::sum_fuse(scaled)) == fusion::predict(fused),
                 tag + ": positive scaling changed the fused decision");
        c.expect(fusion::max_rule_patches(scaled) == fusion::ScoreVector{s[best].no_release * k, s[best].release * k},
                 tag + ": positive scaling changed the max-rule choice");
    }

    using fusion::DetectionBox;
    struct Row {
        std::vector<DetectionBox> boxes;
        Label expect;
        const char* what;
    };
    const Row table[] = {
        {{}, Label::NoRelease, "no boxes"},
        {{{0, 0, 10, 10, 0.5}}, Label::NoRelease, "single box at exactly 0.5"},
        {{{0, 0, 10, 10, 0.500001}}, Label::Release, "single box above 0.5"},
        {{{0, 0, 10, 10, 0.2}, {5, 0, 10, 10, 0.49}}, Label::NoRelease, "all boxes below 0.5"},
        {{{0, 0, 10, 10, 0.2}, {5, 0, 10, 10, 0.93}}, Label::Release, "one box above 0.5"},
        {{{0, 0, 10, 10, 1.0}}, Label::Release, "certain box"},
    };
    for (const auto& row : table) {
        c.expect(fusion::detector_decision(row.boxes) == row.expect, std::string("detector truth table: ") + row.what);
    }
}

// 6. Fold plans and metric definitions.
void protocol(Checker& c) {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        const int experiments = 10 + static_cast<int>(rng() % 30);
        std::vector<data::SampleRecord> recs;
        for (int e = 0; e < experiments; ++e) {
            const int n = 1 + static_cast<int>(rng() % 25);
            for (int i = 0; i < n; ++i) {
                data::SampleRecord r;
                r.sample_id = "e" + std::to_string(e) + "_" + std::to_string(i);
                r.experiment_id = "e" + std::to_string(e);
                r.background = "A";
                recs.push_back(r);
            }
        }
        const int k = 1 + static_cast<int>(rng() % 10);
        const auto plan = eval::grouped_kfold(recs, k, rng());
        bool disjoint = true;
        for (int f = 0; f < k; ++f) {
            const auto s = eval::split(plan, recs, f);
            std::set<std::string> train, test;
            for (auto i : s.train) train.insert(recs[i].experiment_id);
            for (auto i : s.test) test.insert(recs[i].experiment_id);
            for (const auto& x : test) disjoint = disjoint && !train.count(x);
            disjoint = disjoint && !s.test.empty();
        }
        c.expect(disjoint, "plan " + std::to_string(trial) + " mixes an experiment across train and test");
        bool checked = true;
        try {
            eval::check_grouping(plan, recs);
        } catch (const ProtocolViolation&) {
            checked = false;
        }
        c.expect(checked, "plan " + std::to_string(trial) + " fails the grouping check");
    }

    const Label R = Label::Release, N = Label::NoRelease;
    const std::vector<Label> labels = {R, R, N, N}, preds = {R, N, N, N};
    const auto m = eval::compute_metrics(labels, preds, std::vector<double>{0.9, 0.4, 0.3, 0.2});
    c.expect(m.counts == eval::Confusion{1, 2, 0, 1}, "hand example: confusion counts");
    c.expect(m.sensitivity == 0.5, "hand example: sensitivity");
    c.expect(m.specificity == 1.0, "hand example: specificity");
    c.expect(m.accuracy == 0.75, "hand example: accuracy");
    c.expect(m.f1 == 2.0 / 3.0, "hand example: F1");

    const std::vector<Label> mixed = {R, N, N, R, N, R};
    c.expect(eval::roc_auc(mixed, std::vector<double>{0.9, 0.1, 0.3, 0.8, 0.2, 0.7}) == 1.0, "perfect ranker AUC != 1");
    c.expect(eval::roc_auc(mixed, std::vector<double>(6, 0.42)) == 0.5, "constant scores AUC != 0.5");
}

int run_tool(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(PHASIC_BIN) + " " + args + " >>" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 7. Desk-scale end-to-end run through the command-line tool.
void end_to_end(Checker& c, const fs::path& dir) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path log = dir / "run.log";
    auto p = [&](const char* rel) { return (dir / rel).string(); };
    const auto t0 = Clock::now();
    const std::vector<std::pair<std::string, std::string>> steps = {
        {"synth", "synth -o " + p("data") + " --experiments 30 --per-exp 10 --seed 7 --scale 5"},
        {"foldplan", "foldplan -d " + p("data") + " -o " + p("plan.csv") + " --k 10 --seed 1"},
        {"derive", "derive -d " + p("data") + " -o " + p("derived")},
        {"score-baseline", "score-baseline -d " + p("data") + " --derived " + p("derived") + " --plan " + p("plan.csv") +
                               " -o " + p("scores")},
        {"fuse", "fuse -e " + p("scores/ensembles.json") + " -n AllMethods -d " + p("data") + " -o " + p("fused.csv")},
        {"eval", "eval -e " + p("scores/ensembles.json") + " -d " + p("data") + " --k 10 --seed 1 -o " + p("report") +
                     " --single-members"},
    };
    for (const auto& [name, args] : steps) {
        const auto ts = Clock::now();
        const int code = run_tool(args, log);
        c.note(name + ": " + fmt(seconds_since(ts), "%.1f") + " s");
        c.expect(code == 0, name + " exited with " + std::to_string(code) + " (see " + log.string() + ")");
        if (code != 0) return;
    }
    const double total = seconds_since(t0);
    c.expect(total < 900.0, "end-to-end run took " + fmt(total, "%.0f") + " s");

    const auto rows = eval::read_report_json(dir / "report" / "report.json");
    const auto all = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.method == "AllMethods"; });
    c.expect(all != rows.end() && all->scores_fused == 63, "AllMethods row with 63 members missing");
    // Single-member rows follow the standard ensembles.
    const std::size_t standard = fusion::standard_ensembles("scores").size();
    std::vector<double> singles;
    for (std::size_t i = standard; i < rows.size(); ++i) {
        if (rows[i].scores_fused == 1) singles.push_back(rows[i].metrics.accuracy);
    }
    c.expect(singles.size() == 63, "expected 63 single-member rows, got " + std::to_string(singles.size()));
    if (all == rows.end() || singles.empty()) return;
    std::sort(singles.begin(), singles.end());
    const double median = singles.size() % 2 ? singles[singles.size() / 2]
                                             : 0.5 * (singles[singles.size() / 2 - 1] + singles[singles.size() / 2]);
    c.expect(all->metrics.accuracy >= median, "AllMethods accuracy " + fmt(all->metrics.accuracy) +
                                                  " below median single-member accuracy " + fmt(median));
    c.expect(all->metrics.counts.total() == 600, "AllMethods did not cover 600 samples");
    c.note("total " + fmt(total, "%.0f") + " s; AllMethods accuracy " + fmt(100 * all->metrics.accuracy, "%.2f") +
           "%, median single member " + fmt(100 * median, "%.2f") + "%");

    std::size_t variants = 0;
    for (const char* bg : {"A", "B", "C"}) {
        for (const auto& e : fs::directory_iterator(dir / "derived" / bg)) variants += e.is_directory();
    }
    c.expect(variants == 60, "derive produced " + std::to_string(variants) + " variants");
}

// 8. Throughput.
void throughput(Checker& c) {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto configs = fusion::standard_ensembles("scores");
    const auto all = *std::find_if(configs.begin(), configs.end(), [](const auto& e) { return e.name == "AllMethods"; });
    std::map<std::string, fusion::ScoreTable> tables;
    for (const auto& m : all.members) {
        const double r = u(rng);
        tables[m.key()]["s0"] = {1.0 - r, r};
    }
    const std::vector<std::string> ids = {"s0"};
    const int reps = 200;
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) {
        if (fusion::run_ensemble(all, ids, tables).size() != 1) c.expect(false, "fusion returned no sample");
    }
    const double per_image = seconds_since(t0) / reps;
    c.expect(per_image < 1e-3, "63-member fusion took " + fmt(per_image * 1e3) + " ms");
    c.note("63-member fusion: " + fmt(per_image * 1e6, "%.1f") + " us/image");

    data::SynthParams sp;
    sp.seed = 17;
    const auto sample = data::synthesize_sample(sp, true);
    const ImageMatrix img = data::false_color(data::background_subtract(sample.matrix, "A")).image;
    std::string timings;
    for (auto m : saliency::kAllMethods) {
        const auto ts = Clock::now();
        const SaliencyMap map = saliency::compute_saliency(m, img);
        const double s = seconds_since(ts);
        c.expect(map.width() == 875 && map.height() == 600, std::string(saliency::method_id(m)) + ": wrong map size");
        c.expect(s < 2.0, std::string(saliency::method_id(m)) + " took " + fmt(s, "%.2f") + " s on 875x600");
        timings += std::string(saliency::method_id(m)) + " " + fmt(s, "%.3f") + " s  ";
    }
    c.note("875x600 saliency: " + timings);
}

// 9. Variant and ensemble bookkeeping.
void counting(Checker& c) {
    const auto ids = fusion::all_method_ids();
    c.expect(ids.size() == 20, "per-background variants: " + std::to_string(ids.size()));
    c.expect(fusion::global_method_ids().size() == 3 && fusion::patch_method_ids().size() == 2 &&
                 fusion::saliency_method_ids().size() == 15,
             "method split is not 3 + 2 + 15");
    c.expect(3 * ids.size() == 60, "variants over three backgrounds != 60");

    const std::vector<std::pair<std::string, std::size_t>> expect = {
        {"A/O", 1},     {"A/Z1", 1},         {"A/Z2", 1},           {"A/Global", 3},
        {"Global", 9},  {"Patch", 6},        {"Detector", 3},       {"Global+Patch", 15},
        {"Global+Patch+Saliency", 60},       {"AllMethods", 63}};
    const auto configs = fusion::standard_ensembles("scores");
    c.expect(configs.size() == expect.size(), "standard ensemble count");
    for (std::size_t i = 0; i < std::min(configs.size(), expect.size()); ++i) {
        c.expect(configs[i].name == expect[i].first && configs[i].members.size() == expect[i].second,
                 configs[i].name + " has " + std::to_string(configs[i].members.size()) + " members");
        configs[i].validate();
    }
    std::size_t cnn_like = 0, detectors = 0;
    for (const auto& m : configs.back().members) (m.kind == fusion::MemberKind::Detector ? detectors : cnn_like) += 1;
    c.expect(cnn_like == 60 && detectors == 3, "AllMethods is not 60 classifiers + 3 detectors");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    bool skip_e2e = false;
    std::string keep;
    int only = 0;
    app.add_flag("--skip-e2e", skip_e2e, "Skip the end-to-end run (criterion 7)");
    app.add_option("--keep", keep, "Run the end-to-end pipeline in this directory and keep it");
    app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const fs::path e2e_dir = keep.empty() ? fs::temp_directory_path() / ("phasic_acceptance_" + std::to_string(::getpid()))
                                          : fs::path(keep);
    const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria = {
        {"algorithm fidelity", algorithm_fidelity},
        {"geometry fidelity", geometry_fidelity},
        {"saliency sanity suite", saliency_suite},
        {"numerics", numerics},
        {"fusion", fusion_rules},
        {"protocol", protocol},
        {"end-to-end desk-scale run", [&](Checker& c) { end_to_end(c, e2e_dir); }},
        {"throughput budget", throughput},
        {"counting checks", counting},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        if (only && only != n) continue;
        const auto& [title, fn] = criteria[i];
        if (n == 7 && skip_e2e) {
            std::cout << "SKIP " << n << " " << title << std::endl;
            continue;
        }
        Checker c;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.passed() ? "PASS " : "FAIL ") << n << " " << title << " (" << c.checks() << " checks)"
                  << std::endl;
        for (const auto& note : c.notes()) std::cout << "     " << note << "\n";
        for (std::size_t k = 0; k < std::min<std::size_t>(c.failures().size(), 10); ++k) {
            std::cout << "     failed: " << c.failures()[k] << "\n";
        }
        if (c.failures().size() > 10) std::cout << "     ... " << c.failures().size() - 10 << " more\n";
        failed += !c.passed();
    }
    if (keep.empty()) fs::remove_all(e2e_dir);
    return failed == 0 ? 0 : 1;
}
