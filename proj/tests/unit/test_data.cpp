#include <doctest.h>

#include "oracles.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/io.hpp"
#include "phasic/data/baseline.hpp"
#include "phasic/data/fscv.hpp"
#include "phasic/data/manifest.hpp"
#include "phasic/data/synth.hpp"
#include "phasic/region/zones.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace phasic;
using namespace phasic::data;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("phasic_data_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
}

const char* kHeader = "sample_id,experiment_id,background,label,image_path,peak_x,peak_y,interval_x0,interval_x1\n";

FscvMatrix random_fscv(int w, int h, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    FscvMatrix m{Matrix(w, h)};
    for (double& v : m.current.data()) v = n(rng);
    return m;
}

}  // namespace

TEST_CASE("load_manifest") {
    TempDir tmp;
    write(tmp.path / "img" / "a.png", "x");
    write(tmp.path / "img" / "b.png", "x");

    SUBCASE("valid rows") {
        write(tmp.path / "m.csv", std::string(kHeader) +
                                      "s1,exp1,A,release,img/a.png,100,400,80,130\n"
                                      "s2,exp1,A,no-release,img/b.png,,,,\n");
        const Manifest m = load_manifest(tmp.path / "m.csv");
        REQUIRE(m.records.size() == 2);
        CHECK(m.records[0].peak == PeakPosition{100, 400});
        CHECK(m.records[0].interval == ReleaseInterval{80, 130});
        CHECK(!m.records[1].peak);
        CHECK(m.records[1].image_path == tmp.path / "img" / "b.png");
        const auto s = m.summary();
        CHECK(s.release == 1);
        CHECK(s.no_release == 1);
        CHECK(s.per_experiment.at("exp1") == 2);

        write_manifest(tmp.path / "copy.csv", m.records);
        CHECK(load_manifest(tmp.path / "copy.csv").records == m.records);
    }

    SUBCASE("empty manifest warns") {
        write(tmp.path / "m.csv", kHeader);
        const Manifest m = load_manifest(tmp.path / "m.csv");
        CHECK(m.records.empty());
        CHECK(m.warnings.size() == 1);
    }

    auto line_of_error = [&](const std::string& body) {
        write(tmp.path / "m.csv", std::string(kHeader) + body);
        try {
            load_manifest(tmp.path / "m.csv");
        } catch (const IngestionError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of_error("s1,exp1,A,release,img/a.png,1,1,0,2\ns1,exp1,A,no-release,img/b.png,,,,\n") == 3);
    CHECK(line_of_error("s1,exp1,A,release,img/a.png,,,,\n") == 2);
    CHECK(line_of_error("s1,exp1,A,no-release,img/a.png,1,2,,\n") == 2);
    CHECK(line_of_error("s1,exp1,D,no-release,img/a.png,,,,\n") == 2);
    CHECK(line_of_error("s1,exp1,A,maybe,img/a.png,,,,\n") == 2);
    CHECK(line_of_error("s1,exp1,A,no-release,img/missing.png,,,,\n") == 2);
    CHECK(line_of_error("s1,exp1,A,release,img/a.png,x,1,0,2\n") == 2);
    CHECK(line_of_error("s1,exp1,A,no-release\n") == 2);
}

TEST_CASE("background_subtract") {
    std::mt19937_64 rng(1);
    CHECK(anchor_column(0.5, 875) == 22);
    CHECK(anchor_column(10.0, 875) == 437);
    CHECK(anchor_column(19.5, 875) == 852);
    CHECK_THROWS_AS(anchor_column(21.0, 875), InvalidArgument);

    const FscvMatrix m = random_fscv(8, 8, rng);
    for (const char* bg : {"A", "B", "C"}) {
        const FscvMatrix s = background_subtract(m, bg);
        const int a = anchor_column(background_anchor_seconds(bg), 8);
        for (int y = 0; y < 8; ++y) {
            CHECK(s.current.at(a, y) == 0.0);
            for (int x = 0; x < 8; ++x) CHECK(s.current.at(x, y) == m.current.at(x, y) - m.current.at(a, y));
        }
        // Re-subtracting the zeroed anchor changes nothing.
        CHECK(background_subtract(s, bg).current == s.current);
    }
    CHECK(anchor_column(10.0, 8) == 4);
    const FscvMatrix flat{Matrix(6, 4, 2.5)};
    CHECK(background_subtract(flat, "C").current == Matrix(6, 4, 0.0));
}

TEST_CASE("false_color") {
    std::mt19937_64 rng(2);
    const FscvMatrix m = random_fscv(9, 7, rng);
    const Palette pal = default_palette();
    const FalseColorImage fc = false_color(m, pal);
    CHECK(!fc.warning);
    int lo = 0, hi = 0;
    for (int i = 0; i < 63; ++i) {
        if (m.current.data()[i] < m.current.data()[lo]) lo = i;
        if (m.current.data()[i] > m.current.data()[hi]) hi = i;
    }
    for (int c = 0; c < 3; ++c) {
        CHECK(fc.image.at(lo % 9, lo / 9, c) == pal.stops.front().rgb[c]);
        CHECK(fc.image.at(hi % 9, hi / 9, c) == pal.stops.back().rgb[c]);
    }

    const Palette two{{{0.0, {0.2, 0.4, 1.0}}, {1.0, {0.6, 0.0, 0.0}}}};
    const FscvMatrix three{Matrix(3, 1, std::vector<double>{0.0, 5.0, 10.0})};
    const ImageMatrix img = false_color(three, two).image;
    CHECK(img.at(1, 0, 0) == doctest::Approx(0.4));
    CHECK(img.at(1, 0, 1) == doctest::Approx(0.2));
    CHECK(img.at(1, 0, 2) == doctest::Approx(0.5));

    const FalseColorImage flat = false_color(FscvMatrix{Matrix(4, 4, 1.0)}, two);
    CHECK(flat.warning);
    CHECK(flat.image.at(2, 2, 0) == doctest::Approx(0.4));

    CHECK_THROWS_AS(false_color(m, Palette{{{0.0, {0, 0, 0}}}}), InvalidArgument);
    CHECK_THROWS_AS(false_color(m, Palette{{{0.0, {0, 0, 0}}, {0.0, {1, 1, 1}}, {1.0, {1, 1, 1}}}}), InvalidArgument);
}

TEST_CASE("synthesize_sample") {
    const SynthParams full;
    const SynthParams small = full.scaled(5);
    CHECK(small.width == 175);
    CHECK(small.height == 120);
    CHECK(small.geometry.common_begin == 64);

    for (const SynthParams* base : {&small, &full}) {
        for (std::uint64_t seed = 0; seed < (base == &small ? 40u : 4u); ++seed) {
            SynthParams p = *base;
            p.seed = seed;
            p.experiment_seed = seed / 4;
            const SynthSample none = synthesize_sample(p, false);
            CHECK(!none.peak);
            CHECK(!none.interval);

            const SynthSample rel = synthesize_sample(p, true);
            REQUIRE(rel.peak);
            REQUIRE(rel.interval);
            const auto& g = p.geometry;
            double inside = -1e300, outside = -1e300;
            for (int y = 0; y < p.height; ++y) {
                for (int x = 0; x < p.width; ++x) {
                    double& slot = (y >= g.common_begin && y < g.common_end) ? inside : outside;
                    slot = std::max(slot, rel.matrix.current.at(x, y));
                }
            }
            CHECK(inside >= outside);
            CHECK(rel.peak->y >= g.common_begin);
            CHECK(rel.peak->y < g.common_end);
            CHECK(rel.interval->x0 <= rel.peak->x);
            CHECK(rel.peak->x <= rel.interval->x1);
            CHECK(rel.interval->x0 >= 0);
            CHECK(rel.interval->x1 < p.width);
        }
    }

    SynthParams p = small;
    p.seed = 99;
    CHECK(synthesize_sample(p, true).matrix.current == synthesize_sample(p, true).matrix.current);
    p.blob_center = PeakPosition{80, 30};
    CHECK_THROWS_AS(synthesize_sample(p, true), InvalidArgument);
    p.blob_center = PeakPosition{80, 90};
    CHECK(synthesize_sample(p, true).peak == PeakPosition{80, 90});
    SynthParams weak = full;
    weak.amplitude_min = 0.5;
    CHECK_THROWS_AS(synthesize_sample(weak, true), InvalidArgument);
}

TEST_CASE("generate_dataset") {
    TempDir tmp;
    DatasetSpec spec;
    spec.experiments = 3;
    spec.per_experiment = 2;
    spec.seed = 7;
    spec.scale = 5;
    const DatasetSummary s = generate_dataset(tmp.path / "a", spec);
    CHECK(s.samples == 12);
    CHECK(s.images == 36);
    REQUIRE(s.manifests.size() == 3);
    for (const auto& path : s.manifests) {
        const Manifest m = load_manifest(path);
        CHECK(m.records.size() == 12);
        CHECK(m.summary().release == 6);
        CHECK(m.summary().per_experiment.size() == 3);
        const ImageMatrix img = read_png(m.records.front().image_path);
        CHECK(img.width() == 175);
        CHECK(img.height() == 120);
    }
    const region::Geometry g = read_dataset_geometry(tmp.path / "a");
    CHECK(g.common_begin == 64);
    CHECK(g.stride == 27);

    spec.workers = 3;
    generate_dataset(tmp.path / "b", spec);
    for (const char* f : {"manifest_B.csv", "images/C/exp02_r001.png", "synth.json"}) {
        std::ifstream a(tmp.path / "a" / f, std::ios::binary), b(tmp.path / "b" / f, std::ios::binary);
        const std::string ta((std::istreambuf_iterator<char>(a)), {}), tb((std::istreambuf_iterator<char>(b)), {});
        CHECK(!ta.empty());
        CHECK(ta.size() == tb.size());
        // Manifests embed their own directory only through relative paths.
        CHECK(ta == tb);
    }

    spec.per_experiment = 0;
    CHECK_THROWS_AS(generate_dataset(tmp.path / "c", spec), InvalidArgument);
}

TEST_CASE("baseline scorer") {
    // Two separable clusters in 2-D.
    std::vector<LabeledFeatures> train;
    for (int i = 0; i < 10; ++i) {
        train.push_back({{1.0 + 0.1 * i, 1.0 - 0.05 * i}, Label::NoRelease});
        train.push_back({{4.0 + 0.1 * i, 5.0 - 0.05 * i}, Label::Release});
    }
    const BaselineScorer model = BaselineScorer::train(train);
    // Decision boundary evaluated directly: the point is on the release side
    // of the perpendicular bisector of the class means.
    const std::vector<double> deep = {4.5, 4.75};
    const double mx = (1.45 + 4.45) / 2, my = (0.775 + 4.775) / 2;
    CHECK((deep[0] - mx) * (4.45 - 1.45) + (deep[1] - my) * (4.775 - 0.775) > 0);
    const fusion::ScoreVector s = model.score(deep);
    CHECK(s.release > 0.5);
    CHECK(model.score(std::vector<double>{1.2, 0.9}).release < 0.5);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 8);
    for (int i = 0; i < 200; ++i) {
        const auto v = model.score(std::vector<double>{u(rng), u(rng)});
        CHECK(std::abs(v.release + v.no_release - 1.0) < 1e-6);
    }

    const std::vector<LabeledFeatures> same = {{{0.3, 0.3}, Label::Release}, {{0.3, 0.3}, Label::NoRelease}};
    const auto flat = baseline_score(same, std::vector<FeatureVector>{{0.3, 0.3}, {9, 9}});
    CHECK(flat[0] == fusion::ScoreVector{0.5, 0.5});
    CHECK(flat[1] == fusion::ScoreVector{0.5, 0.5});

    const std::vector<LabeledFeatures> one_class = {{{0.1}, Label::Release}, {{0.2}, Label::Release}};
    CHECK_THROWS_AS(BaselineScorer::train(one_class), InvalidArgument);
    CHECK_THROWS_AS(BaselineScorer::train({}), InvalidArgument);

    CHECK(image_features(ImageMatrix(175, 120, 3, 0.5)).size() == 1024);
}

TEST_CASE("baseline detector") {
    SynthParams p = SynthParams{}.scaled(5);
    std::vector<BaselineDetector::Example> train;
    for (std::uint64_t s = 0; s < 12; ++s) {
        p.seed = s;
        const SynthSample x = synthesize_sample(p, true);
        const ImageMatrix img = false_color(background_subtract(x.matrix, "A")).image;
        train.push_back({region::zone_common(img, p.geometry), x.interval->x1 - x.interval->x0});
    }
    const BaselineDetector det = BaselineDetector::train(train);
    int hits = 0;
    for (std::uint64_t s = 100; s < 110; ++s) {
        p.seed = s;
        const SynthSample x = synthesize_sample(p, true);
        const ImageMatrix zone = region::zone_common(false_color(background_subtract(x.matrix, "A")).image, p.geometry);
        const auto boxes = det.detect(zone);
        for (const auto& b : boxes) {
            b.validate();
            CHECK(b.x >= 0);
            CHECK(b.x + b.w <= zone.width() + 1e-9);
        }
        hits += fusion::detector_decision(boxes) == Label::Release;
    }
    CHECK(hits >= 6);
    CHECK_THROWS_AS(BaselineDetector::train({}), InvalidArgument);
}
