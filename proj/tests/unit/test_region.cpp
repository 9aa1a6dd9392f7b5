#include <doctest.h>

#include "oracles.hpp"

#include "phasic/core/error.hpp"
#include "phasic/region/patches.hpp"
#include "phasic/region/zones.hpp"

#include <random>

using namespace phasic;
using namespace phasic::region;

namespace {

// Row-index image: every pixel of row y holds y / (h - 1) so copies can be traced.
ImageMatrix row_ramp(int w, int h) {
    ImageMatrix img(w, h, 3);
    for (int c = 0; c < 3; ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) img.at(x, y, c) = static_cast<double>(y) / (h - 1);
        }
    }
    return img;
}

ImageMatrix copy_rows(const ImageMatrix& img, int a, int b) {
    ImageMatrix out(img.width(), b - a, img.channels());
    for (int c = 0; c < img.channels(); ++c)
        for (int y = a; y < b; ++y)
            for (int x = 0; x < img.width(); ++x) out.at(x, y - a, c) = img.at(x, y, c);
    return out;
}

}  // namespace

TEST_CASE("zone_common") {
    std::mt19937_64 rng(1);
    const ImageMatrix img = oracle::random_image(875, 600, 3, rng);
    const ImageMatrix z = zone_common(img);
    CHECK(z.width() == 875);
    CHECK(z.height() == 200);
    CHECK(z == copy_rows(img, 320, 520));

    const ImageMatrix ramp = row_ramp(875, 600);
    CHECK(zone_common(ramp).at(0, 0) == ramp.at(0, 320));

    CHECK_THROWS_AS(zone_common(ImageMatrix(875, 519, 1)), InvalidArgument);
    CHECK_NOTHROW(zone_common(ImageMatrix(875, 520, 1)));
}

TEST_CASE("zone_concat") {
    std::mt19937_64 rng(2);
    const ImageMatrix img = oracle::random_image(875, 600, 1, rng);
    const ImageMatrix z = zone_concat(img);
    CHECK(z.width() == 875);
    CHECK(z.height() == 290);
    for (int y = 0; y < 90; ++y)
        for (int x = 0; x < 875; ++x) REQUIRE(z.at(x, y) == img.at(x, y));
    for (int x = 0; x < 875; ++x) CHECK(z.at(x, 90) == img.at(x, 320));
    for (int y = 90; y < 290; ++y)
        for (int x = 0; x < 875; ++x) REQUIRE(z.at(x, y) == img.at(x, y + 230));
    CHECK_THROWS_AS(zone_concat(ImageMatrix(875, 400, 1)), InvalidArgument);
}

TEST_CASE("global methods") {
    const ImageMatrix img = row_ramp(875, 600);
    CHECK(apply_global(GlobalMethod::Original, img) == img);
    CHECK(apply_global(parse_global_method("Z1"), img).height() == 200);
    CHECK(apply_global(parse_global_method("Z2"), img).height() == 290);
    CHECK(global_method_id(GlobalMethod::Original) == "O");
    CHECK_THROWS_AS(parse_global_method("Z3"), InvalidArgument);
}

TEST_CASE("geometry scaling") {
    const Geometry g = Geometry{}.scaled(5);
    CHECK(g.common_begin == 64);
    CHECK(g.common_end == 104);
    CHECK(g.top_rows == 18);
    CHECK(g.window == 40);
    CHECK(g.stride == 27);
    CHECK(g.common_height() == 40);
    CHECK(g.concat_height() == 58);
    CHECK_THROWS_AS(Geometry{}.scaled(3), InvalidArgument);
    CHECK(zone_concat(ImageMatrix(175, 120, 3), g).height() == 58);
}

TEST_CASE("manual_patch") {
    std::mt19937_64 rng(3);
    const ImageMatrix zone = oracle::random_image(875, 200, 3, rng);
    const Patch centered = manual_patch(zone, 437, 200);
    CHECK(centered.x_offset == 337);
    CHECK(centered.image.width() == 200);
    CHECK(centered.image.height() == 200);
    CHECK(centered.image.at(0, 0, 1) == zone.at(337, 0, 1));
    CHECK(centered.image.at(199, 199, 2) == zone.at(536, 199, 2));
    CHECK(manual_patch(zone, 10, 200).x_offset == 0);
    CHECK(manual_patch(zone, 870, 200).x_offset == 675);

    CHECK_THROWS_AS(manual_patch(ImageMatrix(150, 200, 1), 70, 200), InvalidArgument);
    CHECK_THROWS_AS(manual_patch(zone, 437, 290), InvalidArgument);
    CHECK_THROWS_AS(manual_patch(zone, 900, 200), InvalidArgument);
}

TEST_CASE("auto_patches") {
    std::mt19937_64 rng(4);
    const ImageMatrix common = oracle::random_image(875, 200, 3, rng);
    const PatchSet set = auto_patches(common, 200, 135, "s1");
    REQUIRE(set.patches.size() == 6);
    CHECK(set.mode == PatchMode::Automatic);
    CHECK(set.source_id == "s1");
    const int expected[] = {0, 135, 270, 405, 540, 675};
    for (int i = 0; i < 6; ++i) {
        const Patch& p = set.patches[i];
        CHECK(p.x_offset == expected[i]);
        CHECK(p.image.width() == 200);
        CHECK(p.image.height() == 200);
        for (int y = 0; y < 200; y += 13)
            for (int x = 0; x < 200; x += 7) REQUIRE(p.image.at(x, y, 0) == common.at(x + p.x_offset, y, 0));
    }
    CHECK(set.patches.back().x_offset + 200 == 875);

    // Every column is covered by at least one window.
    std::vector<int> cover(875, 0);
    for (const auto& p : set.patches)
        for (int x = 0; x < 200; ++x) ++cover[p.x_offset + x];
    for (int c : cover) CHECK(c >= 1);

    const PatchSet tall = auto_patches(ImageMatrix(875, 290, 3), Geometry{});
    CHECK(tall.patches.size() == 6);
    CHECK(tall.patches[0].image.width() == 200);
    CHECK(tall.patches[0].image.height() == 290);

    try {
        auto_patches(ImageMatrix(880, 200, 1), 200, 135);
        FAIL("expected InvalidArgument");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("5 pixel(s) left over") != std::string::npos);
    }
}

TEST_CASE("pad_to_square") {
    std::mt19937_64 rng(5);
    const ImageMatrix p = oracle::random_image(200, 290, 3, rng);
    const ImageMatrix sq = pad_to_square(p, 290);
    CHECK(sq.width() == 290);
    CHECK(sq.height() == 290);
    double pad_sum = 0;
    for (int c = 0; c < 3; ++c)
        for (int y = 0; y < 290; ++y) {
            for (int x = 200; x < 290; ++x) pad_sum += sq.at(x, y, c);
            for (int x = 0; x < 200; ++x) REQUIRE(sq.at(x, y, c) == p.at(x, y, c));
        }
    CHECK(pad_sum == 0.0);
    const ImageMatrix already = oracle::random_image(40, 40, 1, rng);
    CHECK(pad_to_square(already, 40) == already);
    CHECK_THROWS_AS(pad_to_square(oracle::random_image(300, 290, 1, rng), 290), InvalidArgument);
}

TEST_CASE("patch methods") {
    const ImageMatrix img = row_ramp(875, 600);
    CHECK(patch_method_id(PatchMethod::Common) == "P200");
    CHECK(parse_patch_method("P290") == PatchMethod::Concatenated);
    CHECK_THROWS_AS(parse_patch_method("P100"), InvalidArgument);

    const Patch train = training_patch(PatchMethod::Concatenated, img, 500);
    CHECK(train.image.width() == 290);
    CHECK(train.image.height() == 290);
    CHECK(train.x_offset == 355);

    const PatchSet test = test_patches(PatchMethod::Concatenated, img);
    CHECK(test.patches.size() == 6);
    for (const auto& p : test.patches) {
        CHECK(p.image.width() == 290);
        CHECK(p.image.height() == 290);
        CHECK(p.image.at(250, 100) == 0.0);
    }
    const PatchSet common = test_patches(PatchMethod::Common, img);
    CHECK(common.patches.front().image.width() == 200);
}
