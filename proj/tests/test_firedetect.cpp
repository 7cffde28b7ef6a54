#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "firesat/firedetect.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

using namespace firesat;
using namespace firesat::firedetect;

namespace {

// Truth-table oracle: direct transliteration of the classifier rules as
// nested conditionals, kept structurally independent of classify_pixel.
PixelClass oracle_classify(double t4, double t11, double t12, double r065, double r086,
                           double zenith, bool water) {
    if (water) return PixelClass::Water;
    const bool day = zenith < 85.0;
    if (day) {
        if (r065 + r086 > 1.2) return PixelClass::Cloud;
        if (t12 < 265.0) return PixelClass::Cloud;
        if (r065 + r086 > 0.7 && t12 < 285.0) return PixelClass::Cloud;
        if (r086 > 0.25 && t12 < 300.0) return PixelClass::Cloud;
        if (t4 > 310.0 && t4 - t11 > 10.0 && r086 < 0.35) return PixelClass::FireDay;
        return PixelClass::NonFire;
    }
    if (t12 < 265.0) return PixelClass::Cloud;
    if (t4 > 305.0 && t4 - t11 > 10.0) return PixelClass::FireNight;
    return PixelClass::NonFire;
}

PixelSample sample_from_temps(double t4, double t11, double t12, double r065, double r086,
                              double zenith, bool water) {
    PixelSample px;
    px.radiance_4um = planck_radiance(t4, kLambda4um);
    px.radiance_11um = planck_radiance(t11, kLambda11um);
    px.radiance_12um = planck_radiance(t12, kLambda12um);
    px.reflectance_065 = r065;
    px.reflectance_086 = r086;
    px.solar_zenith_deg = zenith;
    px.water = water;
    return px;
}

}  // namespace

TEST_CASE("Planck inversion") {
    SUBCASE("round trip at the channel wavelengths") {
        for (double t : {250.0, 300.0, 310.0, 400.0, 650.0, 1000.0}) {
            for (double lam : {kLambda4um, kLambda11um, kLambda12um}) {
                const double L = planck_radiance(t, lam);
                CHECK(brightness_temperature(L, lam) == doctest::Approx(t).epsilon(1e-9));
            }
        }
    }

    SUBCASE("bisection oracle value at 11 um") {
        CHECK(brightness_temperature(1.0, kLambda11um) ==
              doctest::Approx(197.957130577283).epsilon(1e-10));
    }

    SUBCASE("known forward values") {
        CHECK(planck_radiance(300.0, kLambda4um) ==
              doctest::Approx(7.219764225707684e-01).epsilon(1e-12));
        CHECK(planck_radiance(310.0, kLambda11um) ==
              doctest::Approx(1.104044225767762e+01).epsilon(1e-12));
    }

    SUBCASE("non-positive radiance rejected") {
        CHECK_THROWS_AS(brightness_temperature(0.0, kLambda4um), NonPositiveRadianceError);
        CHECK_THROWS_AS(brightness_temperature(-1.0, kLambda4um), NonPositiveRadianceError);
    }
}

TEST_CASE("pixel classification examples") {
    SUBCASE("water mask precedence") {
        auto px = sample_from_temps(400.0, 300.0, 290.0, 0.1, 0.1, 40.0, true);
        CHECK(classify_pixel(px) == PixelClass::Water);
    }

    SUBCASE("daytime fire") {
        auto px = sample_from_temps(320.0, 300.0, 290.0, 0.1, 0.1, 40.0, false);
        CHECK(classify_pixel(px) == PixelClass::FireDay);
    }

    SUBCASE("cloud by combined reflectance") {
        auto px = sample_from_temps(320.0, 300.0, 290.0, 0.7, 0.6, 40.0, false);
        CHECK(classify_pixel(px) == PixelClass::Cloud);
    }

    SUBCASE("night fire") {
        auto px = sample_from_temps(307.0, 295.0, 290.0, 0.0, 0.0, 100.0, false);
        CHECK(classify_pixel(px) == PixelClass::FireNight);
    }

    SUBCASE("night, temperature difference too small") {
        auto px = sample_from_temps(307.0, 299.0, 290.0, 0.0, 0.0, 100.0, false);
        CHECK(classify_pixel(px) == PixelClass::NonFire);
    }

    SUBCASE("day-rule boundary is strict") {
        auto px = sample_from_temps(310.0, 290.0, 301.0, 0.1, 0.1, 40.0, false);
        CHECK(classify_pixel(px) == PixelClass::NonFire);  // T4 = 310 is not > 310
    }

    SUBCASE("reflectance cloud clauses are ignored at night") {
        // Bright reflectances with a cold-ish T12: cloud by day, clear at night.
        auto day = sample_from_temps(300.0, 295.0, 290.0, 0.8, 0.5, 40.0, false);
        CHECK(classify_pixel(day) == PixelClass::Cloud);
        auto night = sample_from_temps(300.0, 295.0, 290.0, 0.8, 0.5, 100.0, false);
        CHECK(classify_pixel(night) == PixelClass::NonFire);
    }
}

TEST_CASE("classifier agrees with the truth-table oracle on random pixels") {
    Rng rng(2024);
    int seen[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k < 5000; ++k) {
        const double t4 = rng.uniform(240.0, 420.0);
        const double t11 = rng.uniform(240.0, 340.0);
        const double t12 = rng.uniform(240.0, 340.0);
        const double r065 = rng.uniform(0.0, 1.0);
        const double r086 = rng.uniform(0.0, 1.0);
        const double zenith = rng.uniform(0.0, 180.0);
        const bool water = rng.bernoulli(0.1);

        const auto expected = oracle_classify(t4, t11, t12, r065, r086, zenith, water);
        const auto got =
            classify_pixel(sample_from_temps(t4, t11, t12, r065, r086, zenith, water));
        REQUIRE(got == expected);
        seen[static_cast<int>(got)] += 1;
    }
    // the sampling ranges exercise every class
    for (int c = 0; c < 5; ++c) CHECK(seen[c] > 0);
}

TEST_CASE("raising T4 never turns a fire pixel into non-fire") {
    Rng rng(7);
    for (int k = 0; k < 500; ++k) {
        const double t11 = rng.uniform(260.0, 320.0);
        const double t12 = rng.uniform(301.0, 340.0);  // clear of cloud clauses
        const double r086 = rng.uniform(0.0, 0.34);
        const double zenith = rng.uniform(0.0, 180.0);
        double t4 = rng.uniform(280.0, 400.0);
        auto base = classify_pixel(
            sample_from_temps(t4, t11, t12, 0.1, r086, zenith, false));
        if (base != PixelClass::FireDay && base != PixelClass::FireNight) continue;
        for (double dt : {1.0, 10.0, 50.0}) {
            auto hotter = classify_pixel(
                sample_from_temps(t4 + dt, t11, t12, 0.1, r086, zenith, false));
            CHECK(hotter == base);
        }
    }
}

TEST_CASE("scene classification") {
    SUBCASE("all-water scene has no fires") {
        SceneSpec spec;
        spec.width = 4;
        spec.height = 4;
        spec.pixels.assign(16, PixelSpec{PixelClass::Water, 300, 290, 290, 0.1, 0.1, 40, true});
        const auto scene = generate_synthetic_scene(spec);
        const auto rep = classify_scene(scene);
        CHECK(rep.fires() == 0);
        CHECK(rep.class_counts[0] == 16);
    }

    SUBCASE("checkerboard of day fires") {
        SceneSpec spec;
        spec.width = 8;
        spec.height = 8;
        for (int i = 0; i < 64; ++i) {
            const bool fire = ((i / 8) + (i % 8)) % 2 == 0;
            PixelSpec ps;
            ps.want = fire ? PixelClass::FireDay : PixelClass::NonFire;
            ps.t4_k = fire ? 330.0 : 295.0;
            ps.t11_k = fire ? 300.0 : 293.0;
            ps.t12_k = 305.0;
            spec.pixels.push_back(ps);
        }
        const auto scene = generate_synthetic_scene(spec);
        const auto rep = classify_scene(scene);
        CHECK(rep.class_counts[2] == 32);
        CHECK(rep.class_counts[4] == 32);
        // permuting pixels permutes the report identically: spot-check order
        REQUIRE(rep.fire_pixels.size() == 32);
        CHECK(rep.fire_pixels[0].row == 0);
        CHECK(rep.fire_pixels[0].col == 0);
        CHECK(rep.fire_pixels[1].col == 2);
    }

    SUBCASE("cloud via the cold 12 um clause") {
        SceneSpec spec;
        spec.width = 1;
        spec.height = 1;
        PixelSpec ps;
        ps.want = PixelClass::Cloud;
        ps.t4_k = 300.0;
        ps.t11_k = 290.0;
        ps.t12_k = 260.0;  // < 265 K
        spec.pixels.push_back(ps);
        const auto rep = classify_scene(generate_synthetic_scene(spec));
        CHECK(rep.class_counts[1] == 1);
    }

    SUBCASE("planted fires are recovered with geolocation") {
        SceneSpec spec;
        spec.width = 64;
        spec.height = 64;
        spec.geotransform[0] = 145.0;  // lon origin
        spec.geotransform[1] = 0.01;
        spec.geotransform[3] = -33.0;  // lat origin
        spec.geotransform[5] = -0.01;
        PixelSpec bg;
        bg.want = PixelClass::NonFire;
        spec.pixels.assign(64 * 64, bg);
        Rng rng(5);
        std::vector<std::pair<int, int>> planted;
        while (planted.size() < 10) {
            const int row = static_cast<int>(rng.uniform_int(0, 63));
            const int col = static_cast<int>(rng.uniform_int(0, 63));
            if (std::find(planted.begin(), planted.end(), std::make_pair(row, col)) !=
                planted.end()) {
                continue;
            }
            planted.emplace_back(row, col);
            PixelSpec fire;
            fire.want = PixelClass::FireDay;
            fire.t4_k = 340.0;
            fire.t11_k = 305.0;
            fire.t12_k = 304.0;
            spec.pixels[static_cast<std::size_t>(row) * 64 + col] = fire;
        }
        const auto rep = classify_scene(generate_synthetic_scene(spec));
        REQUIRE(rep.fires() == 10);
        for (const auto& fp : rep.fire_pixels) {
            CHECK(std::find(planted.begin(), planted.end(),
                            std::make_pair(fp.row, fp.col)) != planted.end());
            CHECK(fp.lon_deg == doctest::Approx(145.0 + fp.col * 0.01));
            CHECK(fp.lat_deg == doctest::Approx(-33.0 - fp.row * 0.01));
        }
    }
}

TEST_CASE("infeasible synthetic specs are rejected") {
    SceneSpec spec;
    spec.width = 1;
    spec.height = 1;
    PixelSpec ps;
    ps.want = PixelClass::FireDay;
    ps.t4_k = 290.0;  // cannot satisfy T4 > 310
    spec.pixels.push_back(ps);
    CHECK_THROWS_AS(generate_synthetic_scene(spec), InfeasibleSpecError);
}

TEST_CASE("scene raster validation") {
    SceneRaster scene;
    scene.width = 2;
    scene.height = 2;
    scene.radiance_4um.assign(4, 1.0f);
    scene.radiance_11um.assign(4, 1.0f);
    // radiance_12um left empty
    scene.reflectance_065.assign(4, 0.1f);
    scene.reflectance_086.assign(4, 0.1f);
    scene.solar_zenith_deg.assign(4, 40.0f);
    scene.water_mask.assign(4, 0.0f);
    CHECK_THROWS_WITH_AS(classify_scene(scene),
                         "scene is missing channel plane 'radiance_12um'",
                         MissingChannelError);
}

TEST_CASE("scene file round trip") {
    SceneSpec spec;
    spec.width = 6;
    spec.height = 5;
    spec.scene_id = "roundtrip";
    PixelSpec bg;
    spec.pixels.assign(30, bg);
    PixelSpec fire;
    fire.want = PixelClass::FireNight;
    fire.t4_k = 320.0;
    fire.t11_k = 300.0;
    fire.t12_k = 299.0;
    fire.solar_zenith_deg = 120.0;
    spec.pixels[7] = fire;
    const auto scene = generate_synthetic_scene(spec);

    const auto path = std::filesystem::temp_directory_path() / "firesat_scene_test.fsc";
    scene.save(path.string());
    const auto loaded = SceneRaster::load(path.string());
    CHECK(loaded.width == scene.width);
    CHECK(loaded.height == scene.height);
    CHECK(loaded.scene_id == "roundtrip");
    const auto rep = classify_scene(loaded);
    CHECK(rep.class_counts[3] == 1);
    CHECK(rep.fire_pixels[0].row == 1);
    CHECK(rep.fire_pixels[0].col == 1);
    std::filesystem::remove(path);

    SUBCASE("bad magic is a format error") {
        const auto bad = std::filesystem::temp_directory_path() / "firesat_bad.fsc";
        std::FILE* f = std::fopen(bad.string().c_str(), "wb");
        std::fputs("NOPE....", f);
        std::fclose(f);
        CHECK_THROWS_AS(SceneRaster::load(bad.string()), FormatError);
        std::filesystem::remove(bad);
    }
}
