// Per-pixel fire classification over multi-channel scenes: Planck inversion
// to brightness temperature, water/cloud masking, day/night threshold tests.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "firesat/common.hpp"

namespace firesat::firedetect {

// Channel central wavelengths, metres.
inline constexpr double kLambda4um = 4.0e-6;
inline constexpr double kLambda11um = 11.0e-6;
inline constexpr double kLambda12um = 12.0e-6;

// Spectral radiance of a blackbody at temperature T and wavelength lambda,
// in W m^-2 sr^-1 um^-1 (the sensor-facing unit; SI per-metre radiance
// divided by 1e6).
double planck_radiance(double temperature_k, double wavelength_m);

// Invert Planck's law: brightness temperature (K) for a spectral radiance in
// W m^-2 sr^-1 um^-1. Throws NonPositiveRadianceError for L <= 0.
double brightness_temperature(double radiance_per_um, double wavelength_m);

enum class PixelClass : std::uint8_t {
    Water = 0,
    Cloud = 1,
    FireDay = 2,
    FireNight = 3,
    NonFire = 4,
};

const char* pixel_class_name(PixelClass c);

// One pixel's inputs after channel extraction.
struct PixelSample {
    double radiance_4um = 0.0;   // W m^-2 sr^-1 um^-1
    double radiance_11um = 0.0;
    double radiance_12um = 0.0;
    double reflectance_065 = 0.0;
    double reflectance_086 = 0.0;
    double solar_zenith_deg = 0.0;
    bool water = false;
};

// Classification, strict inequalities throughout:
//   water mask first;
//   cloud when [r065+r086 > 1.2] or [T12 < 265] or [r065+r086 > 0.7 and
//   T12 < 285] or [r086 > 0.25 and T12 < 300] — the reflectance clauses are
//   solar and are skipped at night (zenith >= 85 deg);
//   day fire  (zenith < 85):  T4 > 310 and T4-T11 > 10 and r086 < 0.35;
//   night fire (zenith >= 85): T4 > 305 and T4-T11 > 10;
//   otherwise non-fire.
PixelClass classify_pixel(const PixelSample& px);

struct SceneRaster {
    int width = 0;
    int height = 0;
    std::string scene_id;
    // Affine pixel -> (lon, lat):
    //   lon = g[0] + col*g[1] + row*g[2];  lat = g[3] + col*g[4] + row*g[5]
    double geotransform[6] = {0.0, 1.0, 0.0, 0.0, 0.0, 1.0};

    // Row-major planes, all width*height.
    std::vector<float> radiance_4um;
    std::vector<float> radiance_11um;
    std::vector<float> radiance_12um;
    std::vector<float> reflectance_065;
    std::vector<float> reflectance_086;
    std::vector<float> solar_zenith_deg;
    std::vector<float> water_mask;  // nonzero = water

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    PixelSample sample(int row, int col) const;
    void lonlat(int row, int col, double& lon_deg, double& lat_deg) const;

    // Throws MissingChannelError naming the first absent/short plane.
    void validate() const;

    // Container format: "FSCN" magic, LE uint32 header length, JSON header
    // (dimensions, channel list with scale factors, geotransform, scene id),
    // then little-endian float32 planes in header order.
    void save(const std::string& path) const;
    static SceneRaster load(const std::string& path);
};

struct FirePixel {
    int row = 0;
    int col = 0;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    PixelClass cls = PixelClass::NonFire;
};

struct FireReport {
    std::string scene_id;
    long class_counts[5] = {0, 0, 0, 0, 0};  // indexed by PixelClass
    std::vector<FirePixel> fire_pixels;      // FireDay + FireNight, row-major order

    long fires() const { return class_counts[2] + class_counts[3]; }
    std::string to_json() const;
    std::string to_csv() const;  // lat,lon,class
};

FireReport classify_scene(const SceneRaster& scene);

// Synthetic scene support: specify target brightness temperatures and
// reflectances per pixel; radiances are produced with the forward Planck
// function so that classification recovers the requested classes exactly.
struct PixelSpec {
    PixelClass want = PixelClass::NonFire;
    double t4_k = 290.0;
    double t11_k = 285.0;
    double t12_k = 285.0;
    double reflectance_065 = 0.1;
    double reflectance_086 = 0.1;
    double solar_zenith_deg = 40.0;
    bool water = false;
};

struct SceneSpec {
    int width = 0;
    int height = 0;
    std::string scene_id = "synthetic";
    double geotransform[6] = {140.0, 0.01, 0.0, -30.0, 0.0, -0.01};
    std::vector<PixelSpec> pixels;  // row-major, width*height entries
};

// Throws InfeasibleSpecError when a pixel's parameters contradict its
// requested class (verified by classifying the generated pixel).
SceneRaster generate_synthetic_scene(const SceneSpec& spec);

}  // namespace firesat::firedetect
