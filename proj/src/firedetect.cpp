#include "firesat/firedetect.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace firesat::firedetect {

using nlohmann::json;

namespace {

// 2018 CODATA exact values.
constexpr double kPlanckH = 6.62607015e-34;   // J s
constexpr double kSpeedC = 2.99792458e8;      // m/s
constexpr double kBoltzmann = 1.380649e-23;   // J/K

constexpr double kC1 = 2.0 * kPlanckH * kSpeedC * kSpeedC;  // W m^2 sr^-1
constexpr double kC2 = kPlanckH * kSpeedC / kBoltzmann;     // m K

constexpr double kPerMicron = 1.0e6;  // W m^-3 -> W m^-2 um^-1 divisor

}  // namespace

double planck_radiance(double temperature_k, double wavelength_m) {
    if (!(temperature_k > 0.0) || !(wavelength_m > 0.0)) {
        throw BoundViolationError("planck_radiance requires positive T and wavelength");
    }
    const double l5 = std::pow(wavelength_m, 5);
    const double si = kC1 / (l5 * std::expm1(kC2 / (wavelength_m * temperature_k)));
    return si / kPerMicron;
}

double brightness_temperature(double radiance_per_um, double wavelength_m) {
    if (!(radiance_per_um > 0.0)) {
        std::ostringstream os;
        os << "brightness temperature needs a positive radiance, got " << radiance_per_um;
        throw NonPositiveRadianceError(os.str());
    }
    if (!(wavelength_m > 0.0)) {
        throw BoundViolationError("brightness_temperature requires a positive wavelength");
    }
    const double l_si = radiance_per_um * kPerMicron;
    const double l5 = std::pow(wavelength_m, 5);
    return kC2 / (wavelength_m * std::log1p(kC1 / (l5 * l_si)));
}

const char* pixel_class_name(PixelClass c) {
    switch (c) {
        case PixelClass::Water: return "water";
        case PixelClass::Cloud: return "cloud";
        case PixelClass::FireDay: return "fire_day";
        case PixelClass::FireNight: return "fire_night";
        case PixelClass::NonFire: return "non_fire";
    }
    return "unknown";
}

PixelClass classify_pixel(const PixelSample& px) {
    if (px.water) return PixelClass::Water;

    const double t4 = brightness_temperature(px.radiance_4um, kLambda4um);
    const double t11 = brightness_temperature(px.radiance_11um, kLambda11um);
    const double t12 = brightness_temperature(px.radiance_12um, kLambda12um);
    const bool day = px.solar_zenith_deg < 85.0;

    const double refl_sum = px.reflectance_065 + px.reflectance_086;
    bool cloud = t12 < 265.0;
    if (day) {
        cloud = cloud || refl_sum > 1.2 || (refl_sum > 0.7 && t12 < 285.0) ||
                (px.reflectance_086 > 0.25 && t12 < 300.0);
    }
    if (cloud) return PixelClass::Cloud;

    if (day) {
        if (t4 > 310.0 && (t4 - t11) > 10.0 && px.reflectance_086 < 0.35) {
            return PixelClass::FireDay;
        }
    } else {
        if (t4 > 305.0 && (t4 - t11) > 10.0) return PixelClass::FireNight;
    }
    return PixelClass::NonFire;
}

PixelSample SceneRaster::sample(int row, int col) const {
    const std::size_t i = static_cast<std::size_t>(row) * width + col;
    PixelSample px;
    px.radiance_4um = radiance_4um[i];
    px.radiance_11um = radiance_11um[i];
    px.radiance_12um = radiance_12um[i];
    px.reflectance_065 = reflectance_065[i];
    px.reflectance_086 = reflectance_086[i];
    px.solar_zenith_deg = solar_zenith_deg[i];
    px.water = water_mask[i] != 0.0f;
    return px;
}

void SceneRaster::lonlat(int row, int col, double& lon_deg, double& lat_deg) const {
    lon_deg = geotransform[0] + col * geotransform[1] + row * geotransform[2];
    lat_deg = geotransform[3] + col * geotransform[4] + row * geotransform[5];
}

void SceneRaster::validate() const {
    if (width <= 0 || height <= 0) {
        throw FormatError("scene dimensions must be positive");
    }
    const std::size_t n = pixel_count();
    const struct {
        const char* name;
        const std::vector<float>* plane;
    } planes[] = {
        {"radiance_4um", &radiance_4um},       {"radiance_11um", &radiance_11um},
        {"radiance_12um", &radiance_12um},     {"reflectance_065", &reflectance_065},
        {"reflectance_086", &reflectance_086}, {"solar_zenith_deg", &solar_zenith_deg},
        {"water_mask", &water_mask},
    };
    for (const auto& p : planes) {
        if (p.plane->size() != n) {
            throw MissingChannelError(std::string("scene is missing channel plane '") + p.name +
                                      "'");
        }
    }
}

FireReport classify_scene(const SceneRaster& scene) {
    scene.validate();
    FireReport rep;
    rep.scene_id = scene.scene_id;
    for (int row = 0; row < scene.height; ++row) {
        for (int col = 0; col < scene.width; ++col) {
            const PixelClass c = classify_pixel(scene.sample(row, col));
            rep.class_counts[static_cast<int>(c)] += 1;
            if (c == PixelClass::FireDay || c == PixelClass::FireNight) {
                FirePixel fp;
                fp.row = row;
                fp.col = col;
                scene.lonlat(row, col, fp.lon_deg, fp.lat_deg);
                fp.cls = c;
                rep.fire_pixels.push_back(fp);
            }
        }
    }
    return rep;
}

std::string FireReport::to_json() const {
    json pixels = json::array();
    for (const auto& fp : fire_pixels) {
        pixels.push_back({{"row", fp.row},
                          {"col", fp.col},
                          {"lat_deg", fp.lat_deg},
                          {"lon_deg", fp.lon_deg},
                          {"class", pixel_class_name(fp.cls)}});
    }
    json j{{"scene_id", scene_id},
           {"counts",
            {{"water", class_counts[0]},
             {"cloud", class_counts[1]},
             {"fire_day", class_counts[2]},
             {"fire_night", class_counts[3]},
             {"non_fire", class_counts[4]}}},
           {"fire_pixels", pixels}};
    return j.dump(2);
}

std::string FireReport::to_csv() const {
    std::ostringstream os;
    os << "lat_deg,lon_deg,class\n";
    os.precision(10);
    for (const auto& fp : fire_pixels) {
        os << fp.lat_deg << ',' << fp.lon_deg << ',' << pixel_class_name(fp.cls) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Scene container I/O
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'F', 'S', 'C', 'N'};

struct PlaneRef {
    const char* name;
    std::vector<float> SceneRaster::* member;
};

constexpr PlaneRef kPlanes[] = {
    {"radiance_4um", &SceneRaster::radiance_4um},
    {"radiance_11um", &SceneRaster::radiance_11um},
    {"radiance_12um", &SceneRaster::radiance_12um},
    {"reflectance_065", &SceneRaster::reflectance_065},
    {"reflectance_086", &SceneRaster::reflectance_086},
    {"solar_zenith_deg", &SceneRaster::solar_zenith_deg},
    {"water_mask", &SceneRaster::water_mask},
};

void write_u32_le(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f32_plane_le(std::ostream& os, const std::vector<float>& plane, double scale) {
    for (float v : plane) {
        const float scaled = static_cast<float>(v / scale);
        std::uint32_t bits;
        std::memcpy(&bits, &scaled, 4);
        write_u32_le(os, bits);
    }
}

void read_f32_plane_le(std::istream& is, std::vector<float>& plane, std::size_t n, double scale) {
    plane.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t bits = read_u32_le(is);
        float v;
        std::memcpy(&v, &bits, 4);
        plane[i] = static_cast<float>(v * scale);
    }
}

}  // namespace

void SceneRaster::save(const std::string& path) const {
    validate();
    json channels = json::array();
    for (const auto& p : kPlanes) channels.push_back({{"name", p.name}, {"scale", 1.0}});
    json header{{"width", width},
                {"height", height},
                {"scene_id", scene_id},
                {"channels", channels},
                {"geotransform", {geotransform[0], geotransform[1], geotransform[2],
                                  geotransform[3], geotransform[4], geotransform[5]}}};
    const std::string htext = header.dump();

    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::io_failure, "cannot write scene file: " + path);
    os.write(kMagic, 4);
    write_u32_le(os, static_cast<std::uint32_t>(htext.size()));
    os.write(htext.data(), static_cast<std::streamsize>(htext.size()));
    for (const auto& p : kPlanes) write_f32_plane_le(os, this->*(p.member), 1.0);
    if (!os) throw Error(ErrorCode::io_failure, "short write on scene file: " + path);
}

SceneRaster SceneRaster::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::io_failure, "cannot open scene file: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) {
        throw FormatError("not a scene file (bad magic): " + path);
    }
    const std::uint32_t hlen = read_u32_le(is);
    std::string htext(hlen, '\0');
    is.read(htext.data(), hlen);
    if (!is) throw FormatError("truncated scene header: " + path);

    json header;
    try {
        header = json::parse(htext);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("scene header JSON error: ") + e.what());
    }

    SceneRaster scene;
    scene.width = header.at("width").get<int>();
    scene.height = header.at("height").get<int>();
    scene.scene_id = header.value("scene_id", "");
    if (header.contains("geotransform")) {
        const auto& gt = header.at("geotransform");
        for (int i = 0; i < 6; ++i) scene.geotransform[i] = gt.at(i).get<double>();
    }
    if (scene.width <= 0 || scene.height <= 0) throw FormatError("bad scene dimensions");
    const std::size_t n = scene.pixel_count();

    for (const auto& ch : header.at("channels")) {
        const std::string name = ch.at("name").get<std::string>();
        const double scale = ch.value("scale", 1.0);
        bool known = false;
        for (const auto& p : kPlanes) {
            if (name == p.name) {
                read_f32_plane_le(is, scene.*(p.member), n, scale);
                known = true;
                break;
            }
        }
        if (!known) {
            // Skip unknown planes so the format stays forward-extensible.
            is.seekg(static_cast<std::streamoff>(n) * 4, std::ios::cur);
        }
        if (!is) throw FormatError("truncated scene plane '" + name + "': " + path);
    }
    scene.validate();
    return scene;
}

SceneRaster generate_synthetic_scene(const SceneSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0 ||
        spec.pixels.size() != static_cast<std::size_t>(spec.width) * spec.height) {
        throw InfeasibleSpecError("scene spec dimensions do not match the pixel list");
    }
    SceneRaster scene;
    scene.width = spec.width;
    scene.height = spec.height;
    scene.scene_id = spec.scene_id;
    for (int i = 0; i < 6; ++i) scene.geotransform[i] = spec.geotransform[i];
    const std::size_t n = scene.pixel_count();
    scene.radiance_4um.resize(n);
    scene.radiance_11um.resize(n);
    scene.radiance_12um.resize(n);
    scene.reflectance_065.resize(n);
    scene.reflectance_086.resize(n);
    scene.solar_zenith_deg.resize(n);
    scene.water_mask.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const PixelSpec& ps = spec.pixels[i];
        scene.radiance_4um[i] = static_cast<float>(planck_radiance(ps.t4_k, kLambda4um));
        scene.radiance_11um[i] = static_cast<float>(planck_radiance(ps.t11_k, kLambda11um));
        scene.radiance_12um[i] = static_cast<float>(planck_radiance(ps.t12_k, kLambda12um));
        scene.reflectance_065[i] = static_cast<float>(ps.reflectance_065);
        scene.reflectance_086[i] = static_cast<float>(ps.reflectance_086);
        scene.solar_zenith_deg[i] = static_cast<float>(ps.solar_zenith_deg);
        scene.water_mask[i] = ps.water ? 1.0f : 0.0f;

        const PixelClass got = classify_pixel(scene.sample(static_cast<int>(i) / spec.width,
                                                           static_cast<int>(i) % spec.width));
        if (got != ps.want) {
            std::ostringstream os;
            os << "pixel " << i << " requests class '" << pixel_class_name(ps.want)
               << "' but its parameters classify as '" << pixel_class_name(got)
               << "' (T4=" << ps.t4_k << " K, T11=" << ps.t11_k << " K, T12=" << ps.t12_k
               << " K, zenith=" << ps.solar_zenith_deg << ")";
            throw InfeasibleSpecError(os.str());
        }
    }
    return scene;
}

}  // namespace firesat::firedetect
