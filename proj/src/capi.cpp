// extern-C surface over the C++ core. Opaque handles own their C++ objects;
// exceptions are mapped to fs_status codes with a thread-local message.
#include "firesat/firesat.h"

#include <nlohmann/json.hpp>

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "firesat/constellation.hpp"
#include "firesat/coverage.hpp"
#include "firesat/edgesim.hpp"
#include "firesat/firedetect.hpp"
#include "firesat/kepler.hpp"
#include "firesat/optimizer.hpp"
#include "firesat/pipeline.hpp"

using namespace firesat;

namespace {

thread_local std::string g_last_error;

fs_status status_from(const Error& e) {
    switch (e.code()) {
        case ErrorCode::invalid_argument: return FS_ERR_INVALID_ARGUMENT;
        case ErrorCode::bound_violation: return FS_ERR_BOUND_VIOLATION;
        case ErrorCode::iteration_limit: return FS_ERR_ITERATION_LIMIT;
        case ErrorCode::degenerate_region: return FS_ERR_DEGENERATE_REGION;
        case ErrorCode::missing_channel: return FS_ERR_MISSING_CHANNEL;
        case ErrorCode::non_positive_radiance: return FS_ERR_NON_POSITIVE_RADIANCE;
        case ErrorCode::infeasible_spec: return FS_ERR_INFEASIBLE_SPEC;
        case ErrorCode::geometry: return FS_ERR_GEOMETRY;
        case ErrorCode::evaluator_failure: return FS_ERR_EVALUATOR;
        case ErrorCode::io_failure: return FS_ERR_IO;
        case ErrorCode::format: return FS_ERR_FORMAT;
        case ErrorCode::fixture_missing: return FS_ERR_FIXTURE_MISSING;
    }
    return FS_ERR_INTERNAL;
}

template <typename Fn>
fs_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return FS_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_from(e);
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return FS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FS_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

fs_status require(bool cond, const char* msg) {
    if (cond) return FS_OK;
    g_last_error = msg;
    return FS_ERR_INVALID_ARGUMENT;
}

kepler::EarthModel to_cpp(const fs_earth_model& m) {
    kepler::EarthModel e;
    e.mu_km3_s2 = m.mu_km3_s2;
    e.radius_km = m.radius_km;
    e.omega_rad_s = m.omega_rad_s;
    e.ellipsoid_e = m.ellipsoid_e;
    return e;
}

kepler::OrbitalElements to_cpp(const fs_orbital_elements& el) {
    return {el.a_km, el.e, el.i_deg, el.raan_deg, el.argp_deg, el.ma0_deg};
}

constellation::WalkerChromosome to_cpp(const fs_walker_chromosome& c) {
    constellation::WalkerChromosome w;
    w.a_km = c.a_km;
    w.e = c.e;
    w.i_deg = c.i_deg;
    w.planes = c.planes;
    w.phasing = c.phasing;
    w.sats_per_plane = c.per_plane;
    return w;
}

edgesim::LinkBudget to_cpp(const fs_link_budget& b) {
    edgesim::LinkBudget lb;
    lb.leo_data_rate_bps = b.leo_data_rate_bps;
    lb.geo_bandwidth_hz = b.geo_bandwidth_hz;
    lb.snr = b.snr;
    lb.data_amount_bits = b.data_amount_bits;
    lb.clock_rate_hz = b.clock_rate_hz;
    lb.assembly_lines = b.assembly_lines;
    lb.segmentation_overhead_s = b.segmentation_overhead_s;
    lb.pixel_size_m = b.pixel_size_m;
    lb.cross_track_ratio = b.cross_track_ratio;
    return lb;
}

edgesim::OrbitGeometry to_cpp(const fs_orbit_geometry& g) {
    edgesim::OrbitGeometry og;
    og.leo_worst_radius_km = g.leo_worst_radius_km;
    og.geo_semi_major_km = g.geo_semi_major_km;
    og.leo_altitude_km = g.leo_altitude_km;
    og.earth_radius_km = g.earth_radius_km;
    og.mu_km3_s2 = g.mu_km3_s2;
    return og;
}

}  // namespace

struct fs_constellation {
    constellation::Constellation value;
};
struct fs_region_grid {
    coverage::RegionGrid value;
};
struct fs_coverage_report {
    coverage::CoverageReport value;
};
struct fs_scene {
    firedetect::SceneRaster value;
};
struct fs_fire_report {
    firedetect::FireReport value;
};

extern "C" {

const char* fs_version(void) { return "1.0.0"; }

const char* fs_last_error(void) { return g_last_error.c_str(); }

void fs_string_free(char* s) { delete[] s; }

fs_earth_model fs_earth_default(void) {
    const kepler::EarthModel e;
    return {e.mu_km3_s2, e.radius_km, e.omega_rad_s, e.ellipsoid_e};
}

fs_status fs_solve_kepler(double mean_anomaly_rad, double eccentricity, double tol_rad,
                          double* eccentric_anomaly_rad) {
    if (auto st = require(eccentric_anomaly_rad != nullptr, "null output pointer")) return st;
    return guarded([&] {
        *eccentric_anomaly_rad = kepler::solve_kepler(mean_anomaly_rad, eccentricity, tol_rad);
    });
}

fs_status fs_propagate_state(const fs_orbital_elements* el, const fs_earth_model* earth,
                             double t_s, double out_state[8]) {
    if (auto st = require(el && earth && out_state, "null argument")) return st;
    return guarded([&] {
        const auto e = to_cpp(*earth);
        const auto eci = kepler::eci_position(to_cpp(*el), e, t_s);
        const auto ecef = kepler::eci_to_ecef(eci, e);
        const auto geo = kepler::ecef_to_geodetic(ecef, e);
        out_state[0] = eci.x_km;
        out_state[1] = eci.y_km;
        out_state[2] = eci.z_km;
        out_state[3] = ecef.x_km;
        out_state[4] = ecef.y_km;
        out_state[5] = ecef.z_km;
        out_state[6] = geo.lat_deg;
        out_state[7] = geo.lon_deg;
    });
}

fs_status fs_chromosome_from_json(const char* json_text, fs_walker_chromosome* out) {
    if (auto st = require(json_text && out, "null argument")) return st;
    return guarded([&] {
        const auto c = constellation::WalkerChromosome::from_json(json_text);
        *out = {c.a_km, c.e, c.i_deg, c.planes, c.phasing, c.sats_per_plane};
    });
}

fs_status fs_chromosome_to_json(const fs_walker_chromosome* c, char** json_out) {
    if (auto st = require(c && json_out, "null argument")) return st;
    return guarded([&] { *json_out = dup_string(to_cpp(*c).to_json()); });
}

fs_status fs_chromosome_validate(const fs_walker_chromosome* c, int allow_f_up_to_planes,
                                 char** violations_json) {
    if (auto st = require(c && violations_json, "null argument")) return st;
    return guarded([&] {
        const auto violations =
            constellation::validate(to_cpp(*c), {}, allow_f_up_to_planes != 0);
        std::string out = "[";
        for (std::size_t i = 0; i < violations.size(); ++i) {
            const auto& v = violations[i];
            if (i) out += ",";
            out += "{\"gene\":\"" + v.gene + "\",\"value\":" + std::to_string(v.value) +
                   ",\"bound\":\"" + v.bound + "\",\"message\":\"" + v.message + "\"}";
        }
        out += "]";
        *violations_json = dup_string(out);
    });
}

fs_status fs_constellation_expand(const fs_walker_chromosome* c, int allow_f_up_to_planes,
                                  fs_constellation** out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guarded([&] {
        auto cons = constellation::expand(to_cpp(*c), {}, allow_f_up_to_planes != 0);
        *out = new fs_constellation{std::move(cons)};
    });
}

size_t fs_constellation_size(const fs_constellation* c) {
    return c != nullptr ? c->value.size() : 0;
}

fs_status fs_constellation_element_at(const fs_constellation* c, size_t index,
                                      fs_orbital_elements* out) {
    if (auto st = require(c && out, "null argument")) return st;
    if (auto st = require(index < c->value.size(), "satellite index out of range")) return st;
    const auto& el = c->value.sats[index];
    *out = {el.a_km, el.e, el.i_deg, el.raan_deg, el.argp_deg, el.ma0_deg};
    g_last_error.clear();
    return FS_OK;
}

fs_status fs_constellation_to_csv(const fs_constellation* c, char** csv_out) {
    if (auto st = require(c && csv_out, "null argument")) return st;
    return guarded([&] { *csv_out = dup_string(c->value.to_csv()); });
}

void fs_constellation_free(fs_constellation* c) { delete c; }

fs_status fs_region_grid_build(const char* region_json, fs_region_grid** out) {
    if (auto st = require(region_json && out, "null argument")) return st;
    return guarded([&] {
        const auto cfg = coverage::RegionConfig::from_json(region_json);
        *out = new fs_region_grid{coverage::RegionGrid::build(cfg)};
    });
}

size_t fs_region_grid_included(const fs_region_grid* g) {
    return g != nullptr ? g->value.included().size() : 0;
}

size_t fs_region_grid_excluded(const fs_region_grid* g) {
    return g != nullptr ? g->value.excluded().size() : 0;
}

fs_status fs_region_grid_point_at(const fs_region_grid* g, size_t index, double* lat_deg,
                                  double* lon_deg) {
    if (auto st = require(g && lat_deg && lon_deg, "null argument")) return st;
    if (auto st = require(index < g->value.included().size(), "grid index out of range")) {
        return st;
    }
    *lat_deg = g->value.included()[index].lat_deg;
    *lon_deg = g->value.included()[index].lon_deg;
    g_last_error.clear();
    return FS_OK;
}

void fs_region_grid_free(fs_region_grid* g) { delete g; }

fs_status fs_coverage_evaluate(const fs_constellation* c, const fs_region_grid* g,
                               const fs_earth_model* earth, const char* params_json,
                               fs_coverage_report** out) {
    if (auto st = require(c && g && earth && out, "null argument")) return st;
    return guarded([&] {
        const auto params =
            pipeline::coverage_params_from_json(params_json != nullptr ? params_json : "");
        *out = new fs_coverage_report{
            coverage::evaluate(c->value, g->value, to_cpp(*earth), params)};
    });
}

fs_status fs_coverage_report_json(const fs_coverage_report* r, int include_point_hits,
                                  char** json_out) {
    if (auto st = require(r && json_out, "null argument")) return st;
    return guarded([&] { *json_out = dup_string(r->value.to_json(include_point_hits != 0)); });
}

double fs_coverage_c_mean(const fs_coverage_report* r) { return r ? r->value.c_mean : 0.0; }
long fs_coverage_p_cov(const fs_coverage_report* r) { return r ? r->value.p_cov : 0; }
double fs_coverage_fraction(const fs_coverage_report* r) {
    return r ? r->value.coverage_fraction : 0.0;
}
double fs_coverage_r_union_s(const fs_coverage_report* r) { return r ? r->value.r_union_s : 0.0; }
double fs_coverage_fitness(const fs_coverage_report* r) {
    return r ? r->value.fitness : coverage::kInfiniteFitness;
}
double fs_coverage_revisit_sweep_s(const fs_coverage_report* r) {
    return r ? r->value.point_revisit_sweep_mean_s : 0.0;
}

void fs_coverage_report_free(fs_coverage_report* r) { delete r; }

fs_status fs_brightness_temperature(double radiance_per_um, double wavelength_m,
                                    double* kelvin) {
    if (auto st = require(kelvin != nullptr, "null output pointer")) return st;
    return guarded([&] {
        *kelvin = firedetect::brightness_temperature(radiance_per_um, wavelength_m);
    });
}

fs_status fs_scene_load(const char* path, fs_scene** out) {
    if (auto st = require(path && out, "null argument")) return st;
    return guarded([&] { *out = new fs_scene{firedetect::SceneRaster::load(path)}; });
}

fs_status fs_scene_dims(const fs_scene* s, int* width, int* height) {
    if (auto st = require(s && width && height, "null argument")) return st;
    *width = s->value.width;
    *height = s->value.height;
    g_last_error.clear();
    return FS_OK;
}

void fs_scene_free(fs_scene* s) { delete s; }

fs_status fs_scene_classify(const fs_scene* s, fs_fire_report** out) {
    if (auto st = require(s && out, "null argument")) return st;
    return guarded([&] { *out = new fs_fire_report{firedetect::classify_scene(s->value)}; });
}

fs_status fs_fire_report_json(const fs_fire_report* r, char** json_out) {
    if (auto st = require(r && json_out, "null argument")) return st;
    return guarded([&] { *json_out = dup_string(r->value.to_json()); });
}

fs_status fs_fire_report_csv(const fs_fire_report* r, char** csv_out) {
    if (auto st = require(r && csv_out, "null argument")) return st;
    return guarded([&] { *csv_out = dup_string(r->value.to_csv()); });
}

long fs_fire_report_fires(const fs_fire_report* r) { return r ? r->value.fires() : 0; }

void fs_fire_report_free(fs_fire_report* r) { delete r; }

fs_link_budget fs_link_budget_default(void) {
    const edgesim::LinkBudget b;
    return {b.leo_data_rate_bps, b.geo_bandwidth_hz,       b.snr,
            b.data_amount_bits,  b.clock_rate_hz,          b.assembly_lines,
            b.segmentation_overhead_s, b.pixel_size_m,     b.cross_track_ratio};
}

fs_orbit_geometry fs_orbit_geometry_default(void) {
    const edgesim::OrbitGeometry g;
    return {g.leo_worst_radius_km, g.geo_semi_major_km, g.leo_altitude_km, g.earth_radius_km,
            g.mu_km3_s2};
}

fs_status fs_link_budget_from_json(const char* json_text, fs_link_budget* out) {
    if (auto st = require(json_text && out, "null argument")) return st;
    return guarded([&] {
        const auto b = edgesim::LinkBudget::from_json(json_text);
        *out = {b.leo_data_rate_bps, b.geo_bandwidth_hz,       b.snr,
                b.data_amount_bits,  b.clock_rate_hz,          b.assembly_lines,
                b.segmentation_overhead_s, b.pixel_size_m,     b.cross_track_ratio};
    });
}

fs_status fs_edge_latency(const fs_link_budget* b, int n_nodes, const fs_orbit_geometry* g,
                          fs_latency_breakdown* out) {
    if (auto st = require(b && out, "null argument")) return st;
    return guarded([&] {
        const auto geom = g != nullptr ? to_cpp(*g) : edgesim::OrbitGeometry{};
        const auto lb = edgesim::edge_latency(to_cpp(*b), n_nodes, geom);
        for (int i = 0; i < 13; ++i) out->t_s[i] = lb.t[i];
        out->total_s = lb.total;
        out->detection_total_s = lb.detection_total;
        out->shannon_rate_bps = lb.shannon_rate_bps;
        out->n_nodes = lb.n_nodes;
    });
}

fs_status fs_single_sat_latency(const fs_link_budget* b, const fs_orbit_geometry* g,
                                double* total_s) {
    if (auto st = require(b && total_s, "null argument")) return st;
    return guarded([&] {
        const auto geom = g != nullptr ? to_cpp(*g) : edgesim::OrbitGeometry{};
        *total_s = edgesim::single_sat_latency(to_cpp(*b), geom).total;
    });
}

fs_status fs_latency_sweep(const fs_link_budget* b, int n_lo, int n_hi,
                           const fs_orbit_geometry* g, double plateau_epsilon_s,
                           char** csv_out, int* plateau_n, int* knee_n, double* asymptote_s) {
    if (auto st = require(b && csv_out, "null argument")) return st;
    return guarded([&] {
        const auto geom = g != nullptr ? to_cpp(*g) : edgesim::OrbitGeometry{};
        const auto sweep =
            edgesim::latency_sweep(to_cpp(*b), n_lo, n_hi, geom, plateau_epsilon_s);
        *csv_out = dup_string(sweep.to_csv());
        if (plateau_n != nullptr) *plateau_n = sweep.plateau_n;
        if (knee_n != nullptr) *knee_n = sweep.knee_n;
        if (asymptote_s != nullptr) *asymptote_s = sweep.asymptote_s;
    });
}

fs_status fs_visibility_threshold(double a_leo_km, double a_geo_km, double r_e_km,
                                  double* alpha_deg, double* x_km) {
    if (auto st = require(alpha_deg && x_km, "null argument")) return st;
    return guarded([&] {
        const auto thr = edgesim::visibility_threshold(a_leo_km, a_geo_km, r_e_km);
        *alpha_deg = thr.alpha_deg;
        *x_km = thr.x_km;
    });
}

fs_status fs_count_visible(const fs_constellation* leo, const fs_orbital_elements* geo,
                           const fs_earth_model* earth, double t_s, double x_km, long* count) {
    if (auto st = require(leo && geo && earth && count, "null argument")) return st;
    return guarded([&] {
        *count = edgesim::count_visible(leo->value, to_cpp(*geo), to_cpp(*earth), t_s, x_km);
    });
}

fs_status fs_optimize(const char* ga_config_json, const char* region_json,
                      const char* eval_params_json, const char* resume_checkpoint_path,
                      fs_optimize_progress progress, void* user, char** result_json) {
    if (auto st = require(ga_config_json && region_json && result_json, "null argument")) {
        return st;
    }
    return guarded([&] {
        const auto cfg = optimizer::GaConfig::from_json(ga_config_json);
        const auto region = coverage::RegionConfig::from_json(region_json);
        const auto params = pipeline::coverage_params_from_json(
            eval_params_json != nullptr ? eval_params_json : "");
        std::function<void(const optimizer::GenStats&)> cb;
        if (progress != nullptr) {
            cb = [progress, user](const optimizer::GenStats& st) {
                progress(st.generation, st.best_scalar, st.mean_scalar, st.front0_size,
                         st.pop_hash, user);
            };
        }
        std::unique_ptr<optimizer::Checkpoint> resume;
        if (resume_checkpoint_path != nullptr && resume_checkpoint_path[0] != '\0') {
            resume = std::make_unique<optimizer::Checkpoint>(
                optimizer::Checkpoint::load(resume_checkpoint_path));
        }
        *result_json =
            dup_string(pipeline::optimize_to_json(cfg, region, params, cb, resume.get()));
    });
}

fs_status fs_replay(const char* region_json, const char* chromosome_json,
                    const char* geo_elements_json, const char* budget_json,
                    const char* options_json, char** report_json) {
    if (auto st = require(region_json && chromosome_json && geo_elements_json && budget_json &&
                              report_json,
                          "null argument")) {
        return st;
    }
    return guarded([&] {
        const auto region = coverage::RegionConfig::from_json(region_json);
        const auto chrom = constellation::WalkerChromosome::from_json(chromosome_json);
        const auto geo = pipeline::orbital_elements_from_json(geo_elements_json);
        const auto budget = edgesim::LinkBudget::from_json(budget_json);
        pipeline::ReplayOptions opts;
        if (options_json != nullptr && options_json[0] != '\0') {
            const auto j = nlohmann::json::parse(options_json);
            opts.subsample = j.value("subsample", opts.subsample);
            opts.dt_s = j.value("dt_s", opts.dt_s);
            opts.sweep_lo = j.value("sweep_lo", opts.sweep_lo);
            opts.sweep_hi = j.value("sweep_hi", opts.sweep_hi);
            opts.geo_step_s = j.value("geo_step_s", opts.geo_step_s);
            opts.threads = j.value("threads", opts.threads);
        }
        *report_json = dup_string(
            pipeline::replay_report_json(region, chrom, geo, budget, opts));
    });
}

}  // extern "C"
