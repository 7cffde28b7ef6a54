/*
 * firesat C API: constellation design, coverage evaluation, fire-pixel
 * classification and relay latency modelling behind a stable extern-C
 * surface.
 *
 * Conventions:
 *   - every function returns fs_status; FS_OK is 0;
 *   - on failure fs_last_error() returns a thread-local message;
 *   - objects created through fs_*_new/expand/build/load are released with
 *     the matching fs_*_free;
 *   - strings returned through char** out-parameters are heap-allocated and
 *     must be released with fs_string_free.
 */
#ifndef FIRESAT_H
#define FIRESAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fs_status {
    FS_OK = 0,
    FS_ERR_INVALID_ARGUMENT = 1,
    FS_ERR_BOUND_VIOLATION = 2,
    FS_ERR_ITERATION_LIMIT = 3,
    FS_ERR_DEGENERATE_REGION = 4,
    FS_ERR_MISSING_CHANNEL = 5,
    FS_ERR_NON_POSITIVE_RADIANCE = 6,
    FS_ERR_INFEASIBLE_SPEC = 7,
    FS_ERR_GEOMETRY = 8,
    FS_ERR_EVALUATOR = 9,
    FS_ERR_IO = 10,
    FS_ERR_FORMAT = 11,
    FS_ERR_FIXTURE_MISSING = 12,
    FS_ERR_INTERNAL = 99
} fs_status;

const char* fs_version(void);
/* Message for the most recent failure on this thread ("" if none). */
const char* fs_last_error(void);
void fs_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Earth model and orbital elements                                    */
/* ------------------------------------------------------------------ */

typedef struct fs_earth_model {
    double mu_km3_s2;
    double radius_km;
    double omega_rad_s;
    double ellipsoid_e;
} fs_earth_model;

fs_earth_model fs_earth_default(void);

typedef struct fs_orbital_elements {
    double a_km;
    double e;
    double i_deg;
    double raan_deg;
    double argp_deg;
    double ma0_deg;
} fs_orbital_elements;

fs_status fs_solve_kepler(double mean_anomaly_rad, double eccentricity, double tol_rad,
                          double* eccentric_anomaly_rad);

/* out_state: eci x,y,z (km), ecef x,y,z (km), lat (deg), lon (deg). */
fs_status fs_propagate_state(const fs_orbital_elements* el, const fs_earth_model* earth,
                             double t_s, double out_state[8]);

/* ------------------------------------------------------------------ */
/* Constellation                                                       */
/* ------------------------------------------------------------------ */

typedef struct fs_walker_chromosome {
    double a_km;
    double e;
    double i_deg;
    int planes;
    int phasing;
    int per_plane;
} fs_walker_chromosome;

fs_status fs_chromosome_from_json(const char* json_text, fs_walker_chromosome* out);
fs_status fs_chromosome_to_json(const fs_walker_chromosome* c, char** json_out);
/* violations_json: JSON array of {gene, value, bound, message}; empty array
 * when the chromosome is inside every bound. */
fs_status fs_chromosome_validate(const fs_walker_chromosome* c, int allow_f_up_to_planes,
                                 char** violations_json);

typedef struct fs_constellation fs_constellation;

fs_status fs_constellation_expand(const fs_walker_chromosome* c, int allow_f_up_to_planes,
                                  fs_constellation** out);
size_t fs_constellation_size(const fs_constellation* c);
fs_status fs_constellation_element_at(const fs_constellation* c, size_t index,
                                      fs_orbital_elements* out);
fs_status fs_constellation_to_csv(const fs_constellation* c, char** csv_out);
void fs_constellation_free(fs_constellation* c);

/* ------------------------------------------------------------------ */
/* Region grid and coverage                                            */
/* ------------------------------------------------------------------ */

typedef struct fs_region_grid fs_region_grid;

fs_status fs_region_grid_build(const char* region_json, fs_region_grid** out);
size_t fs_region_grid_included(const fs_region_grid* g);
size_t fs_region_grid_excluded(const fs_region_grid* g);
fs_status fs_region_grid_point_at(const fs_region_grid* g, size_t index, double* lat_deg,
                                  double* lon_deg);
void fs_region_grid_free(fs_region_grid* g);

typedef struct fs_coverage_report fs_coverage_report;

/* params_json (optional, may be NULL): {dt_s, day_length_s, half_fov_deg,
 * w_c, w_r, w_p, w_n, threads}. */
fs_status fs_coverage_evaluate(const fs_constellation* c, const fs_region_grid* g,
                               const fs_earth_model* earth, const char* params_json,
                               fs_coverage_report** out);
fs_status fs_coverage_report_json(const fs_coverage_report* r, int include_point_hits,
                                  char** json_out);
double fs_coverage_c_mean(const fs_coverage_report* r);
long fs_coverage_p_cov(const fs_coverage_report* r);
double fs_coverage_fraction(const fs_coverage_report* r);
double fs_coverage_r_union_s(const fs_coverage_report* r);
double fs_coverage_fitness(const fs_coverage_report* r);
double fs_coverage_revisit_sweep_s(const fs_coverage_report* r);
void fs_coverage_report_free(fs_coverage_report* r);

/* ------------------------------------------------------------------ */
/* Fire detection                                                      */
/* ------------------------------------------------------------------ */

fs_status fs_brightness_temperature(double radiance_per_um, double wavelength_m,
                                    double* kelvin);

typedef struct fs_scene fs_scene;
typedef struct fs_fire_report fs_fire_report;

fs_status fs_scene_load(const char* path, fs_scene** out);
fs_status fs_scene_dims(const fs_scene* s, int* width, int* height);
void fs_scene_free(fs_scene* s);

fs_status fs_scene_classify(const fs_scene* s, fs_fire_report** out);
fs_status fs_fire_report_json(const fs_fire_report* r, char** json_out);
fs_status fs_fire_report_csv(const fs_fire_report* r, char** csv_out);
long fs_fire_report_fires(const fs_fire_report* r);
void fs_fire_report_free(fs_fire_report* r);

/* ------------------------------------------------------------------ */
/* Edge latency model                                                  */
/* ------------------------------------------------------------------ */

typedef struct fs_link_budget {
    double leo_data_rate_bps;
    double geo_bandwidth_hz;
    double snr;
    double data_amount_bits;
    double clock_rate_hz;
    double assembly_lines;
    double segmentation_overhead_s;
    double pixel_size_m;
    double cross_track_ratio;
} fs_link_budget;

typedef struct fs_orbit_geometry {
    double leo_worst_radius_km;
    double geo_semi_major_km;
    double leo_altitude_km;
    double earth_radius_km;
    double mu_km3_s2;
} fs_orbit_geometry;

fs_link_budget fs_link_budget_default(void);
fs_orbit_geometry fs_orbit_geometry_default(void);
fs_status fs_link_budget_from_json(const char* json_text, fs_link_budget* out);

typedef struct fs_latency_breakdown {
    double t_s[13]; /* t1..t13 */
    double total_s;
    double detection_total_s; /* t1..t10: coordinates back at the relay */
    double shannon_rate_bps;
    int n_nodes;
} fs_latency_breakdown;

fs_status fs_edge_latency(const fs_link_budget* b, int n_nodes, const fs_orbit_geometry* g,
                          fs_latency_breakdown* out);
fs_status fs_single_sat_latency(const fs_link_budget* b, const fs_orbit_geometry* g,
                                double* total_s);
/* csv_out columns: n_nodes,t7_s,t8_s,t9_s,detection_total_s,total_s */
fs_status fs_latency_sweep(const fs_link_budget* b, int n_lo, int n_hi,
                           const fs_orbit_geometry* g, double plateau_epsilon_s,
                           char** csv_out, int* plateau_n, int* knee_n, double* asymptote_s);

fs_status fs_visibility_threshold(double a_leo_km, double a_geo_km, double r_e_km,
                                  double* alpha_deg, double* x_km);
fs_status fs_count_visible(const fs_constellation* leo, const fs_orbital_elements* geo,
                           const fs_earth_model* earth, double t_s, double x_km, long* count);

/* ------------------------------------------------------------------ */
/* Optimizer and replay pipelines                                      */
/* ------------------------------------------------------------------ */

typedef void (*fs_optimize_progress)(int generation, double best_scalar, double mean_scalar,
                                     size_t front0_size, uint64_t pop_hash, void* user);

/* ga_config_json: see the GA config schema (population, generations,
 * crossover_prob, mutation_prob, tournament_size, seed, mode, bounds, ...).
 * eval_params_json: same schema as fs_coverage_evaluate.
 * resume_checkpoint_path may be NULL. result_json carries {best, pareto,
 * stats}. */
fs_status fs_optimize(const char* ga_config_json, const char* region_json,
                      const char* eval_params_json, const char* resume_checkpoint_path,
                      fs_optimize_progress progress, void* user, char** result_json);

/* options_json (optional): {subsample, dt_s, sweep_lo, sweep_hi,
 * geo_step_s, threads}. Produces the side-by-side comparison against the
 * bundled reference mission figures. */
fs_status fs_replay(const char* region_json, const char* chromosome_json,
                    const char* geo_elements_json, const char* budget_json,
                    const char* options_json, char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FIRESAT_H */
