// Region grid construction and one-day coverage evaluation: instance matrix
// statistics (C, P, R), per-point revisit metrics and the scalar fitness.
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "firesat/constellation.hpp"
#include "firesat/kepler.hpp"

namespace firesat::coverage {

struct LatLon {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

// Simple (non-self-intersecting) polygon on the lat/lon plane. Vertices in
// degrees, ring implicitly closed. Regions spanning the antimeridian are not
// supported.
struct PolygonRing {
    std::vector<LatLon> vertices;

    bool contains(double lat_deg, double lon_deg) const;  // even-odd rule
    double planar_area() const;                            // shoelace, deg^2
};

struct RegionConfig {
    std::string name;
    double spacing_km = 22.2;
    PolygonRing area_of_interest;
    PolygonRing exclusion;  // may be empty

    static RegionConfig from_json(const std::string& json_text);
    static RegionConfig load(const std::string& path);
    std::string to_json() const;
};

// Lattice clipped to the area-of-interest ring. Rows are spaced spacing_km
// along meridians; within a row points are spaced spacing_km along the
// parallel, so adjacent-point great-circle distances track the configured
// spacing everywhere. Points inside the exclusion ring are kept separately
// (they carry the central-region statistics).
class RegionGrid {
public:
    // Throws DegenerateRegionError when the area-of-interest ring has no area.
    static RegionGrid build(const RegionConfig& cfg,
                            const kepler::EarthModel& earth = {});

    const RegionConfig& config() const { return cfg_; }
    const std::vector<LatLon>& included() const { return included_; }
    const std::vector<LatLon>& excluded() const { return excluded_; }

    bool in_area_of_interest(double lat_deg, double lon_deg) const;
    bool in_exclusion(double lat_deg, double lon_deg) const;
    // The paper's "yellow section": inside the area of interest and outside
    // the central exclusion.
    bool in_instance_region(double lat_deg, double lon_deg) const;

private:
    RegionConfig cfg_;
    std::vector<LatLon> included_;
    std::vector<LatLon> excluded_;

    friend class GridIndex;
};

struct SensorModel {
    double half_fov_deg = 6.99;  // theta; swath = 2 h tan(theta)
    double pixel_size_m = 5.0;
};

// Swath width 2 h tan(theta) for altitude h (km) and half field of view
// theta (degrees).
double swath_width_km(double altitude_km, double half_fov_deg);

// Great-circle distance between two lat/lon points on a sphere of the given
// radius (haversine).
double great_circle_km(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg,
                       double radius_km = 6371.0);

// True iff the grid point lies within half the swath width of the
// sub-satellite point (boundary inclusive).
bool footprint_visible(const kepler::GeodeticPoint& sub, const LatLon& grid_point,
                       double swath_km, double earth_radius_km = 6371.0);

struct CoverageParams {
    double dt_s = 60.0;
    double day_length_s = 86400.0;
    SensorModel sensor;
    // Fitness term weights: w_c/C + w_r*R_minutes + w_p/P + w_n*N. The 0.01
    // revisit factor applies to R expressed in minutes.
    double w_c = 1.0, w_r = 0.01, w_p = 1.0, w_n = 1.0;
    int threads = 0;  // 0 = hardware concurrency
};

inline constexpr double kInfiniteFitness = std::numeric_limits<double>::infinity();

struct CoverageReport {
    // Fitness ingredients.
    double c_mean = 0.0;     // mean satellites above the instance region
    long p_cov = 0;          // distinct included grid points covered in a day
    long p_total = 0;        // included point count
    double r_union_s = 0.0;  // mean gap between consecutive constellation
                             // transits (union of rows), seconds
    long n_sats = 0;
    double fitness = kInfiniteFitness;
    bool zero_coverage = false;

    // Swath feasibility: worst-case (perigee) swath vs twice the grid spacing.
    bool swath_ok = false;
    double swath_min_km = 0.0;

    double coverage_fraction = 0.0;  // p_cov / p_total
    int transit_count = 0;           // maximal visibility runs in the union

    // Per-point revisit statistics over the included grid, mean of per-point
    // mean gaps:
    //  * sampled: gaps between footprint-covered time samples (sensor swath);
    //  * sweep:   gaps between sweeps of the guaranteed minimum swath band
    //             (2 x grid spacing) across the point, segment-interpolated
    //             and therefore insensitive to dt.
    double point_revisit_sampled_mean_s = 0.0;
    double point_revisit_sweep_mean_s = 0.0;

    // Same statistics over the excluded (central) points.
    long central_covered = 0;
    long central_total = 0;
    double central_revisit_sampled_mean_s = 0.0;
    double central_revisit_sweep_mean_s = 0.0;

    std::vector<std::uint32_t> point_hits;  // covered samples per included point
    std::vector<int> hourly_visible;        // instance column sums each 3600 s

    double dt_s = 0.0;
    double day_length_s = 0.0;

    std::string to_json(bool include_point_hits = true) const;
};

// Propagate every satellite over [0, day_length] at step dt and reduce the
// instance matrix. Satellites are processed in parallel; every reduction is
// order-independent so results do not depend on the schedule.
//
// Zero coverage (C = 0 or P = 0) is reported with fitness = +inf rather than
// thrown, so optimizers can discard the design.
CoverageReport evaluate(const constellation::Constellation& constellation,
                        const RegionGrid& grid,
                        const kepler::EarthModel& earth,
                        const CoverageParams& params = {});

}  // namespace firesat::coverage
