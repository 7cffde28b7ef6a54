// LEO/GEO visibility geometry and the relayed edge-computing latency model.
#pragma once

#include <string>
#include <vector>

#include "firesat/constellation.hpp"
#include "firesat/kepler.hpp"

namespace firesat::edgesim {

inline constexpr double kSpeedOfLight_mps = 299792458.0;

// Link and compute budget. Field names carry units; the JSON form mirrors
// them one to one.
struct LinkBudget {
    double leo_data_rate_bps = 80.0e6;
    double geo_bandwidth_hz = 54.0e6;
    double snr = 210.0;
    double data_amount_bits = 559300.0;   // one image output file
    double clock_rate_hz = 200.0e6;
    double assembly_lines = 241878560.0;  // instruction count for one image
    double segmentation_overhead_s = 1.0;
    double pixel_size_m = 5.0;
    double cross_track_ratio = 1.0;       // line width / pixel size

    static LinkBudget from_json(const std::string& json_text);
    static LinkBudget load(const std::string& path);
    std::string to_json() const;
    void validate() const;  // all fields strictly positive
};

struct OrbitGeometry {
    double leo_worst_radius_km = 7375.0;  // largest radius in the search box
    double geo_semi_major_km = 42165.0;
    double leo_altitude_km = 963.9;       // single-satellite downlink distance
    double earth_radius_km = 6371.0;
    double mu_km3_s2 = 398600.4418;
};

struct VisibilityThreshold {
    double alpha_deg = 0.0;  // acos(Re / a_leo)
    double x_km = 0.0;       // cosine-rule distance bound
};

// alpha = acos(Re/a_leo); x = sqrt(aL^2 + aG^2 - 2 aL aG cos(90 deg + alpha)).
// Throws GeometryError when a_leo <= Re.
VisibilityThreshold visibility_threshold(double a_leo_km, double a_geo_km, double r_e_km);

// Count LEO satellites whose instantaneous ECI distance to the GEO satellite
// is below the threshold x at time t.
long count_visible(const constellation::Constellation& leo,
                   const kepler::OrbitalElements& geo,
                   const kepler::EarthModel& earth,
                   double t_s, double x_threshold_km);

// One-image latency decomposition for n edge nodes.
//
//   t1  dwell + segmentation      t8  processing, split n ways
//   t2  LEO transmit              t9  LEO result transmit
//   t3  LEO->GEO propagation      t10 LEO->GEO propagation
//   t4  GEO receive               t11 GEO receive
//   t5  GEO redistribute          t12 GEO send to ground
//   t6  GEO->LEO propagation      t13 GEO->ground propagation
//   t7  LEO receive
//
// total sums all thirteen legs. detection_total sums t1..t10 — the pipeline
// up to the point where every fire coordinate is back at the relay; this is
// the quantity whose plateau the node sweep tracks (see latency_sweep).
struct LatencyBreakdown {
    double t[13] = {};  // t[0] = t1 ... t[12] = t13, seconds
    double total = 0.0;
    double detection_total = 0.0;
    int n_nodes = 0;

    double shannon_rate_bps = 0.0;  // B log2(1 + SNR)

    std::string to_json() const;
};

LatencyBreakdown edge_latency(const LinkBudget& budget, int n_nodes,
                              const OrbitGeometry& geom = {});

// Single-satellite baseline: dwell, full on-board processing, downlink
// transmit, and LEO->ground propagation.
struct SingleSatLatency {
    double dwell_s = 0.0;
    double processing_s = 0.0;
    double transmit_s = 0.0;
    double propagation_s = 0.0;
    double total = 0.0;
};

SingleSatLatency single_sat_latency(const LinkBudget& budget, const OrbitGeometry& geom = {});

struct SweepRow {
    int n_nodes = 0;
    LatencyBreakdown breakdown;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    // Smallest n in range whose detection total is within epsilon of the
    // n -> infinity asymptote; 0 when no n in range qualifies.
    int plateau_n = 0;
    double asymptote_s = 0.0;
    // Smallest n where adding one more node improves the detection total by
    // less than 1 ms — the knee of the curve.
    int knee_n = 0;

    std::string to_csv() const;
};

SweepResult latency_sweep(const LinkBudget& budget, int n_lo, int n_hi,
                          const OrbitGeometry& geom = {}, double plateau_epsilon_s = 0.01);

}  // namespace firesat::edgesim
