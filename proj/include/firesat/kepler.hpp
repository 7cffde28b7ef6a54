// Two-body Keplerian propagation and frame conversions
// (perifocal -> ECI -> ECEF -> geodetic).
//
// Angles cross this interface in degrees; the anomaly kernels
// (solve_kepler / true_anomaly) work in radians and say so.
#pragma once

#include "firesat/common.hpp"

namespace firesat::kepler {

struct EarthModel {
    double mu_km3_s2 = 398600.4418;   // gravitational parameter
    double radius_km = 6371.0;
    double omega_rad_s = 7.292e-5;    // sidereal rotation rate
    double ellipsoid_e = 0.0;         // 0 selects the spherical model

    static EarthModel spherical() { return {}; }
};

// Classical element set. Angles in degrees, semi-major axis in km.
struct OrbitalElements {
    double a_km = 0.0;
    double e = 0.0;
    double i_deg = 0.0;
    double raan_deg = 0.0;
    double argp_deg = 0.0;
    double ma0_deg = 0.0;  // mean anomaly at epoch t = 0

    // Throws BoundViolationError unless a > 0, 0 <= e < 1 and the perigee
    // clears the Earth radius of `earth`.
    void validate(const EarthModel& earth) const;
};

struct EciState {
    double x_km = 0.0, y_km = 0.0, z_km = 0.0;
    double t_s = 0.0;

    Vec3 vec() const { return {x_km, y_km, z_km}; }
};

// Same layout as EciState; the frame is ECEF. Kept as a distinct type so the
// two cannot be mixed up at call sites.
struct EcefState {
    double x_km = 0.0, y_km = 0.0, z_km = 0.0;
    double t_s = 0.0;

    Vec3 vec() const { return {x_km, y_km, z_km}; }
};

struct GeodeticPoint {
    double lat_deg = 0.0;  // [-90, 90]
    double lon_deg = 0.0;  // (-180, 180]
    double t_s = 0.0;
};

// Mean anomaly at time t (degrees in [0, 360)):
//   MA(t) = ma0 + sqrt(mu/a^3) * t
double mean_anomaly_at(const OrbitalElements& el, const EarthModel& earth, double t_s);

// Solve E - e*sin(E) = M by Newton-Raphson, E0 = M, 50-iteration cap.
// Inputs and output in radians. Throws IterationLimitError when the residual
// cannot be driven below `tol_rad` (pathological tolerances).
double solve_kepler(double mean_anomaly_rad, double e, double tol_rad = 1.0e-12);

// True anomaly from eccentric anomaly, quadrant-safe (radians):
//   f = 2 atan2( sqrt(1+e) sin(E/2), sqrt(1-e) cos(E/2) )
double true_anomaly(double eccentric_anomaly_rad, double e);

// Orbit radius r = a(1-e^2) / (1 + e cos f), true anomaly in degrees.
double radius(const OrbitalElements& el, double true_anomaly_deg);

// Position at time t: anomaly chain, perifocal vector, rotation by
// R3(-raan) R1(-i) R3(-argp).
EciState eci_position(const OrbitalElements& el, const EarthModel& earth, double t_s);

// Rotate about z by the Earth rotation angle omega*t.
EcefState eci_to_ecef(const EciState& s, const EarthModel& earth);

// Longitude from atan2(y, x). Latitude closed-form for the spherical model,
// fixed-point iteration (1e-10 rad stop) on the ellipsoid otherwise.
GeodeticPoint ecef_to_geodetic(const EcefState& p, const EarthModel& earth);

// Surface point (height 0) to ECEF, inverse companion of ecef_to_geodetic.
EcefState geodetic_to_ecef(const GeodeticPoint& g, const EarthModel& earth);

// Sub-satellite point at time t (composition of the three steps above).
GeodeticPoint subsatellite_point(const OrbitalElements& el, const EarthModel& earth, double t_s);

double orbital_period_s(const OrbitalElements& el, const EarthModel& earth);

}  // namespace firesat::kepler
