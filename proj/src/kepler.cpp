#include "firesat/kepler.hpp"

#include <array>
#include <sstream>

namespace firesat::kepler {

void OrbitalElements::validate(const EarthModel& earth) const {
    if (!(a_km > 0.0)) {
        std::ostringstream os;
        os << "semi-major axis must be positive, got " << a_km << " km";
        throw BoundViolationError(os.str());
    }
    if (!(e >= 0.0 && e < 1.0)) {
        std::ostringstream os;
        os << "eccentricity must satisfy 0 <= e < 1, got " << e;
        throw BoundViolationError(os.str());
    }
    const double perigee = a_km * (1.0 - e);
    if (!(perigee > earth.radius_km)) {
        std::ostringstream os;
        os << "perigee radius " << perigee << " km does not clear the Earth radius "
           << earth.radius_km << " km";
        throw BoundViolationError(os.str());
    }
}

double mean_anomaly_at(const OrbitalElements& el, const EarthModel& earth, double t_s) {
    const double n = std::sqrt(earth.mu_km3_s2 / (el.a_km * el.a_km * el.a_km));
    return wrap360(el.ma0_deg + rad2deg(n * t_s));
}

double solve_kepler(double mean_anomaly_rad, double e, double tol_rad) {
    if (!(e >= 0.0 && e < 1.0)) throw BoundViolationError("solve_kepler requires 0 <= e < 1");
    if (!(tol_rad > 0.0)) throw BoundViolationError("solve_kepler requires tol > 0");
    constexpr int kMaxIter = 50;
    const double m = mean_anomaly_rad;
    double eca = m;
    for (int it = 0; it < kMaxIter; ++it) {
        const double resid = eca - e * std::sin(eca) - m;
        if (std::fabs(resid) < tol_rad) return eca;
        eca -= resid / (1.0 - e * std::cos(eca));
    }
    if (std::fabs(eca - e * std::sin(eca) - m) < tol_rad) return eca;
    std::ostringstream os;
    os << "Kepler solver did not reach tol " << tol_rad << " rad in " << kMaxIter
       << " iterations (M=" << m << ", e=" << e << ")";
    throw IterationLimitError(os.str());
}

double true_anomaly(double eccentric_anomaly_rad, double e) {
    if (!(e >= 0.0 && e < 1.0)) throw BoundViolationError("true_anomaly requires 0 <= e < 1");
    const double half = 0.5 * eccentric_anomaly_rad;
    return 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(half),
                            std::sqrt(1.0 - e) * std::cos(half));
}

double radius(const OrbitalElements& el, double true_anomaly_deg) {
    const double f = deg2rad(true_anomaly_deg);
    return el.a_km * (1.0 - el.e * el.e) / (1.0 + el.e * std::cos(f));
}

namespace {

// Perifocal -> ECI rotation, columns of R3(-raan) R1(-i) R3(-argp).
std::array<double, 9> perifocal_to_eci(double raan_rad, double argp_rad, double i_rad) {
    const double cO = std::cos(raan_rad), sO = std::sin(raan_rad);
    const double cw = std::cos(argp_rad), sw = std::sin(argp_rad);
    const double ci = std::cos(i_rad), si = std::sin(i_rad);
    return {
        cw * cO - sO * sw * ci, -cO * sw - sO * cw * ci, sO * si,
        sO * cw + cO * sw * ci, -sw * sO + cO * cw * ci, -cO * si,
        sw * si, cw * si, ci,
    };
}

}  // namespace

EciState eci_position(const OrbitalElements& el, const EarthModel& earth, double t_s) {
    el.validate(earth);
    const double ma_rad = deg2rad(mean_anomaly_at(el, earth, t_s));
    const double eca = solve_kepler(ma_rad, el.e);
    const double f = true_anomaly(eca, el.e);
    const double r = el.a_km * (1.0 - el.e * el.e) / (1.0 + el.e * std::cos(f));
    const double xp = r * std::cos(f);
    const double yp = r * std::sin(f);

    const auto m = perifocal_to_eci(deg2rad(el.raan_deg), deg2rad(el.argp_deg), deg2rad(el.i_deg));
    return {
        m[0] * xp + m[1] * yp,
        m[3] * xp + m[4] * yp,
        m[6] * xp + m[7] * yp,
        t_s,
    };
}

EcefState eci_to_ecef(const EciState& s, const EarthModel& earth) {
    const double th = earth.omega_rad_s * s.t_s;
    const double c = std::cos(th), sn = std::sin(th);
    return {c * s.x_km + sn * s.y_km, -sn * s.x_km + c * s.y_km, s.z_km, s.t_s};
}

GeodeticPoint ecef_to_geodetic(const EcefState& p, const EarthModel& earth) {
    const double rho = std::hypot(p.x_km, p.y_km);
    if (rho == 0.0 && p.z_km == 0.0) throw GeometryError("cannot geolocate the Earth centre");
    const double lon = std::atan2(p.y_km, p.x_km);

    double lat = std::atan2(p.z_km, rho);
    if (earth.ellipsoid_e > 0.0) {
        const double e2 = earth.ellipsoid_e * earth.ellipsoid_e;
        for (int it = 0; it < 100; ++it) {
            const double s = std::sin(lat);
            const double nrad = earth.radius_km / std::sqrt(1.0 - e2 * s * s);
            const double next = std::atan2(p.z_km + e2 * nrad * s, rho);
            if (std::fabs(next - lat) < 1.0e-10) {
                lat = next;
                break;
            }
            lat = next;
        }
    }
    return {rad2deg(lat), rad2deg(lon), p.t_s};
}

EcefState geodetic_to_ecef(const GeodeticPoint& g, const EarthModel& earth) {
    const double lat = deg2rad(g.lat_deg);
    const double lon = deg2rad(g.lon_deg);
    const double e2 = earth.ellipsoid_e * earth.ellipsoid_e;
    const double s = std::sin(lat);
    const double nrad = earth.radius_km / std::sqrt(1.0 - e2 * s * s);
    return {
        nrad * std::cos(lat) * std::cos(lon),
        nrad * std::cos(lat) * std::sin(lon),
        nrad * (1.0 - e2) * s,
        g.t_s,
    };
}

GeodeticPoint subsatellite_point(const OrbitalElements& el, const EarthModel& earth, double t_s) {
    return ecef_to_geodetic(eci_to_ecef(eci_position(el, earth, t_s), earth), earth);
}

double orbital_period_s(const OrbitalElements& el, const EarthModel& earth) {
    return 2.0 * kPi * std::sqrt(el.a_km * el.a_km * el.a_km / earth.mu_km3_s2);
}

}  // namespace firesat::kepler
