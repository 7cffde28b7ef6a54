// Walker-style constellation expansion: 6-gene design vector -> N element sets.
#pragma once

#include <string>
#include <vector>

#include "firesat/kepler.hpp"

namespace firesat::constellation {

// Gene bounds for the design vector. Defaults follow the LEO search box:
// altitude 200-1000 km over a 6371 km Earth, near-circular eccentricities,
// and plane/slot counts capped so N = n*P <= 5000.
struct GeneBounds {
    double a_min_km = 6571.0, a_max_km = 7371.0;
    double e_min = 0.0, e_max = 0.05;
    double i_min_deg = 0.0, i_max_deg = 180.0;
    int p_min = 1, p_max = 100;
    int f_min = 1, f_max = 8;
    int n_min = 1, n_max = 50;
    long max_total = 5000;
};

struct WalkerChromosome {
    double a_km = 7000.0;
    double e = 0.0;
    double i_deg = 50.0;
    int planes = 1;         // P
    int phasing = 1;        // F
    int sats_per_plane = 1; // n

    long total() const { return static_cast<long>(planes) * sats_per_plane; }

    std::string to_json() const;
    static WalkerChromosome from_json(const std::string& json_text);
};

struct Violation {
    std::string gene;
    double value = 0.0;
    std::string bound;
    std::string message;
};

// Empty result iff every gene is inside `bounds`. Each entry names the gene,
// its value and the violated bound. With allow_f_up_to_planes set, F in
// (f_max, P] is reported as a warning-style violation but expand() accepts it
// (the accepted reference design uses F = 9 against an F <= 8 search box).
std::vector<Violation> validate(const WalkerChromosome& c,
                                const GeneBounds& bounds = {},
                                bool allow_f_up_to_planes = false);

struct Constellation {
    std::vector<kepler::OrbitalElements> sats;  // plane-major, slot-minor
    WalkerChromosome source;

    std::size_t size() const { return sats.size(); }
    std::string to_csv() const;
};

// Expand the design vector using the Walker spacing rules:
//   RAAN(plane p)   = p * 360/P
//   argp(slot k)    = k * 360/n      (in-plane spacing)
//   MA(plane p)     = p * 360*F/N    (cross-plane phasing)
// all modulo 360, satellites ordered plane-major then slot-minor. In-plane
// position rides on the argument of periapsis while the mean anomaly carries
// only the cross-plane term, which reproduces the standard Walker-delta
// T/P/F placement exactly for circular orbits.
// Throws BoundViolationError on the first hard violation.
Constellation expand(const WalkerChromosome& c,
                     const GeneBounds& bounds = {},
                     bool allow_f_up_to_planes = false);

}  // namespace firesat::constellation
