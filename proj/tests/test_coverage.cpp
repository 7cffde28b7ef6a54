#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "firesat/coverage.hpp"

#include <cmath>

using namespace firesat;
using namespace firesat::coverage;
using firesat::constellation::Constellation;
using firesat::constellation::WalkerChromosome;
using firesat::kepler::EarthModel;
using firesat::kepler::OrbitalElements;

namespace {

const EarthModel kEarth;

PolygonRing box(double lat_lo, double lat_hi, double lon_lo, double lon_hi) {
    PolygonRing r;
    r.vertices = {{lat_lo, lon_lo}, {lat_lo, lon_hi}, {lat_hi, lon_hi}, {lat_hi, lon_lo}};
    return r;
}

RegionConfig region_box(double lat_lo, double lat_hi, double lon_lo, double lon_hi,
                        double spacing) {
    RegionConfig cfg;
    cfg.name = "test-box";
    cfg.spacing_km = spacing;
    cfg.area_of_interest = box(lat_lo, lat_hi, lon_lo, lon_hi);
    return cfg;
}

OrbitalElements elements(double a, double e, double i, double raan, double argp, double ma0) {
    OrbitalElements el;
    el.a_km = a;
    el.e = e;
    el.i_deg = i;
    el.raan_deg = raan;
    el.argp_deg = argp;
    el.ma0_deg = ma0;
    return el;
}

Constellation manual_constellation(std::initializer_list<OrbitalElements> els) {
    Constellation c;
    c.sats.assign(els);
    c.source.sats_per_plane = 1;
    c.source.planes = static_cast<int>(c.sats.size());
    return c;
}

// Independent re-computation of C, P, R and per-point hit counts with plain
// (sat, t, gp) triple loops and no index/matrix machinery.
struct BruteResult {
    double c_mean = 0.0;
    long p_cov = 0;
    double r_union = 0.0;
    int transit_count = 0;
    std::vector<std::uint32_t> hits;
    double revisit_sampled = 0.0;
};

BruteResult brute_force(const Constellation& cons, const RegionGrid& grid,
                        const CoverageParams& prm) {
    const std::size_t steps = static_cast<std::size_t>(prm.day_length_s / prm.dt_s) + 1;
    const std::size_t n = cons.sats.size();
    const auto& pts = grid.included();
    std::vector<std::vector<char>> inst(n, std::vector<char>(steps, 0));
    std::vector<std::vector<char>> cov(pts.size(), std::vector<char>(steps, 0));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t st = 0; st < steps; ++st) {
            const double t = static_cast<double>(st) * prm.dt_s;
            const auto eci = kepler::eci_position(cons.sats[i], kEarth, t);
            const auto ecef = kepler::eci_to_ecef(eci, kEarth);
            const auto sub = kepler::ecef_to_geodetic(ecef, kEarth);
            const bool in_aoi = grid.in_area_of_interest(sub.lat_deg, sub.lon_deg);
            if (!in_aoi) continue;
            if (!grid.in_exclusion(sub.lat_deg, sub.lon_deg)) inst[i][st] = 1;
            const double r = ecef.vec().norm();
            const double swath = swath_width_km(r - kEarth.radius_km, prm.sensor.half_fov_deg);
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (footprint_visible(sub, pts[j], swath, kEarth.radius_km)) cov[j][st] = 1;
            }
        }
    }

    BruteResult out;
    std::uint64_t total = 0;
    std::vector<char> uni(steps, 0);
    for (std::size_t st = 0; st < steps; ++st) {
        for (std::size_t i = 0; i < n; ++i) {
            total += inst[i][st];
            uni[st] |= inst[i][st];
        }
    }
    out.c_mean = static_cast<double>(total) / static_cast<double>(steps);

    auto runs_of = [&](const std::vector<char>& bits, std::vector<std::size_t>& starts,
                       std::vector<std::size_t>& ends) {
        starts.clear();
        ends.clear();
        bool prev = false;
        for (std::size_t st = 0; st < bits.size(); ++st) {
            const bool cur = bits[st] != 0;
            if (cur && !prev) starts.push_back(st);
            if (!cur && prev) ends.push_back(st - 1);
            prev = cur;
        }
        if (prev) ends.push_back(bits.size() - 1);
    };

    std::vector<std::size_t> starts, ends;
    runs_of(uni, starts, ends);
    out.transit_count = static_cast<int>(starts.size());
    if (starts.size() >= 2) {
        double s = 0.0;
        for (std::size_t k = 1; k < starts.size(); ++k) {
            s += static_cast<double>(starts[k] - ends[k - 1] - 1) * prm.dt_s;
        }
        out.r_union = s / static_cast<double>(starts.size() - 1);
    } else {
        out.r_union = starts.empty() ? prm.day_length_s : 0.0;
    }

    out.hits.assign(pts.size(), 0);
    std::vector<double> means;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        std::uint32_t h = 0;
        for (std::size_t st = 0; st < steps; ++st) h += cov[j][st];
        out.hits[j] = h;
        if (h > 0) ++out.p_cov;
        runs_of(cov[j], starts, ends);
        if (starts.size() < 2) continue;
        double s = 0.0;
        for (std::size_t k = 1; k < starts.size(); ++k) {
            s += static_cast<double>(starts[k] - ends[k - 1] - 1) * prm.dt_s;
        }
        means.push_back(s / static_cast<double>(starts.size() - 1));
    }
    if (!means.empty()) {
        double s = 0.0;
        for (double v : means) s += v;
        out.revisit_sampled = s / static_cast<double>(means.size());
    }
    return out;
}

}  // namespace

TEST_CASE("swath width") {
    CHECK(swath_width_km(963.9, 6.99) == doctest::Approx(236.4).epsilon(1e-3));
    CHECK(swath_width_km(500.0, 45.0) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(swath_width_km(963.9, 1e-9) == doctest::Approx(0.0));
    CHECK_THROWS_AS(swath_width_km(-1.0, 6.99), BoundViolationError);
    CHECK_THROWS_AS(swath_width_km(500.0, 95.0), BoundViolationError);
}

TEST_CASE("footprint visibility") {
    kepler::GeodeticPoint sub{-25.0, 135.0, 0.0};

    SUBCASE("directly overhead") { CHECK(footprint_visible(sub, {-25.0, 135.0}, 10.0)); }

    SUBCASE("200 km away with a 236.4 km swath") {
        const double dlat = rad2deg(200.0 / 6371.0);
        CHECK_FALSE(footprint_visible(sub, {-25.0 + dlat, 135.0}, 236.4));
    }

    SUBCASE("half-swath boundary is inclusive") {
        const LatLon gp{-25.0 + rad2deg(22.2 / 6371.0), 135.0};
        const double d = great_circle_km(sub.lat_deg, sub.lon_deg, gp.lat_deg, gp.lon_deg);
        CHECK(footprint_visible(sub, gp, 2.0 * d));  // exactly at swath/2
        CHECK(d == doctest::Approx(22.2).epsilon(1e-9));
    }
}

TEST_CASE("grid construction") {
    SUBCASE("square region keeps interior lattice points") {
        const auto grid = RegionGrid::build(region_box(-30, -20, 130, 140, 111.0), kEarth);
        CHECK(grid.included().size() > 50);
        CHECK(grid.excluded().empty());
        for (const auto& p : grid.included()) {
            CHECK(grid.in_area_of_interest(p.lat_deg, p.lon_deg));
        }
    }

    SUBCASE("degenerate polygon throws") {
        RegionConfig cfg;
        cfg.area_of_interest.vertices = {{0, 0}, {1, 1}};
        CHECK_THROWS_AS(RegionGrid::build(cfg, kEarth), DegenerateRegionError);
    }

    SUBCASE("exclusion covering the region empties the included set") {
        auto cfg = region_box(-30, -20, 130, 140, 111.0);
        cfg.exclusion = box(-31, -19, 129, 141);
        const auto grid = RegionGrid::build(cfg, kEarth);
        CHECK(grid.included().empty());
        CHECK(grid.excluded().size() > 50);
    }

    SUBCASE("adjacent spacing within 5 percent") {
        const auto grid = RegionGrid::build(region_box(-40, -12, 115, 150, 22.2), kEarth);
        int checked = 0;
        for (std::size_t i = 0; i + 1 < grid.included().size() && checked < 2000; ++i) {
            const auto& a = grid.included()[i];
            const auto& b = grid.included()[i + 1];
            if (a.lat_deg != b.lat_deg) continue;
            const double d = great_circle_km(a.lat_deg, a.lon_deg, b.lat_deg, b.lon_deg);
            if (d > 1.5 * 22.2) continue;  // neighbor was clipped away
            CHECK(d == doctest::Approx(22.2).epsilon(0.05));
            ++checked;
        }
        CHECK(checked > 100);
    }
}

TEST_CASE("point in polygon against an independent winding oracle") {
    // Winding-number implementation, structurally different from the
    // even-odd crossing test used by PolygonRing.
    auto winding_contains = [](const PolygonRing& ring, double lat, double lon) {
        const auto& v = ring.vertices;
        int wn = 0;
        for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
            const double y1 = v[j].lat_deg, x1 = v[j].lon_deg;
            const double y2 = v[i].lat_deg, x2 = v[i].lon_deg;
            const double side = (x2 - x1) * (lat - y1) - (lon - x1) * (y2 - y1);
            if (y1 <= lat) {
                if (y2 > lat && side > 0) ++wn;
            } else {
                if (y2 <= lat && side < 0) --wn;
            }
        }
        return wn != 0;
    };

    PolygonRing ring;  // non-convex "C" shape
    ring.vertices = {{0, 0}, {0, 10}, {8, 10}, {8, 7}, {3, 7}, {3, 3}, {8, 3}, {8, 0}};
    Rng rng(99);
    for (int k = 0; k < 5000; ++k) {
        const double lat = rng.uniform(-2.0, 10.0);
        const double lon = rng.uniform(-2.0, 12.0);
        CHECK(ring.contains(lat, lon) == winding_contains(ring, lat, lon));
    }
}

TEST_CASE("evaluate: zero coverage geometry") {
    // Equatorial satellite, polar region.
    auto cons = manual_constellation({elements(7000, 0.0, 0.0, 0, 0, 0)});
    const auto grid = RegionGrid::build(region_box(75, 85, 0, 40, 111.0), kEarth);
    CoverageParams prm;
    prm.dt_s = 300.0;
    prm.threads = 1;
    const auto rep = evaluate(cons, grid, kEarth, prm);
    CHECK(rep.zero_coverage);
    CHECK(rep.c_mean == 0.0);
    CHECK(rep.p_cov == 0);
    CHECK(std::isinf(rep.fitness));
}

TEST_CASE("evaluate: whole-globe saturation") {
    auto cons = manual_constellation({elements(7000, 0.0, 51.6, 0, 0, 0),
                                      elements(7000, 0.0, 51.6, 180, 0, 0)});
    auto cfg = region_box(-89.0, 89.0, -180.0001, 180.0001, 2500.0);
    const auto grid = RegionGrid::build(cfg, kEarth);
    CoverageParams prm;
    prm.dt_s = 600.0;
    prm.threads = 1;
    const auto rep = evaluate(cons, grid, kEarth, prm);
    CHECK(rep.c_mean == doctest::Approx(2.0));  // always above the region
    CHECK(rep.r_union_s <= prm.dt_s);           // single continuous transit
    CHECK(rep.transit_count == 1);

    CoverageParams half = prm;
    half.day_length_s = 43200.0;
    const auto rep_half = evaluate(cons, grid, kEarth, half);
    CHECK(rep.p_cov >= rep_half.p_cov);  // covered points grow with the day
}

TEST_CASE("evaluate matches the brute-force oracle exactly") {
    auto cons = manual_constellation({elements(7100, 0.02, 97.5, 10, 30, 0),
                                      elements(7200, 0.01, 55.0, 200, 0, 120),
                                      elements(6900, 0.0, 80.0, 90, 45, 240)});
    auto cfg = region_box(-35, -15, 120, 145, 550.0);
    cfg.exclusion = box(-28, -22, 128, 136);
    const auto grid = RegionGrid::build(cfg, kEarth);
    REQUIRE(grid.included().size() <= 50);
    REQUIRE(grid.included().size() >= 10);

    CoverageParams prm;
    prm.dt_s = 60.0;
    prm.threads = 1;
    const auto rep = evaluate(cons, grid, kEarth, prm);
    const auto oracle = brute_force(cons, grid, prm);

    CHECK(rep.c_mean == oracle.c_mean);
    CHECK(rep.p_cov == oracle.p_cov);
    CHECK(rep.r_union_s == oracle.r_union);
    CHECK(rep.transit_count == oracle.transit_count);
    CHECK(rep.point_revisit_sampled_mean_s == oracle.revisit_sampled);
    REQUIRE(rep.point_hits.size() == oracle.hits.size());
    for (std::size_t i = 0; i < oracle.hits.size(); ++i) {
        CHECK(rep.point_hits[i] == oracle.hits[i]);
    }

    SUBCASE("threaded run is identical to the sequential one") {
        CoverageParams par = prm;
        par.threads = 3;
        const auto rep3 = evaluate(cons, grid, kEarth, par);
        CHECK(rep3.c_mean == rep.c_mean);
        CHECK(rep3.p_cov == rep.p_cov);
        CHECK(rep3.r_union_s == rep.r_union_s);
        CHECK(rep3.point_revisit_sampled_mean_s == rep.point_revisit_sampled_mean_s);
        CHECK(rep3.point_revisit_sweep_mean_s == rep.point_revisit_sweep_mean_s);
        for (std::size_t i = 0; i < rep.point_hits.size(); ++i) {
            CHECK(rep3.point_hits[i] == rep.point_hits[i]);
        }
    }
}

TEST_CASE("adding a satellite keeps C and P monotone") {
    auto cfg = region_box(-35, -15, 120, 145, 550.0);
    const auto grid = RegionGrid::build(cfg, kEarth);
    CoverageParams prm;
    prm.dt_s = 120.0;
    prm.threads = 1;

    Rng rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        auto random_el = [&] {
            return elements(rng.uniform(6900.0, 7300.0), rng.uniform(0.0, 0.05),
                            rng.uniform(20.0, 160.0), rng.uniform(0.0, 360.0),
                            rng.uniform(0.0, 360.0), rng.uniform(0.0, 360.0));
        };
        Constellation base = manual_constellation({random_el(), random_el()});
        Constellation extended = base;
        extended.sats.push_back(random_el());

        const auto r1 = evaluate(base, grid, kEarth, prm);
        const auto r2 = evaluate(extended, grid, kEarth, prm);
        CHECK(r2.c_mean >= r1.c_mean);
        CHECK(r2.p_cov >= r1.p_cov);
        // Total uncovered time between transits can only shrink.
        const double total1 = r1.r_union_s * std::max(0, r1.transit_count - 1);
        const double total2 = r2.r_union_s * std::max(0, r2.transit_count - 1);
        if (r1.transit_count >= 2 && r2.transit_count >= 2) CHECK(total2 <= total1);
    }
}

TEST_CASE("R on a strictly periodic visibility pattern") {
    // Polar circular orbit over a latitude band: the band is entered twice
    // per revolution, so the visibility pattern has period T/2.
    auto el = elements(7000, 0.0, 90.0, 40.0, 0.0, 0.0);
    auto cons = manual_constellation({el});
    auto cfg = region_box(-5.0, 5.0, -180.0001, 180.0001, 2000.0);
    const auto grid = RegionGrid::build(cfg, kEarth);
    CoverageParams prm;
    prm.dt_s = 30.0;
    prm.threads = 1;
    const auto rep = evaluate(cons, grid, kEarth, prm);

    const double period = kepler::orbital_period_s(el, kEarth);
    const double t_vis = period / 2.0;
    const double duration = period * (10.0 / 360.0);  // 10 degrees of latitude band
    CHECK(std::fabs(rep.r_union_s - (t_vis - duration)) <= prm.dt_s);
}

TEST_CASE("sweep revisit tracks the lap period of an equatorial orbit") {
    // Inclination 0: the ground track is the equator, drifting westward as
    // the Earth rotates beneath; each grid point on the equator is swept
    // once per synodic lap.
    auto el = elements(7000.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    auto cons = manual_constellation({el});
    auto cfg = region_box(-3.0, 3.0, -60.0, 60.0, 300.0);
    const auto grid = RegionGrid::build(cfg, kEarth);

    const double n = std::sqrt(kEarth.mu_km3_s2 / std::pow(7000.0, 3));
    const double lap = 2.0 * kPi / (n - kEarth.omega_rad_s);

    CoverageParams prm;
    prm.dt_s = 60.0;
    prm.threads = 1;
    const auto rep = evaluate(cons, grid, kEarth, prm);
    CHECK(rep.point_revisit_sweep_mean_s == doctest::Approx(lap).epsilon(0.02));

    SUBCASE("sweep metric is insensitive to the sampling step") {
        CoverageParams coarse = prm;
        coarse.dt_s = 300.0;
        const auto rep2 = evaluate(cons, grid, kEarth, coarse);
        CHECK(rep2.point_revisit_sweep_mean_s ==
              doctest::Approx(rep.point_revisit_sweep_mean_s).epsilon(0.05));
    }
}

TEST_CASE("fitness composition and report serialization") {
    auto cons = manual_constellation({elements(7100, 0.02, 97.5, 10, 30, 0),
                                      elements(7200, 0.01, 55.0, 200, 0, 120)});
    const auto grid = RegionGrid::build(region_box(-35, -15, 120, 145, 550.0), kEarth);
    CoverageParams prm;
    prm.dt_s = 120.0;
    prm.threads = 1;
    const auto rep = evaluate(cons, grid, kEarth, prm);
    REQUIRE_FALSE(rep.zero_coverage);
    const double expected = 1.0 / rep.c_mean + 0.01 * (rep.r_union_s / 60.0) +
                            1.0 / static_cast<double>(rep.p_cov) +
                            static_cast<double>(rep.n_sats);
    CHECK(rep.fitness == doctest::Approx(expected).epsilon(1e-15));

    const auto text = rep.to_json();
    CHECK(text.find("\"c_mean\"") != std::string::npos);
    CHECK(text.find("\"point_revisit_sweep_mean_s\"") != std::string::npos);

    SUBCASE("hourly export length matches the day") {
        CHECK(rep.hourly_visible.size() == 25);  // 0..24 inclusive at dt | 3600
    }
}
