#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "firesat/edgesim.hpp"

#include <cmath>

using namespace firesat;
using namespace firesat::edgesim;

namespace {

const LinkBudget kBudget;           // reference defaults
const OrbitGeometry kGeom;
const kepler::EarthModel kEarth;

kepler::OrbitalElements geo_elements() {
    kepler::OrbitalElements el;
    el.a_km = 42165.0;
    el.e = 0.0002541;
    el.i_deg = 0.0116;
    el.raan_deg = 48.4858;
    el.argp_deg = 135.8460;
    el.ma0_deg = 294.4219;
    return el;
}

}  // namespace

TEST_CASE("visibility threshold") {
    SUBCASE("grazing limit a_leo -> Re") {
        const auto thr = visibility_threshold(6371.0 + 1e-9, 42165.0, 6371.0);
        CHECK(thr.alpha_deg == doctest::Approx(0.0).epsilon(1e-3));
        CHECK(thr.x_km ==
              doctest::Approx(std::sqrt(6371.0 * 6371.0 + 42165.0 * 42165.0)).epsilon(1e-6));
    }

    SUBCASE("formula oracle at the reference orbit") {
        const auto thr = visibility_threshold(7334.9, 42165.0, 6371.0);
        CHECK(thr.alpha_deg == doctest::Approx(29.705128196490).epsilon(1e-12));
        CHECK(thr.x_km == doctest::Approx(46240.708038811).epsilon(1e-12));
    }

    SUBCASE("geometry errors") {
        CHECK_THROWS_AS(visibility_threshold(6000.0, 42165.0, 6371.0), GeometryError);
        CHECK_THROWS_AS(visibility_threshold(7000.0, 6800.0, 6371.0), GeometryError);
    }
}

TEST_CASE("count_visible") {
    SUBCASE("a constellation of clones of the GEO satellite is fully visible") {
        constellation::Constellation clones;
        for (int k = 0; k < 5; ++k) clones.sats.push_back(geo_elements());
        const long c = count_visible(clones, geo_elements(), kEarth, 1234.0, 100.0);
        CHECK(c == 5);  // distance 0 < any positive threshold
    }

    SUBCASE("diametrically opposite satellite is beyond the threshold") {
        // LEO at the anti-GEO longitude: separation ~ a_leo + a_geo, always
        // greater than the cosine-rule bound.
        auto geo = geo_elements();
        auto leo = geo;
        leo.a_km = 7000.0;
        leo.e = 0.0;
        leo.i_deg = 0.0;
        leo.ma0_deg = wrap360(geo.ma0_deg + 180.0);
        constellation::Constellation single;
        single.sats.push_back(leo);
        const auto thr = visibility_threshold(7000.0, 42165.0, 6371.0);
        CHECK(count_visible(single, geo, kEarth, 0.0, thr.x_km) == 0);
    }
}

TEST_CASE("edge latency components against the printed budget") {
    const auto lb = edge_latency(kBudget, 35, kGeom);

    CHECK(lb.t[1] == doctest::Approx(0.00699).epsilon(0.01));        // t2
    CHECK(lb.t[2] == doctest::Approx(0.1160).epsilon(0.01));         // t3
    CHECK(lb.t[3] == doctest::Approx(0.00134).epsilon(0.01));        // t4
    CHECK(lb.t[12] == doctest::Approx(0.140).epsilon(0.01));         // t13
    CHECK(lb.shannon_rate_bps == doctest::Approx(416.9e6).epsilon(0.01));
    CHECK(lb.t[4] == lb.t[3]);   // t5 = t4
    CHECK(lb.t[5] == lb.t[2]);   // t6 = t3
    CHECK(lb.t[8] == lb.t[6]);   // t9 = t7
    CHECK(lb.t[9] == lb.t[2]);   // t10 = t3
    CHECK(lb.t[10] == lb.t[4]);  // t11 = t5
    CHECK(lb.t[11] == lb.t[3]);  // t12 = t4

    SUBCASE("totals are exact sums") {
        double s = 0.0;
        for (double v : lb.t) s += v;
        CHECK(lb.total == s);
        double d = 0.0;
        for (int i = 0; i < 10; ++i) d += lb.t[i];
        CHECK(lb.detection_total == d);
    }

    SUBCASE("n = 1 processing time") {
        const auto one = edge_latency(kBudget, 1, kGeom);
        CHECK(one.t[7] == doctest::Approx(1.209).epsilon(0.001));  // t8 at n=1
    }

    SUBCASE("bad node count") { CHECK_THROWS_AS(edge_latency(kBudget, 0, kGeom), BoundViolationError); }
}

TEST_CASE("single satellite baseline") {
    const auto s = single_sat_latency(kBudget, kGeom);
    CHECK(s.total == doctest::Approx(2.22).epsilon(0.01 / 2.22));
    CHECK(s.propagation_s == doctest::Approx(0.00321).epsilon(0.01));
    CHECK(s.processing_s == doctest::Approx(1.209).epsilon(0.001));
    CHECK(s.total >= s.processing_s);

    SUBCASE("degenerate budget reduces to dwell + transmit + propagation") {
        LinkBudget b = kBudget;
        b.assembly_lines = 1e-12;  // effectively no processing
        b.segmentation_overhead_s = 0.0;
        const auto d = single_sat_latency(b, kGeom);
        CHECK(d.total == doctest::Approx(d.dwell_s + d.transmit_s + d.propagation_s)
                             .epsilon(1e-9));
    }
}

TEST_CASE("latency sweep") {
    const auto sweep = latency_sweep(kBudget, 1, 100, kGeom);
    REQUIRE(sweep.rows.size() == 100);

    SUBCASE("totals non-increasing in n") {
        for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
            CHECK(sweep.rows[i].breakdown.total <= sweep.rows[i - 1].breakdown.total);
            CHECK(sweep.rows[i].breakdown.detection_total <=
                  sweep.rows[i - 1].breakdown.detection_total);
        }
    }

    SUBCASE("knee sits at 35 nodes for the reference budget") {
        CHECK(sweep.knee_n == 35);
    }

    SUBCASE("single-entry range equals edge_latency") {
        const auto s1 = latency_sweep(kBudget, 1, 1, kGeom);
        REQUIRE(s1.rows.size() == 1);
        const auto direct = edge_latency(kBudget, 1, kGeom);
        CHECK(s1.rows[0].breakdown.total == direct.total);
        CHECK(s1.rows[0].breakdown.detection_total == direct.detection_total);
    }

    SUBCASE("asymptote matches a very large node count") {
        const auto big = edge_latency(kBudget, 1000000, kGeom);
        CHECK(std::fabs(big.detection_total - sweep.asymptote_s) < 1e-4);
    }

    SUBCASE("doubling the clock rate lowers the curve and the knee") {
        LinkBudget fast = kBudget;
        fast.clock_rate_hz *= 2.0;
        const auto sweep2 = latency_sweep(fast, 1, 100, kGeom);
        for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
            CHECK(sweep2.rows[i].breakdown.total <= sweep.rows[i].breakdown.total);
        }
        CHECK(sweep2.knee_n <= sweep.knee_n);
    }

    SUBCASE("edge pipeline beats the single-satellite baseline at the knee") {
        const auto single = single_sat_latency(kBudget, kGeom);
        CHECK(sweep.rows[34].breakdown.total < single.total);
        CHECK(sweep.rows[34].breakdown.detection_total < single.total);
    }

    SUBCASE("CSV header") {
        const auto csv = sweep.to_csv();
        CHECK(csv.rfind("n_nodes,t7_s,t8_s,t9_s,detection_total_s,total_s\n", 0) == 0);
    }
}

TEST_CASE("budget JSON round trip and validation") {
    const auto text = kBudget.to_json();
    const auto back = LinkBudget::from_json(text);
    CHECK(back.leo_data_rate_bps == kBudget.leo_data_rate_bps);
    CHECK(back.assembly_lines == kBudget.assembly_lines);

    LinkBudget bad = kBudget;
    bad.snr = -1.0;
    CHECK_THROWS_AS(bad.validate(), BoundViolationError);
    CHECK_THROWS_AS(LinkBudget::from_json("{oops"), FormatError);
}
