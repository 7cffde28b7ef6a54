#include "firesat/edgesim.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace firesat::edgesim {

using nlohmann::json;

void LinkBudget::validate() const {
    const struct {
        const char* name;
        double v;
    } fields[] = {
        {"leo_data_rate_bps", leo_data_rate_bps},
        {"geo_bandwidth_hz", geo_bandwidth_hz},
        {"snr", snr},
        {"data_amount_bits", data_amount_bits},
        {"clock_rate_hz", clock_rate_hz},
        {"assembly_lines", assembly_lines},
        {"pixel_size_m", pixel_size_m},
        {"cross_track_ratio", cross_track_ratio},
    };
    for (const auto& f : fields) {
        if (!(f.v > 0.0)) {
            throw BoundViolationError(std::string("link budget field ") + f.name +
                                      " must be strictly positive");
        }
    }
    if (segmentation_overhead_s < 0.0) {
        throw BoundViolationError("segmentation_overhead_s must be non-negative");
    }
}

LinkBudget LinkBudget::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("link budget JSON parse error: ") + e.what());
    }
    LinkBudget b;
    b.leo_data_rate_bps = j.value("leo_data_rate_bps", b.leo_data_rate_bps);
    b.geo_bandwidth_hz = j.value("geo_bandwidth_hz", b.geo_bandwidth_hz);
    b.snr = j.value("snr", b.snr);
    b.data_amount_bits = j.value("data_amount_bits", b.data_amount_bits);
    b.clock_rate_hz = j.value("clock_rate_hz", b.clock_rate_hz);
    b.assembly_lines = j.value("assembly_lines", b.assembly_lines);
    b.segmentation_overhead_s = j.value("segmentation_overhead_s", b.segmentation_overhead_s);
    b.pixel_size_m = j.value("pixel_size_m", b.pixel_size_m);
    b.cross_track_ratio = j.value("cross_track_ratio", b.cross_track_ratio);
    return b;
}

LinkBudget LinkBudget::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureMissingError("cannot open link budget: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

std::string LinkBudget::to_json() const {
    json j{
        {"leo_data_rate_bps", leo_data_rate_bps},
        {"geo_bandwidth_hz", geo_bandwidth_hz},
        {"snr", snr},
        {"data_amount_bits", data_amount_bits},
        {"clock_rate_hz", clock_rate_hz},
        {"assembly_lines", assembly_lines},
        {"segmentation_overhead_s", segmentation_overhead_s},
        {"pixel_size_m", pixel_size_m},
        {"cross_track_ratio", cross_track_ratio},
    };
    return j.dump(2);
}

VisibilityThreshold visibility_threshold(double a_leo_km, double a_geo_km, double r_e_km) {
    if (!(a_leo_km > r_e_km)) {
        std::ostringstream os;
        os << "LEO semi-major axis " << a_leo_km << " km must exceed the Earth radius "
           << r_e_km << " km";
        throw GeometryError(os.str());
    }
    if (!(a_geo_km > a_leo_km)) {
        throw GeometryError("GEO semi-major axis must exceed the LEO semi-major axis");
    }
    const double alpha = std::acos(r_e_km / a_leo_km);
    const double x2 = a_leo_km * a_leo_km + a_geo_km * a_geo_km -
                      2.0 * a_leo_km * a_geo_km * std::cos(kPi / 2.0 + alpha);
    return {rad2deg(alpha), std::sqrt(x2)};
}

long count_visible(const constellation::Constellation& leo, const kepler::OrbitalElements& geo,
                   const kepler::EarthModel& earth, double t_s, double x_threshold_km) {
    const auto g = kepler::eci_position(geo, earth, t_s).vec();
    long count = 0;
    for (const auto& el : leo.sats) {
        const auto p = kepler::eci_position(el, earth, t_s).vec();
        if ((p - g).norm() < x_threshold_km) ++count;
    }
    return count;
}

LatencyBreakdown edge_latency(const LinkBudget& budget, int n_nodes, const OrbitGeometry& geom) {
    if (n_nodes < 1) throw BoundViolationError("edge_latency requires n >= 1");
    budget.validate();

    LatencyBreakdown lb;
    lb.n_nodes = n_nodes;
    const double n = static_cast<double>(n_nodes);

    // Worst-case (largest radius, slowest) orbital velocity for the dwell.
    const double v = std::sqrt(geom.mu_km3_s2 / geom.leo_worst_radius_km) * 1.0e3;  // m/s

    lb.t[0] = (budget.pixel_size_m / v) / budget.cross_track_ratio +
              budget.segmentation_overhead_s;                                   // t1
    lb.t[1] = budget.data_amount_bits / budget.leo_data_rate_bps;               // t2
    lb.t[2] = (geom.geo_semi_major_km - geom.leo_worst_radius_km) * 1.0e3 /
              kSpeedOfLight_mps;                                                // t3
    lb.shannon_rate_bps = budget.geo_bandwidth_hz * std::log2(1.0 + budget.snr);
    lb.t[3] = budget.data_amount_bits / lb.shannon_rate_bps;                    // t4
    lb.t[4] = lb.t[3];                                                          // t5
    lb.t[5] = lb.t[2];                                                          // t6
    lb.t[6] = (budget.data_amount_bits / n) / budget.leo_data_rate_bps;         // t7
    lb.t[7] = budget.assembly_lines / (n * budget.clock_rate_hz);               // t8
    lb.t[8] = lb.t[6];                                                          // t9
    lb.t[9] = lb.t[2];                                                          // t10
    lb.t[10] = lb.t[4];                                                         // t11
    lb.t[11] = lb.t[3];                                                         // t12
    lb.t[12] = geom.geo_semi_major_km * 1.0e3 / kSpeedOfLight_mps;              // t13

    lb.total = 0.0;
    for (double ti : lb.t) lb.total += ti;
    lb.detection_total = 0.0;
    for (int i = 0; i < 10; ++i) lb.detection_total += lb.t[i];
    return lb;
}

SingleSatLatency single_sat_latency(const LinkBudget& budget, const OrbitGeometry& geom) {
    budget.validate();
    const double v = std::sqrt(geom.mu_km3_s2 / geom.leo_worst_radius_km) * 1.0e3;
    SingleSatLatency s;
    s.dwell_s = (budget.pixel_size_m / v) / budget.cross_track_ratio +
                budget.segmentation_overhead_s;
    s.processing_s = budget.assembly_lines / budget.clock_rate_hz;
    s.transmit_s = budget.data_amount_bits / budget.leo_data_rate_bps;
    s.propagation_s = geom.leo_altitude_km * 1.0e3 / kSpeedOfLight_mps;
    s.total = s.dwell_s + s.processing_s + s.transmit_s + s.propagation_s;
    return s;
}

SweepResult latency_sweep(const LinkBudget& budget, int n_lo, int n_hi,
                          const OrbitGeometry& geom, double plateau_epsilon_s) {
    if (n_lo < 1 || n_hi < n_lo) throw BoundViolationError("latency_sweep: bad node range");
    SweepResult out;
    out.rows.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) {
        out.rows.push_back({n, edge_latency(budget, n, geom)});
    }

    // Asymptote: the n-independent detection terms (t1..t6 plus t10).
    const auto& first = out.rows.front().breakdown;
    out.asymptote_s = first.detection_total - (first.t[6] + first.t[7] + first.t[8]);

    for (const auto& row : out.rows) {
        if (row.breakdown.detection_total - out.asymptote_s <= plateau_epsilon_s) {
            out.plateau_n = row.n_nodes;
            break;
        }
    }
    // Knee: marginal gain of the next node drops below 1 ms.
    constexpr double kKneeStep_s = 1.0e-3;
    for (const auto& row : out.rows) {
        const auto next = edge_latency(budget, row.n_nodes + 1, geom);
        if (row.breakdown.detection_total - next.detection_total < kKneeStep_s) {
            out.knee_n = row.n_nodes;
            break;
        }
    }
    return out;
}

std::string LatencyBreakdown::to_json() const {
    json j;
    for (int i = 0; i < 13; ++i) j["t" + std::to_string(i + 1) + "_s"] = t[i];
    j["total_s"] = total;
    j["detection_total_s"] = detection_total;
    j["n_nodes"] = n_nodes;
    j["shannon_rate_bps"] = shannon_rate_bps;
    return j.dump(2);
}

std::string SweepResult::to_csv() const {
    std::ostringstream os;
    os << "n_nodes,t7_s,t8_s,t9_s,detection_total_s,total_s\n";
    os.precision(10);
    for (const auto& row : rows) {
        const auto& b = row.breakdown;
        os << row.n_nodes << ',' << b.t[6] << ',' << b.t[7] << ',' << b.t[8] << ','
           << b.detection_total << ',' << b.total << '\n';
    }
    return os.str();
}

}  // namespace firesat::edgesim
