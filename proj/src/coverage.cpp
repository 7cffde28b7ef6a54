#include "firesat/coverage.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <thread>
#include <unordered_map>

namespace firesat::coverage {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Polygons and region config
// ---------------------------------------------------------------------------

bool PolygonRing::contains(double lat_deg, double lon_deg) const {
    const std::size_t n = vertices.size();
    if (n < 3) return false;
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double yi = vertices[i].lat_deg, xi = vertices[i].lon_deg;
        const double yj = vertices[j].lat_deg, xj = vertices[j].lon_deg;
        if ((yi <= lat_deg) != (yj <= lat_deg)) {
            const double x_cross = xi + (lat_deg - yi) / (yj - yi) * (xj - xi);
            if (lon_deg < x_cross) inside = !inside;
        }
    }
    return inside;
}

double PolygonRing::planar_area() const {
    const std::size_t n = vertices.size();
    if (n < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        acc += (vertices[j].lon_deg + vertices[i].lon_deg) *
               (vertices[j].lat_deg - vertices[i].lat_deg);
    }
    return std::fabs(acc) * 0.5;
}

namespace {

PolygonRing ring_from_json(const json& arr) {
    PolygonRing ring;
    for (const auto& v : arr) {
        if (!v.is_array() || v.size() != 2) {
            throw FormatError("polygon vertices must be [lat, lon] pairs");
        }
        ring.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return ring;
}

json ring_to_json(const PolygonRing& ring) {
    json arr = json::array();
    for (const auto& v : ring.vertices) arr.push_back({v.lat_deg, v.lon_deg});
    return arr;
}

}  // namespace

RegionConfig RegionConfig::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("region JSON parse error: ") + e.what());
    }
    RegionConfig cfg;
    cfg.name = j.value("name", "");
    cfg.spacing_km = j.value("spacing_km", 22.2);
    if (!j.contains("area_of_interest")) {
        throw FormatError("region JSON requires an area_of_interest ring");
    }
    cfg.area_of_interest = ring_from_json(j.at("area_of_interest"));
    if (j.contains("exclusion")) cfg.exclusion = ring_from_json(j.at("exclusion"));
    if (!(cfg.spacing_km > 0.0)) throw FormatError("spacing_km must be positive");
    return cfg;
}

RegionConfig RegionConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureMissingError("cannot open region config: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

std::string RegionConfig::to_json() const {
    json j{{"name", name},
           {"spacing_km", spacing_km},
           {"area_of_interest", ring_to_json(area_of_interest)}};
    if (!exclusion.vertices.empty()) j["exclusion"] = ring_to_json(exclusion);
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

RegionGrid RegionGrid::build(const RegionConfig& cfg, const kepler::EarthModel& earth) {
    if (cfg.area_of_interest.planar_area() <= 0.0) {
        throw DegenerateRegionError("area-of-interest polygon has zero area");
    }
    RegionGrid grid;
    grid.cfg_ = cfg;

    double lat_min = 90.0, lat_max = -90.0, lon_min = 180.0, lon_max = -180.0;
    for (const auto& v : cfg.area_of_interest.vertices) {
        lat_min = std::min(lat_min, v.lat_deg);
        lat_max = std::max(lat_max, v.lat_deg);
        lon_min = std::min(lon_min, v.lon_deg);
        lon_max = std::max(lon_max, v.lon_deg);
    }

    const double dlat = rad2deg(cfg.spacing_km / earth.radius_km);
    for (double lat = lat_min; lat <= lat_max + 1e-12; lat += dlat) {
        const double dlon = rad2deg(cfg.spacing_km / (earth.radius_km * std::cos(deg2rad(lat))));
        for (double lon = lon_min; lon <= lon_max + 1e-12; lon += dlon) {
            if (!cfg.area_of_interest.contains(lat, lon)) continue;
            if (cfg.exclusion.contains(lat, lon)) {
                grid.excluded_.push_back({lat, lon});
            } else {
                grid.included_.push_back({lat, lon});
            }
        }
    }
    return grid;
}

bool RegionGrid::in_area_of_interest(double lat_deg, double lon_deg) const {
    return cfg_.area_of_interest.contains(lat_deg, lon_deg);
}

bool RegionGrid::in_exclusion(double lat_deg, double lon_deg) const {
    return cfg_.exclusion.contains(lat_deg, lon_deg);
}

bool RegionGrid::in_instance_region(double lat_deg, double lon_deg) const {
    return in_area_of_interest(lat_deg, lon_deg) && !in_exclusion(lat_deg, lon_deg);
}

// ---------------------------------------------------------------------------
// Geometry helpers
// ---------------------------------------------------------------------------

double swath_width_km(double altitude_km, double half_fov_deg) {
    if (!(altitude_km > 0.0)) throw BoundViolationError("swath: altitude must be positive");
    if (!(half_fov_deg > 0.0 && half_fov_deg < 90.0)) {
        throw BoundViolationError("swath: half field of view must be in (0, 90) degrees");
    }
    return 2.0 * altitude_km * std::tan(deg2rad(half_fov_deg));
}

double great_circle_km(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg,
                       double radius_km) {
    const double p1 = deg2rad(lat1_deg), p2 = deg2rad(lat2_deg);
    const double dp = p2 - p1;
    const double dl = deg2rad(lon2_deg - lon1_deg);
    const double s = std::sin(dp * 0.5), t = std::sin(dl * 0.5);
    const double h = s * s + std::cos(p1) * std::cos(p2) * t * t;
    return 2.0 * radius_km * std::asin(std::sqrt(std::min(1.0, std::max(0.0, h))));
}

bool footprint_visible(const kepler::GeodeticPoint& sub, const LatLon& grid_point,
                       double swath_km, double earth_radius_km) {
    if (!(swath_km > 0.0)) throw BoundViolationError("footprint: swath must be positive");
    return great_circle_km(sub.lat_deg, sub.lon_deg, grid_point.lat_deg, grid_point.lon_deg,
                           earth_radius_km) <= swath_km * 0.5;
}

namespace {

struct UnitVec {
    double x, y, z;
};

UnitVec unit_from_latlon(double lat_deg, double lon_deg) {
    const double la = deg2rad(lat_deg), lo = deg2rad(lon_deg);
    const double c = std::cos(la);
    return {c * std::cos(lo), c * std::sin(lo), std::sin(la)};
}

// Row-bucketed lookup over the combined included+excluded point set.
class GridIndex {
public:
    GridIndex(const RegionGrid& grid, double earth_radius_km)
        : earth_radius_km_(earth_radius_km) {
        const auto& inc = grid.included();
        const auto& exc = grid.excluded();
        pts_.reserve(inc.size() + exc.size());
        ids_.reserve(pts_.capacity());
        for (std::size_t i = 0; i < inc.size(); ++i) {
            pts_.push_back(inc[i]);
            ids_.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::size_t i = 0; i < exc.size(); ++i) {
            pts_.push_back(exc[i]);
            ids_.push_back(static_cast<std::uint32_t>(inc.size() + i));
        }
        std::vector<std::size_t> order(pts_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (pts_[a].lat_deg != pts_[b].lat_deg) return pts_[a].lat_deg < pts_[b].lat_deg;
            return pts_[a].lon_deg < pts_[b].lon_deg;
        });
        std::vector<LatLon> spts(pts_.size());
        std::vector<std::uint32_t> sids(pts_.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            spts[i] = pts_[order[i]];
            sids[i] = ids_[order[i]];
        }
        pts_ = std::move(spts);
        ids_ = std::move(sids);
        std::size_t begin = 0;
        for (std::size_t i = 1; i <= pts_.size(); ++i) {
            if (i == pts_.size() || pts_[i].lat_deg != pts_[begin].lat_deg) {
                rows_.push_back({pts_[begin].lat_deg, begin, i});
                begin = i;
            }
        }
        units_.reserve(pts_.size());
        for (const auto& p : pts_) units_.push_back(unit_from_latlon(p.lat_deg, p.lon_deg));
    }

    std::size_t size() const { return pts_.size(); }

    // Visit all points whose row/lon windows intersect the given box; exact
    // membership tests are the caller's business.
    template <typename Fn>
    void visit_box(double lat_lo, double lat_hi, double lon_lo, double lon_hi, Fn&& fn) const {
        auto row_lo = std::lower_bound(rows_.begin(), rows_.end(), lat_lo,
                                       [](const Row& r, double v) { return r.lat < v; });
        for (auto it = row_lo; it != rows_.end() && it->lat <= lat_hi; ++it) {
            const auto first = pts_.begin() + static_cast<std::ptrdiff_t>(it->begin);
            const auto last = pts_.begin() + static_cast<std::ptrdiff_t>(it->end);
            auto p = std::lower_bound(first, last, lon_lo, [](const LatLon& a, double v) {
                return a.lon_deg < v;
            });
            for (; p != last && p->lon_deg <= lon_hi; ++p) {
                const std::size_t k = static_cast<std::size_t>(p - pts_.begin());
                fn(ids_[k], pts_[k], units_[k]);
            }
        }
    }

    template <typename Fn>
    void visit_circle(double lat_deg, double lon_deg, double radius_km, Fn&& fn) const {
        const double delta = radius_km / earth_radius_km_;  // angular radius, rad
        const double dlat = rad2deg(delta);
        // The disc's longitude extent peaks at the poleward edge of its
        // latitude band.
        const double phi_max = std::min(89.9, std::fabs(lat_deg) + dlat);
        const double cphi = std::cos(deg2rad(phi_max));
        const double s = std::sin(delta) / cphi;
        const double dlon = (cphi > 1e-6 && s < 1.0) ? rad2deg(std::asin(s)) : 360.0;
        visit_box(lat_deg - dlat, lat_deg + dlat, lon_deg - dlon, lon_deg + dlon,
                  std::forward<Fn>(fn));
    }

private:
    struct Row {
        double lat;
        std::size_t begin, end;
    };
    double earth_radius_km_;
    std::vector<LatLon> pts_;
    std::vector<std::uint32_t> ids_;
    std::vector<UnitVec> units_;
    std::vector<Row> rows_;
};

struct SweepEvent {
    std::uint32_t point_id;
    float t_s;
};

// Per-worker accumulation; every field merges order-independently.
struct Accum {
    std::vector<std::uint32_t> colsum;     // instance column sums
    std::vector<std::uint64_t> cover;      // point-major hit bitmaps
    std::vector<SweepEvent> sweep_events;  // min-swath band crossings

    Accum(std::size_t steps, std::size_t npts, std::size_t words_per_pt)
        : colsum(steps, 0), cover(npts * words_per_pt, 0), words_(words_per_pt) {}

    void set_cover(std::uint32_t point_id, std::size_t step) {
        cover[point_id * words_ + step / 64] |= (1ull << (step % 64));
    }

    std::size_t words_;
};

struct TrackSample {
    double lat, lon;
    bool in_aoi;
};

double mean_or(const std::vector<double>& v, double fallback) {
    if (v.empty()) return fallback;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

CoverageReport evaluate(const constellation::Constellation& constellation,
                        const RegionGrid& grid, const kepler::EarthModel& earth,
                        const CoverageParams& params) {
    if (constellation.sats.empty()) {
        throw Error(ErrorCode::invalid_argument, "evaluate: constellation is empty");
    }
    if (!(params.dt_s > 0.0) || !(params.day_length_s > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "evaluate: dt and day length must be positive");
    }

    const std::size_t steps = static_cast<std::size_t>(params.day_length_s / params.dt_s) + 1;
    const std::size_t n_sats = constellation.sats.size();
    const std::size_t n_inc = grid.included().size();
    const std::size_t n_exc = grid.excluded().size();
    const std::size_t n_pts = n_inc + n_exc;
    const std::size_t words = (steps + 63) / 64;

    // Bounding box of the area of interest, padded so footprints that reach
    // inside from just outside the ring are still cheap to reject.
    double bb_lat_lo = 90.0, bb_lat_hi = -90.0, bb_lon_lo = 180.0, bb_lon_hi = -180.0;
    for (const auto& v : grid.config().area_of_interest.vertices) {
        bb_lat_lo = std::min(bb_lat_lo, v.lat_deg);
        bb_lat_hi = std::max(bb_lat_hi, v.lat_deg);
        bb_lon_lo = std::min(bb_lon_lo, v.lon_deg);
        bb_lon_hi = std::max(bb_lon_hi, v.lon_deg);
    }

    const GridIndex index(grid, earth.radius_km);
    const double sweep_capture_km = grid.config().spacing_km;  // half of 2x spacing swath
    const double sin_sweep = std::sin(sweep_capture_km / earth.radius_km);

    int n_threads = params.threads > 0 ? params.threads
                                       : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min<int>(n_threads, static_cast<int>(n_sats));

    auto worker = [&](std::size_t sat_lo, std::size_t sat_hi) {
        Accum acc(steps, n_pts, words);
        std::vector<TrackSample> track(steps);
        std::unordered_map<std::uint32_t, double> last_event;

        for (std::size_t si = sat_lo; si < sat_hi; ++si) {
            const auto& el = constellation.sats[si];
            last_event.clear();

            for (std::size_t st = 0; st < steps; ++st) {
                const double t = static_cast<double>(st) * params.dt_s;
                const auto eci = kepler::eci_position(el, earth, t);
                const auto ecef = kepler::eci_to_ecef(eci, earth);
                const auto sub = kepler::ecef_to_geodetic(ecef, earth);
                track[st] = {sub.lat_deg, sub.lon_deg, false};

                if (sub.lat_deg < bb_lat_lo || sub.lat_deg > bb_lat_hi ||
                    sub.lon_deg < bb_lon_lo || sub.lon_deg > bb_lon_hi) {
                    continue;
                }
                const bool in_aoi = grid.in_area_of_interest(sub.lat_deg, sub.lon_deg);
                if (!in_aoi) continue;
                track[st].in_aoi = true;
                if (!grid.in_exclusion(sub.lat_deg, sub.lon_deg)) acc.colsum[st] += 1;

                const double r = ecef.vec().norm();
                const double swath = swath_width_km(r - earth.radius_km, params.sensor.half_fov_deg);
                const double capture = swath * 0.5;
                index.visit_circle(sub.lat_deg, sub.lon_deg, capture,
                                   [&](std::uint32_t id, const LatLon& p, const UnitVec&) {
                                       if (great_circle_km(sub.lat_deg, sub.lon_deg, p.lat_deg,
                                                           p.lon_deg, earth.radius_km) <= capture) {
                                           acc.set_cover(id, st);
                                       }
                                   });
            }

            // Sweep pass: min-guaranteed-swath band crossings between samples.
            for (std::size_t st = 0; st + 1 < steps; ++st) {
                if (!track[st].in_aoi && !track[st + 1].in_aoi) continue;
                const UnitVec u1 = unit_from_latlon(track[st].lat, track[st].lon);
                const UnitVec u2 = unit_from_latlon(track[st + 1].lat, track[st + 1].lon);
                const Vec3 a{u1.x, u1.y, u1.z}, b{u2.x, u2.y, u2.z};
                Vec3 n = a.cross(b);
                const double nn = n.norm();
                if (nn < 1e-12) continue;
                n = n * (1.0 / nn);
                const double ang12 = std::acos(std::min(1.0, std::max(-1.0, a.dot(b))));

                const double pad = rad2deg(sweep_capture_km / earth.radius_km);
                const double lat_lo = std::min(track[st].lat, track[st + 1].lat) - pad;
                const double lat_hi = std::max(track[st].lat, track[st + 1].lat) + pad;
                const double phi_max =
                    std::min(89.0, std::max(std::fabs(lat_lo), std::fabs(lat_hi)));
                const double cpad = pad / std::cos(deg2rad(phi_max));
                const double lon_lo = std::min(track[st].lon, track[st + 1].lon) - cpad;
                const double lon_hi = std::max(track[st].lon, track[st + 1].lon) + cpad;

                index.visit_box(lat_lo, lat_hi, lon_lo, lon_hi,
                                [&](std::uint32_t id, const LatLon&, const UnitVec& gu) {
                    const Vec3 g{gu.x, gu.y, gu.z};
                    if (std::fabs(n.dot(g)) > sin_sweep) return;
                    if (a.cross(g).dot(n) < 0.0 || g.cross(b).dot(n) < 0.0) return;
                    const double ang1 = std::acos(std::min(1.0, std::max(-1.0, a.dot(g))));
                    const double frac = ang12 > 0.0 ? ang1 / ang12 : 0.0;
                    const double t_event = (static_cast<double>(st) + frac) * params.dt_s;
                    auto it = last_event.find(id);
                    if (it != last_event.end() && t_event - it->second < 1.5 * params.dt_s) {
                        it->second = t_event;
                        return;  // same pass continuing across a sample boundary
                    }
                    last_event[id] = t_event;
                    acc.sweep_events.push_back({id, static_cast<float>(t_event)});
                });
            }
        }
        return acc;
    };

    std::vector<Accum> parts;
    parts.reserve(static_cast<std::size_t>(n_threads));
    if (n_threads == 1) {
        parts.push_back(worker(0, n_sats));
    } else {
        std::vector<std::future<Accum>> futs;
        const std::size_t chunk = (n_sats + static_cast<std::size_t>(n_threads) - 1) /
                                  static_cast<std::size_t>(n_threads);
        for (int k = 0; k < n_threads; ++k) {
            const std::size_t lo = static_cast<std::size_t>(k) * chunk;
            const std::size_t hi = std::min(n_sats, lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, worker, lo, hi));
        }
        for (auto& f : futs) parts.push_back(f.get());
    }

    // Deterministic merges: integer adds, bitwise ORs, then one global sort.
    std::vector<std::uint64_t> colsum(steps, 0);
    std::vector<std::uint64_t> cover(n_pts * words, 0);
    std::vector<SweepEvent> events;
    for (const auto& part : parts) {
        for (std::size_t i = 0; i < steps; ++i) colsum[i] += part.colsum[i];
        for (std::size_t i = 0; i < cover.size(); ++i) cover[i] |= part.cover[i];
        events.insert(events.end(), part.sweep_events.begin(), part.sweep_events.end());
    }
    std::sort(events.begin(), events.end(), [](const SweepEvent& a, const SweepEvent& b) {
        if (a.point_id != b.point_id) return a.point_id < b.point_id;
        return a.t_s < b.t_s;
    });

    CoverageReport rep;
    rep.n_sats = static_cast<long>(n_sats);
    rep.p_total = static_cast<long>(n_inc);
    rep.central_total = static_cast<long>(n_exc);
    rep.dt_s = params.dt_s;
    rep.day_length_s = params.day_length_s;

    // C: average of the instance-matrix column sums.
    std::uint64_t total_instances = 0;
    for (auto v : colsum) total_instances += v;
    rep.c_mean = static_cast<double>(total_instances) / static_cast<double>(steps);

    // R: mean gap between consecutive transits of the constellation union.
    // Gaps at the two ends of the day are not counted. With no observed gap
    // the revisit is 0 when anything was seen, a full day otherwise.
    {
        std::vector<std::pair<std::size_t, std::size_t>> runs;
        std::size_t st = 0;
        while (st < steps) {
            if (colsum[st] == 0) {
                ++st;
                continue;
            }
            std::size_t end = st;
            while (end + 1 < steps && colsum[end + 1] > 0) ++end;
            runs.emplace_back(st, end);
            st = end + 1;
        }
        rep.transit_count = static_cast<int>(runs.size());
        if (runs.size() >= 2) {
            double s = 0.0;
            for (std::size_t k = 1; k < runs.size(); ++k) {
                s += static_cast<double>(runs[k].first - runs[k - 1].second - 1) * params.dt_s;
            }
            rep.r_union_s = s / static_cast<double>(runs.size() - 1);
        } else {
            rep.r_union_s = runs.empty() ? params.day_length_s : 0.0;
        }
    }

    // Per-point statistics from the hit bitmaps.
    auto point_runs = [&](std::size_t pid, std::vector<std::size_t>& starts,
                          std::vector<std::size_t>& ends) {
        starts.clear();
        ends.clear();
        bool prev = false;
        for (std::size_t st = 0; st < steps; ++st) {
            const bool cur = (cover[pid * words + st / 64] >> (st % 64)) & 1ull;
            if (cur && !prev) starts.push_back(st);
            if (!cur && prev) ends.push_back(st - 1);
            prev = cur;
        }
        if (prev) ends.push_back(steps - 1);
    };

    rep.point_hits.assign(n_inc, 0);
    std::vector<double> inc_means, exc_means;
    std::vector<std::size_t> starts, ends;
    long covered_inc = 0, covered_exc = 0;
    for (std::size_t pid = 0; pid < n_pts; ++pid) {
        std::uint32_t hits = 0;
        for (std::size_t w = 0; w < words; ++w) {
            hits += static_cast<std::uint32_t>(__builtin_popcountll(cover[pid * words + w]));
        }
        const bool is_inc = pid < n_inc;
        if (is_inc) rep.point_hits[pid] = hits;
        if (hits == 0) continue;
        if (is_inc) {
            ++covered_inc;
        } else {
            ++covered_exc;
        }
        point_runs(pid, starts, ends);
        if (starts.size() < 2) continue;
        double s = 0.0;
        for (std::size_t k = 1; k < starts.size(); ++k) {
            s += static_cast<double>(starts[k] - ends[k - 1] - 1) * params.dt_s;
        }
        (is_inc ? inc_means : exc_means).push_back(s / static_cast<double>(starts.size() - 1));
    }
    rep.p_cov = covered_inc;
    rep.central_covered = covered_exc;
    rep.coverage_fraction =
        n_inc > 0 ? static_cast<double>(covered_inc) / static_cast<double>(n_inc) : 0.0;
    rep.point_revisit_sampled_mean_s = mean_or(inc_means, 0.0);
    rep.central_revisit_sampled_mean_s = mean_or(exc_means, 0.0);

    // Sweep revisit: cluster each point's event times at dt resolution, then
    // average the inter-visit gaps.
    {
        std::vector<double> inc_sweep, exc_sweep;
        std::size_t i = 0;
        while (i < events.size()) {
            std::size_t j = i;
            while (j < events.size() && events[j].point_id == events[i].point_id) ++j;
            double last_kept = events[i].t_s;
            double gap_sum = 0.0;
            int n_gaps = 0;
            for (std::size_t k = i + 1; k < j; ++k) {
                const double t = events[k].t_s;
                if (t - last_kept >= params.dt_s) {
                    gap_sum += t - last_kept;
                    ++n_gaps;
                    last_kept = t;
                }
            }
            if (n_gaps > 0) {
                (events[i].point_id < n_inc ? inc_sweep : exc_sweep)
                    .push_back(gap_sum / n_gaps);
            }
            i = j;
        }
        rep.point_revisit_sweep_mean_s = mean_or(inc_sweep, 0.0);
        rep.central_revisit_sweep_mean_s = mean_or(exc_sweep, 0.0);
    }

    // Hourly instance counts (Figure-4 style export).
    for (std::size_t st = 0; st < steps; ++st) {
        const double t = static_cast<double>(st) * params.dt_s;
        if (std::fmod(t, 3600.0) == 0.0) {
            rep.hourly_visible.push_back(static_cast<int>(colsum[st]));
        }
    }

    // Worst-case swath across the constellation (perigee altitude).
    double swath_min = std::numeric_limits<double>::infinity();
    for (const auto& el : constellation.sats) {
        const double h_min = el.a_km * (1.0 - el.e) - earth.radius_km;
        swath_min = std::min(swath_min, h_min > 0.0
                                            ? swath_width_km(h_min, params.sensor.half_fov_deg)
                                            : 0.0);
    }
    rep.swath_min_km = swath_min;
    rep.swath_ok = swath_min >= 2.0 * grid.config().spacing_km;

    rep.zero_coverage = (rep.c_mean <= 0.0) || (rep.p_cov == 0);
    if (rep.zero_coverage) {
        rep.fitness = kInfiniteFitness;
    } else {
        rep.fitness = params.w_c / rep.c_mean + params.w_r * (rep.r_union_s / 60.0) +
                      params.w_p / static_cast<double>(rep.p_cov) +
                      params.w_n * static_cast<double>(rep.n_sats);
    }
    return rep;
}

std::string CoverageReport::to_json(bool include_point_hits) const {
    json j{
        {"c_mean", c_mean},
        {"p_cov", p_cov},
        {"p_total", p_total},
        {"coverage_fraction", coverage_fraction},
        {"r_union_s", r_union_s},
        {"transit_count", transit_count},
        {"n_sats", n_sats},
        {"fitness", std::isfinite(fitness) ? json(fitness) : json("inf")},
        {"zero_coverage", zero_coverage},
        {"swath_ok", swath_ok},
        {"swath_min_km", swath_min_km},
        {"point_revisit_sampled_mean_s", point_revisit_sampled_mean_s},
        {"point_revisit_sweep_mean_s", point_revisit_sweep_mean_s},
        {"central_covered", central_covered},
        {"central_total", central_total},
        {"central_revisit_sampled_mean_s", central_revisit_sampled_mean_s},
        {"central_revisit_sweep_mean_s", central_revisit_sweep_mean_s},
        {"hourly_visible", hourly_visible},
        {"dt_s", dt_s},
        {"day_length_s", day_length_s},
    };
    if (include_point_hits) j["point_hits"] = point_hits;
    return j.dump(2);
}

}  // namespace firesat::coverage
