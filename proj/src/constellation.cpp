#include "firesat/constellation.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace firesat::constellation {

using nlohmann::json;

std::string WalkerChromosome::to_json() const {
    json j{
        {"a_km", a_km},          {"e", e},
        {"i_deg", i_deg},        {"planes", planes},
        {"phasing", phasing},    {"per_plane", sats_per_plane},
    };
    return j.dump(2);
}

WalkerChromosome WalkerChromosome::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("chromosome JSON parse error: ") + e.what());
    }
    WalkerChromosome c;
    try {
        c.a_km = j.at("a_km").get<double>();
        c.e = j.at("e").get<double>();
        c.i_deg = j.at("i_deg").get<double>();
        c.planes = j.at("planes").get<int>();
        c.phasing = j.at("phasing").get<int>();
        c.sats_per_plane = j.at("per_plane").get<int>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("chromosome JSON missing field: ") + e.what());
    }
    return c;
}

namespace {

template <typename T>
void check(std::vector<Violation>& out, const char* gene, T value, T lo, T hi) {
    if (value < lo || value > hi) {
        std::ostringstream bound, msg;
        bound << "[" << lo << ", " << hi << "]";
        msg << gene << " = " << value << " outside " << bound.str();
        out.push_back({gene, static_cast<double>(value), bound.str(), msg.str()});
    }
}

}  // namespace

std::vector<Violation> validate(const WalkerChromosome& c, const GeneBounds& b,
                                bool allow_f_up_to_planes) {
    std::vector<Violation> out;
    check(out, "a_km", c.a_km, b.a_min_km, b.a_max_km);
    check(out, "e", c.e, b.e_min, b.e_max);
    check(out, "i_deg", c.i_deg, b.i_min_deg, b.i_max_deg);
    check(out, "planes", c.planes, b.p_min, b.p_max);
    const int f_hi = allow_f_up_to_planes ? std::max(b.f_max, c.planes) : b.f_max;
    check(out, "phasing", c.phasing, b.f_min, f_hi);
    check(out, "per_plane", c.sats_per_plane, b.n_min, b.n_max);
    if (c.total() > b.max_total) {
        std::ostringstream bound, msg;
        bound << "<= " << b.max_total;
        msg << "total satellites N = " << c.total() << " exceeds " << b.max_total;
        out.push_back({"total", static_cast<double>(c.total()), bound.str(), msg.str()});
    }
    return out;
}

Constellation expand(const WalkerChromosome& c, const GeneBounds& bounds,
                     bool allow_f_up_to_planes) {
    auto violations = validate(c, bounds, allow_f_up_to_planes);
    if (!violations.empty()) {
        throw BoundViolationError(violations.front().message);
    }

    Constellation out;
    out.source = c;
    const long total = c.total();
    out.sats.reserve(static_cast<std::size_t>(total));
    for (int p = 0; p < c.planes; ++p) {
        const double raan = wrap360(p * 360.0 / c.planes);
        const double ma = wrap360(p * 360.0 * c.phasing / static_cast<double>(total));
        for (int k = 0; k < c.sats_per_plane; ++k) {
            kepler::OrbitalElements el;
            el.a_km = c.a_km;
            el.e = c.e;
            el.i_deg = c.i_deg;
            el.raan_deg = raan;
            el.argp_deg = wrap360(k * 360.0 / c.sats_per_plane);
            el.ma0_deg = ma;
            out.sats.push_back(el);
        }
    }
    return out;
}

std::string Constellation::to_csv() const {
    std::ostringstream os;
    os << "sat_index,plane,slot,a_km,e,i_deg,raan_deg,argp_deg,ma_deg\n";
    os.precision(12);
    for (std::size_t idx = 0; idx < sats.size(); ++idx) {
        const auto& el = sats[idx];
        const std::size_t plane = idx / static_cast<std::size_t>(source.sats_per_plane);
        const std::size_t slot = idx % static_cast<std::size_t>(source.sats_per_plane);
        os << idx << ',' << plane << ',' << slot << ',' << el.a_km << ',' << el.e << ','
           << el.i_deg << ',' << el.raan_deg << ',' << el.argp_deg << ',' << el.ma0_deg << '\n';
    }
    return os.str();
}

}  // namespace firesat::constellation
