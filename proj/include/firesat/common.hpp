// Shared primitives: error types, angle helpers, 3-vectors, portable RNG.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace firesat {

// Error codes shared with the C API layer (see firesat.h).
enum class ErrorCode : int {
    invalid_argument = 1,
    bound_violation = 2,
    iteration_limit = 3,
    degenerate_region = 4,
    missing_channel = 5,
    non_positive_radiance = 6,
    infeasible_spec = 7,
    geometry = 8,
    evaluator_failure = 9,
    io_failure = 10,
    format = 11,
    fixture_missing = 12,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct IterationLimitError : Error {
    explicit IterationLimitError(const std::string& w) : Error(ErrorCode::iteration_limit, w) {}
};
struct BoundViolationError : Error {
    explicit BoundViolationError(const std::string& w) : Error(ErrorCode::bound_violation, w) {}
};
struct GeometryError : Error {
    explicit GeometryError(const std::string& w) : Error(ErrorCode::geometry, w) {}
};
struct DegenerateRegionError : Error {
    explicit DegenerateRegionError(const std::string& w) : Error(ErrorCode::degenerate_region, w) {}
};
struct MissingChannelError : Error {
    explicit MissingChannelError(const std::string& w) : Error(ErrorCode::missing_channel, w) {}
};
struct NonPositiveRadianceError : Error {
    explicit NonPositiveRadianceError(const std::string& w) : Error(ErrorCode::non_positive_radiance, w) {}
};
struct InfeasibleSpecError : Error {
    explicit InfeasibleSpecError(const std::string& w) : Error(ErrorCode::infeasible_spec, w) {}
};
struct EvaluatorFailureError : Error {
    explicit EvaluatorFailureError(const std::string& w) : Error(ErrorCode::evaluator_failure, w) {}
};
struct FormatError : Error {
    explicit FormatError(const std::string& w) : Error(ErrorCode::format, w) {}
};
struct FixtureMissingError : Error {
    explicit FixtureMissingError(const std::string& w) : Error(ErrorCode::fixture_missing, w) {}
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegPerRad = 180.0 / kPi;
inline constexpr double kRadPerDeg = kPi / 180.0;

inline double deg2rad(double d) { return d * kRadPerDeg; }
inline double rad2deg(double r) { return r * kDegPerRad; }

// Normalize an angle in degrees to [0, 360).
inline double wrap360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w;
}

// Normalize an angle in degrees to (-180, 180].
inline double wrap180(double deg) {
    double w = std::fmod(deg + 180.0, 360.0);
    if (w <= 0.0) w += 360.0;
    return w - 180.0;
}

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
    }
};

// Deterministic RNG with portable derived draws. std::mt19937_64 output is
// specified by the standard; the distributions below avoid the
// implementation-defined std::*_distribution classes so that seeded runs
// reproduce bit-identically across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi] inclusive, unbiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return lo;  // full 64-bit range
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    std::string serialize() const {
        std::ostringstream os;
        os << engine_;
        return os.str();
    }
    void deserialize(const std::string& state) {
        std::istringstream is(state);
        is >> engine_;
        if (!is) throw FormatError("invalid RNG state string");
    }

private:
    std::mt19937_64 engine_;
};

// FNV-1a, used for config hashes and population fingerprints.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

}  // namespace firesat
