// Error taxonomy for the toolkit.  Every failure that is mathematically
// meaningful (degenerate input, tolerance violation, ...) gets its own type so
// callers can react precisely; plumbing failures use ParseError/ConfigError.
#pragma once

#include <stdexcept>
#include <string>

namespace preeb {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A vector/polynomial arity does not match the expected dimension.
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// Input is degenerate for the requested operation (zero polynomial,
// identically vanishing resultant, empty domain, ...).
struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& what) : Error(what) {}
};

// A constructed polynomial exceeds the total-degree cap.
struct DegreeOverflow : Error {
    explicit DegreeOverflow(const std::string& what) : Error(what) {}
};

// Two or more boundary constraints are near zero at one point, so the point
// cannot be attributed to a single boundary component.
struct AmbiguousBoundary : Error {
    explicit AmbiguousBoundary(const std::string& what) : Error(what) {}
};

// Two critical x-values collide within the separation tolerance; the sweep
// cannot order events reliably.
struct DegeneratePosition : Error {
    explicit DegeneratePosition(const std::string& what) : Error(what) {}
};

// A fiber at the requested level touches the boundary tangentially, so the
// level must not be used as a slab representative.
struct TangencyAtLevel : Error {
    explicit TangencyAtLevel(const std::string& what) : Error(what) {}
};

// Internal consistency failure while assembling the sweep graph.
struct SweepError : Error {
    explicit SweepError(const std::string& what) : Error(what) {}
};

// Clustering produced an inconsistent partition (radius too small for the
// sampling density, typically).
struct ClusterInstability : Error {
    explicit ClusterInstability(const std::string& what) : Error(what) {}
};

// A generator was asked for a geometrically impossible configuration.
struct GeometryError : Error {
    explicit GeometryError(const std::string& what) : Error(what) {}
};

// Membership / sampling bookkeeping contradicts itself (e.g. a negative
// constraint product at a point claimed to lie in the closed domain).
struct ClassifyError : Error {
    explicit ClassifyError(const std::string& what) : Error(what) {}
};

// A combinatorial routine received a graph above its supported size.
struct SizeLimit : Error {
    explicit SizeLimit(const std::string& what) : Error(what) {}
};

// Malformed serialized input.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Invalid configuration values (interval counts, overlaps, radii, ...).
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace preeb
