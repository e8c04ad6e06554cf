#pragma once

#include "desconf/configuration.hpp"
#include "desconf/geometry.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace desconf {

using BigInt = boost::multiprecision::cpp_int;

enum class Quantity {
    P5Choices,
    ThetaPlanar,
    TotalPlanar,
    ThetaSpatial,
    TotalSpatial,
    SpatialThroughPoint,
    NaivePlanarThroughPoint,
};

inline constexpr Quantity kAllQuantities[] = {
    Quantity::P5Choices,    Quantity::ThetaPlanar,         Quantity::TotalPlanar,
    Quantity::ThetaSpatial, Quantity::TotalSpatial,        Quantity::SpatialThroughPoint,
    Quantity::NaivePlanarThroughPoint,
};

std::string_view to_string(Quantity quantity) noexcept;
/// Parses the upper-case tag, e.g. "TOTAL_PLANAR". Throws Parse.
Quantity parse_quantity(std::string_view tag);

// ---------------------------------------------------------------------------------------
// Closed forms. All throw InvalidOrder unless q is a prime power.

/// A counting formula before its final exact division.
struct Ratio {
    BigInt numerator;
    BigInt denominator;
};

Ratio formula(Quantity quantity, unsigned q);
/// numerator / denominator; throws InternalDefect if the division is not exact.
BigInt closed_form(Quantity quantity, unsigned q);

/// Placements of a fifth point completing four general points of AG(3,q): (q-2)(q^2-2q+2).
BigInt count_p5_choices(unsigned q);
/// 5-compressors of AG(3,q) through two fixed points.
BigInt theta_planar(unsigned q);
/// All Desargues configurations of PG(2,q).
BigInt total_planar(unsigned q);
/// 5-arcs of AG(4,q) through two fixed points.
BigInt theta_spatial(unsigned q);
/// All spatial Desargues configurations of PG(3,q).
BigInt total_spatial(unsigned q);
/// Spatial configurations through a point, counted from three lines through the vertex.
BigInt spatial_through_point_direct(unsigned q);
/// The plausible-looking planar through-point count that ignores self-conjugate points.
/// It is wrong for q >= 3 and kept to document the pitfall.
BigInt naive_planar_through_point(unsigned q);

// ---------------------------------------------------------------------------------------
// Brute-force oracles. These enumerate objects and validate them with the configuration
// module; they share nothing with the closed forms.

/// Largest q each exhaustive mode accepts. Exceeding one raises ScaleLimit.
struct ScaleLimits {
    unsigned planar_global = 4;
    unsigned planar_through = 5;
    unsigned spatial_global = 2;
    unsigned spatial_through = 3;
    unsigned compressors = 4;
    unsigned arcs = 3;
    unsigned p5 = 9;
    unsigned lift_exhaustive = 3;
    unsigned injectivity = 5;

    /// Sets one limit by key (e.g. "planar_global_max_q"). Throws Parse for unknown keys.
    void set(std::string_view key, unsigned value);
    /// Reads key=value lines; '#' starts a comment.
    static ScaleLimits load(const std::filesystem::path& path);
};

struct OracleOptions {
    /// Worker threads; 0 means the available hardware parallelism.
    unsigned jobs = 0;
    ScaleLimits limits;
    /// Keep the enumerated objects, not just their number.
    bool collect = false;
};

/// Fifth-point placements for the fixed general points (0,0,0), (1,0,0), (0,1,0), (0,0,1) of AG(3,q).
std::uint64_t brute_force_p5_choices(unsigned q, const OracleOptions& options = {});

struct CompressorCensus {
    std::uint64_t count = 0;
    /// Sorted by point indices when collected.
    std::vector<FiveCompressor> compressors;
};

/// Unordered completions {P3,P4,P5} of affine points P1, P2 to a 5-compressor of the chart's
/// affine part. The chart must be of PG(3,q) (compressors) or PG(4,q) (5-arcs, the spatial
/// count). Throws ScaleLimit beyond limits.compressors / limits.arcs.
CompressorCensus brute_force_compressors(const AffineChart& chart, const Point& p1, const Point& p2,
                                         const OracleOptions& options = {});

struct ConfigCensus {
    std::uint64_t count = 0;
    /// Distinct configurations sorted by canonical key, when collected.
    std::vector<Configuration> configurations;
};

/// Desargues configurations of PG(2,q), all of them or those through one point. Candidates
/// come from three lines through a vertex, a point pair on each and the pairings; each is
/// validated by perspective_config and deduplicated by canonical key.
ConfigCensus brute_force_planar_configs(const ProjectiveSpace& plane, const std::optional<Point>& through,
                                        const OracleOptions& options = {});

/// Spatial Desargues configurations of PG(3,q), built from triples of lines through a vertex
/// and kept when the ten points span the space.
ConfigCensus brute_force_spatial_configs(const ProjectiveSpace& space, const std::optional<Point>& through,
                                         const OracleOptions& options = {});

/// Every 5-compressor through P1, P2 with its other points off pi that sections to d.
/// Full scan of unordered triples of points off pi.
std::vector<FiveCompressor> exhaustive_lifts(const Configuration& d, const Point& p1, const Point& p2,
                                             const Subspace& pi, const OracleOptions& options = {});

struct InjectivityReport {
    unsigned q = 0;
    Point through;
    std::uint64_t configurations = 0;
    /// Distinct (point set, blockline set) pairs.
    std::uint64_t groups = 0;
    /// Pairs of configurations sharing points and blocklines but not blocks.
    std::vector<std::pair<ConfigKey, ConfigKey>> collisions;
};

/// Groups the configurations through a point by (point set, blockline set) and reports the
/// groups holding more than one block set.
InjectivityReport blockline_injectivity_check(const ProjectiveSpace& plane, const Point& through,
                                              const OracleOptions& options = {});

// ---------------------------------------------------------------------------------------
// Reports

struct CountReport {
    Quantity quantity = Quantity::TotalPlanar;
    unsigned q = 0;
    BigInt closed_form;
    std::optional<BigInt> brute_force;
    /// Set whenever brute_force is.
    std::optional<bool> agree;
    /// Canonical coordinates of the fixed point in through-point mode.
    std::optional<std::string> through_point;
    double elapsed_ms = 0;

    /// What the verdict should be: agreement, except for the naive count with q >= 3.
    bool expected_outcome() const;
};

CountReport count_report(Quantity quantity, unsigned q);

/// Runs the oracle matching `quantity`:
///   P5_CHOICES -> brute_force_p5_choices; THETA_PLANAR / THETA_SPATIAL -> compressor and
///   5-arc scans through fixed apex points; TOTAL_PLANAR / TOTAL_SPATIAL -> global censuses,
///   or through-point censuses compared with theta/2 when `through` is given;
///   SPATIAL_THROUGH_POINT and NAIVE_PLANAR_THROUGH_POINT -> through-point censuses (first
///   canonical point by default).
CountReport oracle_report(Quantity quantity, unsigned q, const std::optional<std::string>& through,
                          const OracleOptions& options = {});

}  // namespace desconf
