#pragma once

#include "desconf/configuration.hpp"
#include "desconf/geometry.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace desconf {

/// Subset of the 15 points of PG(3,2); bit i is the point with canonical index i.
struct PointSet {
    std::uint32_t bits = 0;

    bool contains(std::uint32_t index) const noexcept { return (bits >> index) & 1u; }
    int size() const noexcept { return std::popcount(bits); }
    auto operator<=>(const PointSet&) const = default;
};

PointSet point_set_of(const Configuration& d);
PointSet point_set_of(std::span<const Point> points);

/// Tangential 2-block test over PG(3,2): (a) every line meets S and (b) every point of S is
/// on a line meeting S only there. Throws WrongSpace for any other host.
bool is_tangential_two_block(const ProjectiveSpace& space, PointSet s);

struct TwoBlockReport {
    std::uint32_t total_subsets = 0;
    std::uint32_t hyperplane = 0;
    std::uint32_t spatial_desargues = 0;
    std::uint32_t other = 0;
    /// Unclassified tangential 2-blocks, at most ten, in increasing order.
    std::vector<PointSet> other_examples;
    /// Every tangential 2-block found in the SPATIAL_DESARGUES bucket, sorted.
    std::vector<PointSet> spatial_sets;
    /// A nonempty OTHER bucket means the two-condition definition admits sets beyond planes
    /// and spatial configurations, i.e. a minimality clause would be needed.
    bool definition_gap() const noexcept { return other != 0; }
};

/// Scans all 2^15 subsets of PG(3,2) and buckets the tangential 2-blocks as hyperplanes,
/// point sets of spatial Desargues configurations (from the spatial census), or other.
TwoBlockReport classify_two_blocks(unsigned jobs = 0);

}  // namespace desconf
