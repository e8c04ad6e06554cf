#pragma once

#include "desconf/geometry.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace desconf {

// Labels. Points of a Desargues configuration are named by pairs (ij) and blocks by triples
// [ijk] of symbols from {1,...,5}; point (ij) lies on block [abc] iff {i,j} is a subset of
// {a,b,c}. Both label sets are indexed 0..9 in lexicographic order.

struct PairLabel {
    std::uint8_t i = 1, j = 2;  // i < j

    static PairLabel of(int a, int b);
    static PairLabel from_index(int index);
    static PairLabel parse(std::string_view text);  // "12"
    int index() const noexcept;
    std::string to_string() const;
    bool contains(int symbol) const noexcept { return i == symbol || j == symbol; }
    auto operator<=>(const PairLabel&) const = default;
};

struct TripleLabel {
    std::uint8_t i = 1, j = 2, k = 3;  // i < j < k

    static TripleLabel of(int a, int b, int c);
    static TripleLabel from_index(int index);
    static TripleLabel parse(std::string_view text);  // "123"
    int index() const noexcept;
    std::string to_string() const;
    bool contains(PairLabel p) const noexcept { return has(p.i) && has(p.j); }
    bool has(int symbol) const noexcept { return i == symbol || j == symbol || k == symbol; }
    /// The three points (ij), (ik), (jk) of the block.
    std::array<PairLabel, 3> points() const noexcept;
    auto operator<=>(const TripleLabel&) const = default;
};

/// Complementary label: (ij) <-> [uvw] with {i,j,u,v,w} = {1,...,5}.
TripleLabel polarity(PairLabel x) noexcept;
PairLabel polarity(TripleLabel x) noexcept;

struct Triangle {
    std::array<Point, 3> vertices;
};

/// Label-free identity of a configuration: its point set and block set, as sorted point
/// indices of the host space.
struct ConfigKey {
    std::array<std::uint32_t, 10> points{};
    std::array<std::array<std::uint32_t, 3>, 10> blocks{};

    bool operator==(const ConfigKey&) const = default;
    auto operator<=>(const ConfigKey&) const = default;
    std::size_t hash() const noexcept;
};

struct ConfigKeyHash {
    std::size_t operator()(const ConfigKey& k) const noexcept { return k.hash(); }
};

/// A non-degenerate Desargues configuration in PG(2,q) or PG(3,q): ten distinct labelled
/// points, ten blocks, ten distinct blocklines. Immutable once constructed.
class Configuration {
public:
    /// Validates and builds the configuration whose point (ij) is points[(ij).index()].
    /// Throws WrongDimension for a host other than PG(2,q) or PG(3,q), Degenerate when a
    /// block is not collinear or points/blocklines coincide.
    static Configuration from_points(const ProjectiveSpace& host, const std::array<Point, 10>& points);

    const ProjectiveSpace& host() const noexcept { return host_; }
    const Point& point(PairLabel x) const noexcept { return points_[x.index()]; }
    const Subspace& blockline(TripleLabel x) const noexcept { return blocklines_[x.index()]; }
    const std::array<Point, 10>& points() const noexcept { return points_; }
    /// True iff the ten points span a solid.
    bool spatial() const noexcept { return spatial_; }

    /// Same configuration with symbols renamed by perm (perm[s-1] is the new name of s).
    Configuration relabeled(const std::array<int, 5>& perm) const;

private:
    Configuration(ProjectiveSpace host, std::array<Point, 10> points, std::vector<Subspace> blocklines,
                  bool spatial);

    ProjectiveSpace host_;
    std::array<Point, 10> points_;
    std::vector<Subspace> blocklines_;
    bool spatial_ = false;
};

/// Configuration of two triangles ABC, A'B'C' in perspective from V, labelled V=(12),
/// A=(13), A'=(23), B=(14), B'=(24), C=(15), C'=(25), P=AB.A'B'=(34), Q=BC.B'C'=(45),
/// R=CA.C'A'=(35).
/// Throws NotInPerspective if some line AA', BB', CC' misses V, Degenerate for collinear
/// triangles or coincident points or blocklines, and InternalDefect should P, Q, R fail to
/// be collinear.
Configuration perspective_config(const ProjectiveSpace& host, const Point& vertex, const Triangle& t1,
                                 const Triangle& t2);

/// Five points with no four coplanar, in PG(3,q) or PG(4,q).
class FiveCompressor {
public:
    /// Throws WrongDimension for other hosts and Degenerate if four points are coplanar.
    FiveCompressor(ProjectiveSpace space, const std::array<Point, 5>& points);

    const ProjectiveSpace& space() const noexcept { return space_; }
    const std::array<Point, 5>& points() const noexcept { return points_; }
    /// Point P_s for symbol s in 1..5.
    const Point& point(int symbol) const noexcept { return points_[symbol - 1]; }
    /// True iff the points span PG(4,q).
    bool is_arc() const noexcept { return arc_; }

    /// Unordered identity (sorted point indices).
    std::array<std::uint32_t, 5> key() const noexcept;

private:
    ProjectiveSpace space_;
    std::array<Point, 5> points_;
    bool arc_ = false;
};

/// Every 4-subset has rank 4. Throws WrongDimension outside PG(3,q) and PG(4,q).
bool is_five_compressor(const ProjectiveSpace& space, std::span<const Point> points);
/// Compressor that additionally spans PG(4,q). Throws WrongDimension outside PG(4,q).
bool is_five_arc(const ProjectiveSpace& space, std::span<const Point> points);

/// Sections S by the hyperplane pi: (ij) = P_iP_j . pi, blockline [ijk] = <P_i,P_j,P_k> . pi.
/// The result lives in PG(n-1,q) via pi's basis coordinates (for x_n = 0 this drops the last
/// coordinate). Throws WrongDimension if pi is not a hyperplane and CompressorMeetsHyperplane.
Configuration section_compressor(const FiveCompressor& s, const Subspace& pi);
/// As above, with the target space supplied (must be PG(n-1,q) over the same field).
Configuration section_compressor(const FiveCompressor& s, const Subspace& pi, const ProjectiveSpace& target);

/// The two 5-compressors through P1, P2 that section to d, with the labels of d read
/// relative to the vertex: for V=(ab) and c<d<e the remaining symbols,
/// S1 = {P1, P2, P1A.P2A', P1B.P2B', P1C.P2C'} and S2 swaps primed and unprimed, where
/// A=(ac), A'=(bc), B=(ad), B'=(bd), C=(ae), C'=(be). P1 sits at symbol a, P2 at b.
/// pi must be a hyperplane of the lift space identified with d's host via local coordinates.
/// Throws BadApexLine when P1, P2 and V are not distinct and collinear or a P_i lies on pi.
std::pair<FiveCompressor, FiveCompressor> lift_to_compressors(const Configuration& d, PairLabel vertex,
                                                              const Point& p1, const Point& p2,
                                                              const Subspace& pi);

/// Labels (uv) whose point lies on the blockline of polarity((uv)), sorted.
std::vector<PairLabel> self_conjugate_points(const Configuration& d);

/// Points of the configuration on each blockline, indexed like TripleLabel.
struct BlocklineStructure {
    std::array<Point, 10> points;
    std::array<std::vector<PairLabel>, 10> subsets;
};

BlocklineStructure blockline_structure(const Configuration& d);

ConfigKey canonical_key(const Configuration& d);

/// The ten blocklines in canonical order, dropping the labels.
std::vector<Subspace> sorted_blocklines(const Configuration& d);

}  // namespace desconf
