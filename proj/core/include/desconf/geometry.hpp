#pragma once

#include "desconf/field.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace desconf {

/// Largest supported projective dimension.
inline constexpr int kMaxDim = 4;
inline constexpr int kMaxCoords = kMaxDim + 1;

/// Homogeneous coordinate vector; entries past the host's n+1 are zero.
using Coords = std::array<Elem, kMaxCoords>;

/// Canonical point of PG(n,q): first nonzero coordinate is 1. `index` is the rank of the
/// coordinate tuple in lexicographic order among all canonical points of the space.
struct Point {
    Coords coords{};
    std::uint32_t index = 0;
    std::uint8_t n = 0;

    Elem operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
    bool operator==(const Point& o) const noexcept { return n == o.n && index == o.index; }
    auto operator<=>(const Point& o) const noexcept { return index <=> o.index; }
};

class Subspace;

/// PG(n,q) for 2 <= n <= 4. Cheap to copy; all copies share the same field.
class ProjectiveSpace {
public:
    ProjectiveSpace(std::shared_ptr<const Field> field, int n);

    const Field& field() const noexcept { return *impl_->field; }
    const std::shared_ptr<const Field>& field_ptr() const noexcept { return impl_->field; }
    int dimension() const noexcept { return impl_->n; }
    int coord_count() const noexcept { return impl_->n + 1; }
    unsigned q() const noexcept { return impl_->field->order(); }
    std::uint32_t point_count() const noexcept { return impl_->point_count; }

    /// Canonical representative of the span of `raw`. Throws ZeroVector.
    Point normalize(std::span<const Elem> raw) const;
    Point normalize(const Coords& raw) const { return normalize(std::span(raw.data(), coord_count())); }
    /// Point with the given rank in canonical order.
    Point point(std::uint32_t index) const;
    /// Parses "c0,c1,...,cn" (element indices) and normalizes.
    Point parse_point(std::string_view text) const;

    std::vector<Point> points() const;
    /// All lines, sorted by canonical basis order.
    std::vector<Subspace> lines() const;
    /// All lines through p, sorted.
    std::vector<Subspace> lines_through(const Point& p) const;
    /// All hyperplanes, sorted.
    std::vector<Subspace> hyperplanes() const;
    /// Hyperplane {x : sum normal_i x_i = 0}.
    Subspace hyperplane(const Coords& normal) const;
    /// The hyperplane at infinity x_n = 0.
    Subspace standard_hyperplane() const;
    Subspace whole() const;

    bool operator==(const ProjectiveSpace& o) const noexcept;

private:
    struct Impl {
        std::shared_ptr<const Field> field;
        int n = 0;
        std::uint32_t point_count = 0;
        std::array<std::uint32_t, kMaxCoords> block_start{};  // by leading position
    };
    std::shared_ptr<const Impl> impl_;
};

std::string format_coords(const Point& p);

/// A flat of PG(n,q) stored as the reduced row-echelon basis of its vector subspace.
/// Equality is basis equality within one host space.
class Subspace {
public:
    Subspace(ProjectiveSpace space, std::span<const Coords> rows);

    const ProjectiveSpace& space() const noexcept { return space_; }
    /// Projective dimension: 0 point, 1 line, 2 plane, 3 solid.
    int dim() const noexcept { return rank_ - 1; }
    int rank() const noexcept { return rank_; }
    Coords row(int r) const;
    std::vector<Coords> rows() const;

    bool contains(const Point& p) const;
    bool contains(const Subspace& s) const;
    std::vector<Point> points() const;
    std::size_t point_count() const;

    /// Coordinates of p with respect to this basis (the pivot-column entries), so a
    /// hyperplane of PG(n,q) is identified with PG(n-1,q). nullopt if p is not incident.
    std::optional<Coords> local_coords(const Point& p) const;
    /// Inverse of local_coords: the point sum local_i * row_i of the host space.
    Point from_local(const Coords& local) const;

    /// Basis of the orthogonal complement under the standard dot product.
    std::vector<Coords> annihilator() const;

    std::string to_string() const;

    bool operator==(const Subspace& o) const noexcept { return rank_ == o.rank_ && data_ == o.data_; }
    auto operator<=>(const Subspace& o) const noexcept {
        if (auto c = rank_ <=> o.rank_; c != 0) return c;
        return data_ <=> o.data_;
    }
    std::size_t hash() const noexcept;

private:
    ProjectiveSpace space_;
    std::uint8_t rank_ = 0;
    std::array<Elem, kMaxCoords * kMaxCoords> data_{};
};

/// Smallest flat containing every point. Throws MixedSpaces, or Parse for an empty input.
Subspace span(const ProjectiveSpace& space, std::span<const Point> points);
Subspace span(const ProjectiveSpace& space, std::initializer_list<Point> points);
/// Join of two flats.
Subspace join(const Subspace& a, const Subspace& b);
/// Intersection of two flats; nullopt when the vector subspaces meet only in 0.
std::optional<Subspace> meet(const Subspace& a, const Subspace& b);
bool incident(const Point& p, const Subspace& s);
/// Rank of a set of coordinate vectors.
int rank_of(const ProjectiveSpace& space, std::span<const Coords> vectors);
int rank_of(const ProjectiveSpace& space, std::span<const Point> points);

std::vector<Point> enumerate_points(const Subspace& s);
std::vector<Point> enumerate_points(const ProjectiveSpace& space);
std::vector<Subspace> enumerate_lines(const ProjectiveSpace& space);

/// AG(n,q): the space with one hyperplane removed. Defaults to x_n = 0 at infinity, where
/// affine points carry last coordinate 1 in their affine representation.
class AffineChart {
public:
    explicit AffineChart(ProjectiveSpace space);
    AffineChart(ProjectiveSpace space, Subspace at_infinity);

    const ProjectiveSpace& space() const noexcept { return space_; }
    const Subspace& at_infinity() const noexcept { return infinity_; }
    bool is_affine(const Point& p) const { return !infinity_.contains(p); }
    /// Affine points in canonical order; there are q^n of them.
    std::vector<Point> points() const;

private:
    ProjectiveSpace space_;
    Subspace infinity_;
};

std::vector<Point> affine_points(const AffineChart& chart);

/// Point of the standard chart with affine coordinates xs (length n); last coordinate 1.
Point affine_point(const ProjectiveSpace& space, std::initializer_list<unsigned> xs);

}  // namespace desconf

template <>
struct std::hash<desconf::Subspace> {
    std::size_t operator()(const desconf::Subspace& s) const noexcept { return s.hash(); }
};
