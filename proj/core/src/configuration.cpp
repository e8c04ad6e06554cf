#include "desconf/configuration.hpp"

#include "desconf/error.hpp"

#include <algorithm>

namespace desconf {

namespace {

constexpr std::array<std::array<std::uint8_t, 2>, 10> kPairs = {{
    {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5},
}};

constexpr std::array<std::array<std::uint8_t, 3>, 10> kTriples = {{
    {1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5},
    {1, 4, 5}, {2, 3, 4}, {2, 3, 5}, {2, 4, 5}, {3, 4, 5},
}};

Point as_point(const ProjectiveSpace& space, const Subspace& s) {
    if (s.dim() != 0) throw Error(ErrorCode::InternalDefect, "expected a point, got " + s.to_string());
    return space.normalize(s.row(0));
}

// Intersection of the line xy with the hyperplane u.v = 0, where neither x nor y is on it.
Point line_hits_hyperplane(const ProjectiveSpace& space, const Coords& u, const Point& x, const Point& y) {
    const Field& f = space.field();
    Elem ux = kZero, uy = kZero;
    for (int i = 0; i < space.coord_count(); ++i) {
        ux = f.add(ux, f.mul(u[i], x[i]));
        uy = f.add(uy, f.mul(u[i], y[i]));
    }
    Coords v{};
    for (int i = 0; i < space.coord_count(); ++i) v[i] = f.sub(f.mul(uy, x[i]), f.mul(ux, y[i]));
    return space.normalize(v);
}

}  // namespace

// ---------------------------------------------------------------------------------------
// Labels

PairLabel PairLabel::of(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a < 1 || b > 5 || a == b) throw Error(ErrorCode::Parse, "invalid pair label");
    return PairLabel{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
}

PairLabel PairLabel::from_index(int index) {
    return PairLabel{kPairs.at(index)[0], kPairs.at(index)[1]};
}

PairLabel PairLabel::parse(std::string_view text) {
    if (text.size() != 2) throw Error(ErrorCode::Parse, "pair label must have two digits");
    return of(text[0] - '0', text[1] - '0');
}

int PairLabel::index() const noexcept {
    // Lexicographic rank of (i,j) among pairs from {1..5}.
    static constexpr int kStart[5] = {0, 0, 4, 7, 9};
    return kStart[i] + (j - i - 1);
}

std::string PairLabel::to_string() const { return {char('0' + i), char('0' + j)}; }

TripleLabel TripleLabel::of(int a, int b, int c) {
    std::array<int, 3> s{a, b, c};
    std::sort(s.begin(), s.end());
    if (s[0] < 1 || s[2] > 5 || s[0] == s[1] || s[1] == s[2]) throw Error(ErrorCode::Parse, "invalid triple label");
    return TripleLabel{static_cast<std::uint8_t>(s[0]), static_cast<std::uint8_t>(s[1]),
                       static_cast<std::uint8_t>(s[2])};
}

TripleLabel TripleLabel::from_index(int index) {
    const auto& t = kTriples.at(index);
    return TripleLabel{t[0], t[1], t[2]};
}

TripleLabel TripleLabel::parse(std::string_view text) {
    if (text.size() != 3) throw Error(ErrorCode::Parse, "triple label must have three digits");
    return of(text[0] - '0', text[1] - '0', text[2] - '0');
}

int TripleLabel::index() const noexcept {
    for (int t = 0; t < 10; ++t) {
        if (kTriples[t][0] == i && kTriples[t][1] == j && kTriples[t][2] == k) return t;
    }
    return -1;
}

std::string TripleLabel::to_string() const { return {char('0' + i), char('0' + j), char('0' + k)}; }

std::array<PairLabel, 3> TripleLabel::points() const noexcept {
    return {PairLabel{i, j}, PairLabel{i, k}, PairLabel{j, k}};
}

TripleLabel polarity(PairLabel x) noexcept {
    std::array<std::uint8_t, 3> rest{};
    int n = 0;
    for (std::uint8_t s = 1; s <= 5; ++s) {
        if (!x.contains(s)) rest[n++] = s;
    }
    return TripleLabel{rest[0], rest[1], rest[2]};
}

PairLabel polarity(TripleLabel x) noexcept {
    std::array<std::uint8_t, 2> rest{};
    int n = 0;
    for (std::uint8_t s = 1; s <= 5; ++s) {
        if (!x.has(s)) rest[n++] = s;
    }
    return PairLabel{rest[0], rest[1]};
}

std::size_t ConfigKey::hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : points) h = (h ^ v) * 1099511628211ull;
    for (const auto& b : blocks) {
        for (auto v : b) h = (h ^ v) * 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------------------------------
// Configuration

Configuration::Configuration(ProjectiveSpace host, std::array<Point, 10> points, std::vector<Subspace> blocklines,
                             bool spatial)
    : host_(std::move(host)), points_(points), blocklines_(std::move(blocklines)), spatial_(spatial) {}

Configuration Configuration::from_points(const ProjectiveSpace& host, const std::array<Point, 10>& points) {
    if (host.dimension() != 2 && host.dimension() != 3) {
        throw Error(ErrorCode::WrongDimension, "configurations live in PG(2,q) or PG(3,q)");
    }
    for (int a = 0; a < 10; ++a) {
        if (points[a].n != host.dimension()) throw Error(ErrorCode::MixedSpaces, "point from another space");
        for (int b = 0; b < a; ++b) {
            if (points[a] == points[b]) {
                throw Error(ErrorCode::Degenerate, "points " + PairLabel::from_index(a).to_string() + " and " +
                                                       PairLabel::from_index(b).to_string() + " coincide");
            }
        }
    }
    std::vector<Subspace> blocklines;
    blocklines.reserve(10);
    for (int t = 0; t < 10; ++t) {
        const auto labels = TripleLabel::from_index(t).points();
        Subspace line = span(host, {points[labels[0].index()], points[labels[1].index()]});
        if (!line.contains(points[labels[2].index()])) {
            throw Error(ErrorCode::Degenerate, "block " + TripleLabel::from_index(t).to_string() + " is not collinear");
        }
        for (int s = 0; s < t; ++s) {
            if (blocklines[s] == line) {
                throw Error(ErrorCode::Degenerate, "blocklines " + TripleLabel::from_index(s).to_string() + " and " +
                                                       TripleLabel::from_index(t).to_string() + " coincide");
            }
        }
        blocklines.push_back(std::move(line));
    }
    // At most one extra point per blockline, and it is the pole.
    for (int t = 0; t < 10; ++t) {
        const TripleLabel block = TripleLabel::from_index(t);
        for (int x = 0; x < 10; ++x) {
            const PairLabel label = PairLabel::from_index(x);
            if (block.contains(label) || !blocklines[t].contains(points[x])) continue;
            if (label != polarity(block)) {
                throw Error(ErrorCode::InternalDefect, "blockline " + block.to_string() + " carries " +
                                                           label.to_string() + ", which is not its pole");
            }
        }
    }
    const bool spatial = rank_of(host, std::span<const Point>(points)) == 4;
    return Configuration(host, points, std::move(blocklines), spatial);
}

Configuration Configuration::relabeled(const std::array<int, 5>& perm) const {
    std::array<Point, 10> moved{};
    for (int x = 0; x < 10; ++x) {
        const PairLabel old = PairLabel::from_index(x);
        moved[PairLabel::of(perm[old.i - 1], perm[old.j - 1]).index()] = points_[x];
    }
    return from_points(host_, moved);
}

Configuration perspective_config(const ProjectiveSpace& host, const Point& v, const Triangle& t1, const Triangle& t2) {
    const auto& [a, b, c] = t1.vertices;
    const auto& [a2, b2, c2] = t2.vertices;
    for (const Point* x : {&v, &a, &b, &c, &a2, &b2, &c2}) {
        if (x->n != host.dimension()) throw Error(ErrorCode::MixedSpaces, "point from another space");
    }
    for (int s = 0; s < 3; ++s) {
        const Point& x = t1.vertices[s];
        const Point& x2 = t2.vertices[s];
        if (x == v || x2 == v || x == x2) throw Error(ErrorCode::Degenerate, "vertex coincides with its partner or V");
        if (!span(host, {x, x2}).contains(v)) {
            throw Error(ErrorCode::NotInPerspective, "corresponding vertices are not collinear with V");
        }
    }
    if (rank_of(host, std::span<const Point>(t1.vertices)) < 3 ||
        rank_of(host, std::span<const Point>(t2.vertices)) < 3) {
        throw Error(ErrorCode::Degenerate, "triangle vertices are collinear");
    }
    auto side_meet = [&](const Point& x, const Point& y, const Point& x2, const Point& y2) {
        const Subspace l1 = span(host, {x, y});
        const Subspace l2 = span(host, {x2, y2});
        if (l1 == l2) throw Error(ErrorCode::Degenerate, "corresponding sides coincide");
        auto m = meet(l1, l2);
        if (!m) throw Error(ErrorCode::InternalDefect, "corresponding sides are skew");
        return as_point(host, *m);
    };
    const Point p = side_meet(a, b, a2, b2);
    const Point q = side_meet(b, c, b2, c2);
    const Point r = side_meet(c, a, c2, a2);
    const std::array<Point, 3> axis{p, q, r};
    if (rank_of(host, std::span<const Point>(axis)) > 2) {
        throw Error(ErrorCode::InternalDefect, "P, Q, R are not collinear");
    }
    std::array<Point, 10> pts{};
    pts[PairLabel::of(1, 2).index()] = v;
    pts[PairLabel::of(1, 3).index()] = a;
    pts[PairLabel::of(2, 3).index()] = a2;
    pts[PairLabel::of(1, 4).index()] = b;
    pts[PairLabel::of(2, 4).index()] = b2;
    pts[PairLabel::of(1, 5).index()] = c;
    pts[PairLabel::of(2, 5).index()] = c2;
    pts[PairLabel::of(3, 4).index()] = p;
    pts[PairLabel::of(4, 5).index()] = q;
    pts[PairLabel::of(3, 5).index()] = r;
    return Configuration::from_points(host, pts);
}

// ---------------------------------------------------------------------------------------
// 5-compressors

bool is_five_compressor(const ProjectiveSpace& space, std::span<const Point> points) {
    if (space.dimension() != 3 && space.dimension() != 4) {
        throw Error(ErrorCode::WrongDimension, "5-compressors live in PG(3,q) or PG(4,q)");
    }
    if (points.size() != 5) throw Error(ErrorCode::Parse, "a 5-compressor has five points");
    for (int skip = 0; skip < 5; ++skip) {
        std::array<Point, 4> four{};
        int n = 0;
        for (int i = 0; i < 5; ++i) {
            if (i != skip) four[n++] = points[i];
        }
        if (rank_of(space, std::span<const Point>(four)) < 4) return false;
    }
    return true;
}

bool is_five_arc(const ProjectiveSpace& space, std::span<const Point> points) {
    if (space.dimension() != 4) throw Error(ErrorCode::WrongDimension, "5-arcs live in PG(4,q)");
    return is_five_compressor(space, points) && rank_of(space, points) == 5;
}

FiveCompressor::FiveCompressor(ProjectiveSpace space, const std::array<Point, 5>& points)
    : space_(std::move(space)), points_(points) {
    if (!is_five_compressor(space_, points_)) throw Error(ErrorCode::Degenerate, "four of the points are coplanar");
    arc_ = space_.dimension() == 4 && rank_of(space_, std::span<const Point>(points_)) == 5;
}

std::array<std::uint32_t, 5> FiveCompressor::key() const noexcept {
    std::array<std::uint32_t, 5> k{};
    for (int i = 0; i < 5; ++i) k[i] = points_[i].index;
    std::sort(k.begin(), k.end());
    return k;
}

Configuration section_compressor(const FiveCompressor& s, const Subspace& pi) {
    return section_compressor(s, pi, ProjectiveSpace(s.space().field_ptr(), s.space().dimension() - 1));
}

Configuration section_compressor(const FiveCompressor& s, const Subspace& pi, const ProjectiveSpace& target) {
    const ProjectiveSpace& space = s.space();
    if (!(pi.space() == space)) throw Error(ErrorCode::MixedSpaces, "hyperplane from another space");
    if (pi.dim() != space.dimension() - 1 || target.dimension() != pi.dim()) {
        throw Error(ErrorCode::WrongDimension, "sectioning needs a hyperplane and a matching target space");
    }
    for (const Point& p : s.points()) {
        if (pi.contains(p)) {
            throw Error(ErrorCode::CompressorMeetsHyperplane, "point " + format_coords(p) + " lies on the hyperplane");
        }
    }
    const Coords normal = pi.annihilator().front();
    std::array<Point, 10> pts{};
    for (int x = 0; x < 10; ++x) {
        const PairLabel label = PairLabel::from_index(x);
        const Point hit = line_hits_hyperplane(space, normal, s.point(label.i), s.point(label.j));
        pts[x] = target.normalize(*pi.local_coords(hit));
    }
    try {
        Configuration d = Configuration::from_points(target, pts);
        if (space.dimension() == 4 && d.spatial() != s.is_arc()) {
            throw Error(ErrorCode::InternalDefect, "spatial flag disagrees with the arc flag");
        }
        return d;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Degenerate) throw Error(ErrorCode::InternalDefect, e.what());
        throw;
    }
}

std::pair<FiveCompressor, FiveCompressor> lift_to_compressors(const Configuration& d, PairLabel vertex,
                                                              const Point& p1, const Point& p2,
                                                              const Subspace& pi) {
    const ProjectiveSpace& big = pi.space();
    if (pi.dim() != d.host().dimension() || big.dimension() != pi.dim() + 1) {
        throw Error(ErrorCode::WrongDimension, "the lift space must be one dimension above the configuration");
    }
    if (p1.n != big.dimension() || p2.n != big.dimension()) {
        throw Error(ErrorCode::MixedSpaces, "apex points from another space");
    }
    if (p1 == p2 || pi.contains(p1) || pi.contains(p2)) {
        throw Error(ErrorCode::BadApexLine, "apex points must be distinct and off the hyperplane");
    }
    auto up = [&](PairLabel x) { return pi.from_local(d.point(x).coords); };
    const Subspace apex_line = span(big, {p1, p2});
    if (!apex_line.contains(up(vertex))) throw Error(ErrorCode::BadApexLine, "P1, P2 and V are not collinear");

    const int a = vertex.i;
    const int b = vertex.j;
    std::array<Point, 5> s1{}, s2{};
    s1[a - 1] = s2[a - 1] = p1;
    s1[b - 1] = s2[b - 1] = p2;
    auto cross = [&](const Point& x, const Point& y) {
        auto m = meet(span(big, {p1, x}), span(big, {p2, y}));
        if (!m) throw Error(ErrorCode::InternalDefect, "lift lines are skew");
        return as_point(big, *m);
    };
    for (int r = 1; r <= 5; ++r) {
        if (r == a || r == b) continue;
        const Point unprimed = up(PairLabel::of(a, r));
        const Point primed = up(PairLabel::of(b, r));
        s1[r - 1] = cross(unprimed, primed);
        s2[r - 1] = cross(primed, unprimed);
    }
    auto build = [&](const std::array<Point, 5>& pts) {
        for (const Point& p : pts) {
            if (pi.contains(p)) throw Error(ErrorCode::InternalDefect, "lifted point lies on the hyperplane");
        }
        try {
            return FiveCompressor(big, pts);
        } catch (const Error& e) {
            throw Error(ErrorCode::InternalDefect, e.what());
        }
    };
    return {build(s1), build(s2)};
}

// ---------------------------------------------------------------------------------------
// Polarity and blockline analysis

std::vector<PairLabel> self_conjugate_points(const Configuration& d) {
    std::vector<PairLabel> out;
    for (int x = 0; x < 10; ++x) {
        const PairLabel label = PairLabel::from_index(x);
        if (d.blockline(polarity(label)).contains(d.point(label))) out.push_back(label);
    }
    return out;
}

BlocklineStructure blockline_structure(const Configuration& d) {
    BlocklineStructure out;
    out.points = d.points();
    for (int t = 0; t < 10; ++t) {
        const Subspace& line = d.blockline(TripleLabel::from_index(t));
        for (int x = 0; x < 10; ++x) {
            if (line.contains(d.points()[x])) out.subsets[t].push_back(PairLabel::from_index(x));
        }
    }
    return out;
}

ConfigKey canonical_key(const Configuration& d) {
    ConfigKey key;
    for (int x = 0; x < 10; ++x) key.points[x] = d.points()[x].index;
    std::sort(key.points.begin(), key.points.end());
    for (int t = 0; t < 10; ++t) {
        const auto labels = TripleLabel::from_index(t).points();
        auto& block = key.blocks[t];
        for (int s = 0; s < 3; ++s) block[s] = d.point(labels[s]).index;
        std::sort(block.begin(), block.end());
    }
    std::sort(key.blocks.begin(), key.blocks.end());
    return key;
}

std::vector<Subspace> sorted_blocklines(const Configuration& d) {
    std::vector<Subspace> out;
    for (int t = 0; t < 10; ++t) out.push_back(d.blockline(TripleLabel::from_index(t)));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace desconf
