#include "desconf/geometry.hpp"

#include "desconf/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

namespace desconf {

namespace {

// In-place reduced row echelon form over `f` on the first `cols` columns. Nonzero rows end
// up first; returns the rank.
int rref(std::span<Coords> m, int cols, const Field& f) {
    const int rows = static_cast<int>(m.size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = r;
        while (pivot < rows && m[pivot][c] == kZero) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        const Elem scale = f.inv(m[r][c]);
        for (int j = c; j < cols; ++j) m[r][j] = f.mul(m[r][j], scale);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == kZero) continue;
            const Elem factor = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
        }
        ++r;
    }
    return r;
}

std::uint32_t ipow(std::uint32_t b, int e) {
    std::uint32_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int leading(const Coords& v, int cols) {
    for (int i = 0; i < cols; ++i) {
        if (v[i] != kZero) return i;
    }
    return -1;
}

}  // namespace

// ---------------------------------------------------------------------------------------
// ProjectiveSpace

ProjectiveSpace::ProjectiveSpace(std::shared_ptr<const Field> field, int n) {
    if (n < 1 || n > kMaxDim) throw Error(ErrorCode::WrongDimension, "dimension must be in 1..4");
    auto impl = std::make_shared<Impl>();
    impl->field = std::move(field);
    impl->n = n;
    const std::uint32_t q = impl->field->order();
    std::uint32_t start = 0;
    for (int i = n; i >= 0; --i) {
        impl->block_start[i] = start;
        start += ipow(q, n - i);
    }
    impl->point_count = start;
    impl_ = std::move(impl);
}

bool ProjectiveSpace::operator==(const ProjectiveSpace& o) const noexcept {
    return impl_ == o.impl_ || (impl_->n == o.impl_->n && *impl_->field == *o.impl_->field);
}

Point ProjectiveSpace::normalize(std::span<const Elem> raw) const {
    const int cols = coord_count();
    if (static_cast<int>(raw.size()) != cols) {
        throw Error(ErrorCode::WrongDimension, "expected " + std::to_string(cols) + " coordinates");
    }
    const Field& f = field();
    int lead = -1;
    for (int i = 0; i < cols; ++i) {
        if (value(raw[i]) >= f.order()) throw Error(ErrorCode::Parse, "coordinate outside the field");
        if (lead < 0 && raw[i] != kZero) lead = i;
    }
    if (lead < 0) throw Error(ErrorCode::ZeroVector, "the zero vector is not a point");
    Point p;
    p.n = static_cast<std::uint8_t>(impl_->n);
    const Elem scale = f.inv(raw[lead]);
    const std::uint32_t q = f.order();
    std::uint32_t offset = 0;
    for (int i = 0; i < cols; ++i) {
        p.coords[i] = f.mul(raw[i], scale);
        if (i > lead) offset = offset * q + value(p.coords[i]);
    }
    p.index = impl_->block_start[lead] + offset;
    return p;
}

Point ProjectiveSpace::point(std::uint32_t index) const {
    if (index >= point_count()) throw Error(ErrorCode::Parse, "point index out of range");
    const int n = impl_->n;
    const std::uint32_t q = this->q();
    int lead = n;
    while (lead > 0 && index >= impl_->block_start[lead - 1]) --lead;
    Point p;
    p.n = static_cast<std::uint8_t>(n);
    p.index = index;
    p.coords[lead] = kOne;
    std::uint32_t offset = index - impl_->block_start[lead];
    for (int i = n; i > lead; --i, offset /= q) p.coords[i] = elem(offset % q);
    return p;
}

Point ProjectiveSpace::parse_point(std::string_view text) const {
    Coords raw{};
    int count = 0;
    while (true) {
        const auto comma = text.find(',');
        const std::string_view part = text.substr(0, comma);
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty() || count >= kMaxCoords) {
            throw Error(ErrorCode::Parse, "bad point '" + std::string(text) + "'");
        }
        raw[count++] = elem(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (count != coord_count()) {
        throw Error(ErrorCode::WrongDimension, "point has " + std::to_string(count) + " coordinates");
    }
    return normalize(raw);
}

std::vector<Point> ProjectiveSpace::points() const {
    std::vector<Point> out;
    out.reserve(point_count());
    for (std::uint32_t i = 0; i < point_count(); ++i) out.push_back(point(i));
    return out;
}

std::vector<Subspace> ProjectiveSpace::lines() const {
    std::unordered_set<Subspace> seen;
    const auto pts = points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) seen.insert(span(*this, {pts[i], pts[j]}));
    }
    std::vector<Subspace> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subspace> ProjectiveSpace::lines_through(const Point& p) const {
    std::vector<bool> covered(point_count(), false);
    covered[p.index] = true;
    std::vector<Subspace> out;
    for (std::uint32_t i = 0; i < point_count(); ++i) {
        if (covered[i]) continue;
        Subspace line = span(*this, {p, point(i)});
        for (const Point& x : line.points()) covered[x.index] = true;
        out.push_back(std::move(line));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subspace ProjectiveSpace::hyperplane(const Coords& normal) const {
    const Coords rows[1] = {normal};
    const Subspace dual(*this, rows);
    const auto basis = dual.annihilator();
    return Subspace(*this, basis);
}

std::vector<Subspace> ProjectiveSpace::hyperplanes() const {
    std::vector<Subspace> out;
    for (const Point& u : points()) out.push_back(hyperplane(u.coords));
    std::sort(out.begin(), out.end());
    return out;
}

Subspace ProjectiveSpace::standard_hyperplane() const {
    Coords normal{};
    normal[impl_->n] = kOne;
    return hyperplane(normal);
}

Subspace ProjectiveSpace::whole() const {
    std::vector<Coords> rows(coord_count());
    for (int i = 0; i < coord_count(); ++i) rows[i][i] = kOne;
    return Subspace(*this, rows);
}

std::string format_coords(const Point& p) {
    std::string out;
    for (int i = 0; i <= p.n; ++i) {
        if (i) out += ',';
        out += std::to_string(value(p.coords[i]));
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// Subspace

Subspace::Subspace(ProjectiveSpace space, std::span<const Coords> rows) : space_(std::move(space)) {
    const int cols = space_.coord_count();
    std::array<Coords, 2 * kMaxCoords> work{};
    std::vector<Coords> big;
    std::span<Coords> m;
    if (rows.size() <= work.size()) {
        std::copy(rows.begin(), rows.end(), work.begin());
        m = std::span(work.data(), rows.size());
    } else {
        big.assign(rows.begin(), rows.end());
        m = big;
    }
    const int r = rref(m, cols, space_.field());
    if (r == 0) throw Error(ErrorCode::ZeroVector, "a flat needs at least one nonzero vector");
    rank_ = static_cast<std::uint8_t>(r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < cols; ++j) data_[i * kMaxCoords + j] = m[i][j];
    }
}

Coords Subspace::row(int r) const {
    Coords out{};
    std::copy_n(data_.begin() + r * kMaxCoords, kMaxCoords, out.begin());
    return out;
}

std::vector<Coords> Subspace::rows() const {
    std::vector<Coords> out;
    for (int r = 0; r < rank_; ++r) out.push_back(row(r));
    return out;
}

bool Subspace::contains(const Point& p) const {
    const Field& f = space_.field();
    const int cols = space_.coord_count();
    Coords v = p.coords;
    for (int r = 0; r < rank_; ++r) {
        const Elem* row = data_.data() + r * kMaxCoords;
        int pc = 0;
        while (row[pc] == kZero) ++pc;
        const Elem factor = v[pc];
        if (factor == kZero) continue;
        for (int j = pc; j < cols; ++j) v[j] = f.sub(v[j], f.mul(factor, row[j]));
    }
    return leading(v, cols) < 0;
}

bool Subspace::contains(const Subspace& s) const {
    for (int r = 0; r < s.rank_; ++r) {
        if (!contains(space_.normalize(s.row(r)))) return false;
    }
    return true;
}

std::optional<Coords> Subspace::local_coords(const Point& p) const {
    if (!contains(p)) return std::nullopt;
    Coords local{};
    for (int r = 0; r < rank_; ++r) {
        const Elem* row = data_.data() + r * kMaxCoords;
        int pc = 0;
        while (row[pc] == kZero) ++pc;
        local[r] = p.coords[pc];
    }
    return local;
}

Point Subspace::from_local(const Coords& local) const {
    const Field& f = space_.field();
    const int cols = space_.coord_count();
    Coords v{};
    for (int r = 0; r < rank_; ++r) {
        if (local[r] == kZero) continue;
        for (int j = 0; j < cols; ++j) v[j] = f.add(v[j], f.mul(local[r], data_[r * kMaxCoords + j]));
    }
    return space_.normalize(v);
}

std::vector<Point> Subspace::points() const {
    std::vector<Point> out;
    const unsigned q = space_.q();
    // Enumerate canonical local vectors of PG(rank-1, q).
    for (int lead = 0; lead < rank_; ++lead) {
        const int free = rank_ - lead - 1;
        const std::uint32_t count = ipow(q, free);
        for (std::uint32_t c = 0; c < count; ++c) {
            Coords local{};
            local[lead] = kOne;
            std::uint32_t x = c;
            for (int i = rank_ - 1; i > lead; --i, x /= q) local[i] = elem(x % q);
            out.push_back(from_local(local));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Subspace::point_count() const {
    const std::size_t q = space_.q();
    return (ipow(static_cast<std::uint32_t>(q), rank_) - 1) / (q - 1);
}

std::vector<Coords> Subspace::annihilator() const {
    const Field& f = space_.field();
    const int cols = space_.coord_count();
    std::array<int, kMaxCoords> pivot{};
    std::array<bool, kMaxCoords> is_pivot{};
    for (int r = 0; r < rank_; ++r) {
        int pc = 0;
        while (data_[r * kMaxCoords + pc] == kZero) ++pc;
        pivot[r] = pc;
        is_pivot[pc] = true;
    }
    std::vector<Coords> out;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Coords x{};
        x[c] = kOne;
        for (int r = 0; r < rank_; ++r) x[pivot[r]] = f.neg(data_[r * kMaxCoords + c]);
        out.push_back(x);
    }
    return out;
}

std::string Subspace::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int r = 0; r < rank_; ++r) {
        if (r) os << ';';
        for (int j = 0; j < space_.coord_count(); ++j) {
            os << (j ? "," : "") << value(data_[r * kMaxCoords + j]);
        }
    }
    os << ']';
    return os.str();
}

std::size_t Subspace::hash() const noexcept {
    std::size_t h = 1469598103934665603ull ^ rank_;
    for (Elem e : data_) h = (h ^ value(e)) * 1099511628211ull;
    return h;
}

// ---------------------------------------------------------------------------------------
// Free functions

Subspace span(const ProjectiveSpace& space, std::span<const Point> points) {
    if (points.empty()) throw Error(ErrorCode::Parse, "span of an empty point set");
    std::array<Coords, 2 * kMaxCoords> small{};
    std::vector<Coords> rows;
    const bool fits = points.size() <= small.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].n != space.dimension()) throw Error(ErrorCode::MixedSpaces, "point from another space");
        if (fits) small[i] = points[i].coords;
        else rows.push_back(points[i].coords);
    }
    if (fits) return Subspace(space, std::span<const Coords>(small.data(), points.size()));
    return Subspace(space, rows);
}

Subspace span(const ProjectiveSpace& space, std::initializer_list<Point> points) {
    return span(space, std::span<const Point>(points.begin(), points.size()));
}

Subspace join(const Subspace& a, const Subspace& b) {
    if (!(a.space() == b.space())) throw Error(ErrorCode::MixedSpaces, "join across spaces");
    auto rows = a.rows();
    const auto more = b.rows();
    rows.insert(rows.end(), more.begin(), more.end());
    return Subspace(a.space(), rows);
}

std::optional<Subspace> meet(const Subspace& a, const Subspace& b) {
    if (!(a.space() == b.space())) throw Error(ErrorCode::MixedSpaces, "meet across spaces");
    auto dual = a.annihilator();
    const auto more = b.annihilator();
    dual.insert(dual.end(), more.begin(), more.end());
    if (dual.empty()) return a;  // both are the whole space
    const Subspace dual_span(a.space(), dual);
    if (dual_span.rank() == a.space().coord_count()) return std::nullopt;
    return Subspace(a.space(), dual_span.annihilator());
}

bool incident(const Point& p, const Subspace& s) { return s.contains(p); }

int rank_of(const ProjectiveSpace& space, std::span<const Coords> vectors) {
    std::array<Coords, 2 * kMaxCoords> work{};
    if (vectors.size() > work.size()) {
        std::vector<Coords> big(vectors.begin(), vectors.end());
        return rref(big, space.coord_count(), space.field());
    }
    std::copy(vectors.begin(), vectors.end(), work.begin());
    return rref(std::span(work.data(), vectors.size()), space.coord_count(), space.field());
}

int rank_of(const ProjectiveSpace& space, std::span<const Point> points) {
    std::array<Coords, 2 * kMaxCoords> work{};
    std::vector<Coords> big;
    if (points.size() > work.size()) {
        for (const Point& p : points) big.push_back(p.coords);
        return rank_of(space, std::span<const Coords>(big));
    }
    for (std::size_t i = 0; i < points.size(); ++i) work[i] = points[i].coords;
    return rref(std::span(work.data(), points.size()), space.coord_count(), space.field());
}

std::vector<Point> enumerate_points(const Subspace& s) { return s.points(); }
std::vector<Point> enumerate_points(const ProjectiveSpace& space) { return space.points(); }
std::vector<Subspace> enumerate_lines(const ProjectiveSpace& space) { return space.lines(); }

// ---------------------------------------------------------------------------------------
// AffineChart

AffineChart::AffineChart(ProjectiveSpace space)
    : space_(space), infinity_(space.standard_hyperplane()) {}

AffineChart::AffineChart(ProjectiveSpace space, Subspace at_infinity)
    : space_(std::move(space)), infinity_(std::move(at_infinity)) {
    if (infinity_.dim() != space_.dimension() - 1) {
        throw Error(ErrorCode::WrongDimension, "the flat at infinity must be a hyperplane");
    }
}

std::vector<Point> AffineChart::points() const {
    std::vector<Point> out;
    for (std::uint32_t i = 0; i < space_.point_count(); ++i) {
        Point p = space_.point(i);
        if (is_affine(p)) out.push_back(p);
    }
    return out;
}

std::vector<Point> affine_points(const AffineChart& chart) { return chart.points(); }

Point affine_point(const ProjectiveSpace& space, std::initializer_list<unsigned> xs) {
    if (static_cast<int>(xs.size()) != space.dimension()) {
        throw Error(ErrorCode::WrongDimension, "affine point needs n coordinates");
    }
    Coords raw{};
    int i = 0;
    for (unsigned x : xs) raw[i++] = elem(x);
    raw[i] = kOne;
    return space.normalize(raw);
}

}  // namespace desconf
