#include "desconf/enumeration.hpp"

#include "desconf/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace desconf {

namespace {

unsigned checked_order(unsigned q) {
    if (!prime_power(q)) throw Error(ErrorCode::InvalidOrder, std::to_string(q) + " is not a prime power");
    return q;
}

void require_scale(unsigned q, unsigned limit, std::string_view what) {
    if (q > limit) {
        throw Error(ErrorCode::ScaleLimit, std::string(what) + " is limited to q <= " + std::to_string(limit) +
                                               ", got q = " + std::to_string(q));
    }
}

ProjectiveSpace space_for(unsigned q, int n) {
    return ProjectiveSpace(make_shared_field(FieldSpec::for_order(q)), n);
}

Elem dot(const Field& f, const Coords& u, const Coords& x, int cols) {
    Elem s = kZero;
    for (int i = 0; i < cols; ++i) s = f.add(s, f.mul(u[i], x[i]));
    return s;
}

// Point where line xy crosses the hyperplane with normal u (neither x nor y on it).
Point crossing(const ProjectiveSpace& space, const Coords& u, const Point& x, const Point& y) {
    const Field& f = space.field();
    const int cols = space.coord_count();
    const Elem ux = dot(f, u, x.coords, cols);
    const Elem uy = dot(f, u, y.coords, cols);
    Coords v{};
    for (int i = 0; i < cols; ++i) v[i] = f.sub(f.mul(uy, x[i]), f.mul(ux, y[i]));
    return space.normalize(v);
}

// Shared skeleton of the planar and spatial censuses: for each vertex V, each triple of lines
// through V, an unordered point pair on each line, and the four pairings modulo swapping the
// two triangles.
ConfigCensus perspective_census(const ProjectiveSpace& host, const std::optional<Point>& through,
                                const OracleOptions& options, bool want_spatial) {
    struct Task {
        Point vertex;
        std::array<const std::vector<Point>*, 3> lines;
    };
    std::vector<Point> vertices;
    if (through) {
        if (through->n != host.dimension()) throw Error(ErrorCode::MixedSpaces, "fixed point from another space");
        vertices.push_back(*through);
    } else {
        vertices = host.points();
    }
    // Non-vertex points of each line through each vertex.
    std::vector<std::vector<std::vector<Point>>> rays(vertices.size());
    std::vector<Task> tasks;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        for (const Subspace& line : host.lines_through(vertices[v])) {
            auto pts = line.points();
            pts.erase(std::remove(pts.begin(), pts.end(), vertices[v]), pts.end());
            rays[v].push_back(std::move(pts));
        }
        const std::size_t m = rays[v].size();
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = a + 1; b < m; ++b) {
                for (std::size_t c = b + 1; c < m; ++c) {
                    tasks.push_back(Task{vertices[v], {&rays[v][a], &rays[v][b], &rays[v][c]}});
                }
            }
        }
    }

    struct Local {
        std::unordered_map<ConfigKey, std::optional<Configuration>, ConfigKeyHash> found;
    };
    auto locals = detail::partitioned<Local>(tasks.size(), options.jobs, [&](std::size_t t, Local& local) {
        const Task& task = tasks[t];
        auto pairs = [](const std::vector<Point>& pts) {
            std::vector<std::pair<Point, Point>> out;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = i + 1; j < pts.size(); ++j) out.emplace_back(pts[i], pts[j]);
            }
            return out;
        };
        const auto pa = pairs(*task.lines[0]);
        const auto pb = pairs(*task.lines[1]);
        const auto pc = pairs(*task.lines[2]);
        for (const auto& a : pa) {
            for (const auto& b : pb) {
                for (const auto& c : pc) {
                    for (int orient = 0; orient < 4; ++orient) {
                        const Point& b1 = (orient & 1) ? b.second : b.first;
                        const Point& b2 = (orient & 1) ? b.first : b.second;
                        const Point& c1 = (orient & 2) ? c.second : c.first;
                        const Point& c2 = (orient & 2) ? c.first : c.second;
                        try {
                            Configuration d = perspective_config(host, task.vertex, Triangle{{a.first, b1, c1}},
                                                                 Triangle{{a.second, b2, c2}});
                            if (d.spatial() != want_spatial) continue;
                            auto key = canonical_key(d);
                            if (options.collect) local.found.try_emplace(key, std::move(d));
                            else local.found.try_emplace(key, std::nullopt);
                        } catch (const Error& e) {
                            if (e.code() != ErrorCode::Degenerate && e.code() != ErrorCode::NotInPerspective) throw;
                        }
                    }
                }
            }
        }
    });

    auto& merged = locals.front().found;
    for (std::size_t w = 1; w < locals.size(); ++w) merged.merge(locals[w].found);
    ConfigCensus census;
    census.count = merged.size();
    if (options.collect) {
        std::vector<std::pair<ConfigKey, Configuration>> sorted;
        sorted.reserve(merged.size());
        for (auto& [key, d] : merged) sorted.emplace_back(key, std::move(*d));
        std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        census.configurations.reserve(sorted.size());
        for (auto& entry : sorted) census.configurations.push_back(std::move(entry.second));
    }
    return census;
}

}  // namespace

std::string_view to_string(Quantity quantity) noexcept {
    switch (quantity) {
        case Quantity::P5Choices: return "P5_CHOICES";
        case Quantity::ThetaPlanar: return "THETA_PLANAR";
        case Quantity::TotalPlanar: return "TOTAL_PLANAR";
        case Quantity::ThetaSpatial: return "THETA_SPATIAL";
        case Quantity::TotalSpatial: return "TOTAL_SPATIAL";
        case Quantity::SpatialThroughPoint: return "SPATIAL_THROUGH_POINT";
        case Quantity::NaivePlanarThroughPoint: return "NAIVE_PLANAR_THROUGH_POINT";
    }
    return "UNKNOWN";
}

Quantity parse_quantity(std::string_view tag) {
    for (Quantity q : kAllQuantities) {
        if (to_string(q) == tag) return q;
    }
    throw Error(ErrorCode::Parse, "unknown quantity '" + std::string(tag) + "'");
}

// ---------------------------------------------------------------------------------------
// Closed forms

Ratio formula(Quantity quantity, unsigned q_in) {
    const BigInt q = checked_order(q_in);
    const BigInt q2 = q * q, q3 = q2 * q, q4 = q3 * q;
    const BigInt p5 = (q - 2) * (q2 - 2 * q + 2);
    const BigInt pairs = q * (q - 1);  // 2 * C(q,2)
    switch (quantity) {
        case Quantity::P5Choices:
            return {p5, 1};
        case Quantity::ThetaPlanar:
            return {(q3 - q) * (q3 - q2) * p5, 6};
        case Quantity::TotalPlanar:
            return {q3 * (q3 - 1) * (q2 - 1) * p5, 120};
        case Quantity::ThetaSpatial:
            return {(q4 - q) * (q4 - q2) * (q4 - q3), 6};
        case Quantity::TotalSpatial:
            return {(q3 + q2 + q + 1) * (q4 - q) * (q4 - q2) * (q4 - q3), 120};
        case Quantity::SpatialThroughPoint:
            // (q^2+q+1)(q^2+q) q^2 C(q,2)^3 * 4 / 6
            return {(q2 + q + 1) * (q2 + q) * q2 * pairs * pairs * pairs * 4, 6 * 8};
        case Quantity::NaivePlanarThroughPoint:
            // C(q+1,3) C(q,2)^2 * 2 (q-1)(q-2)
            return {(q + 1) * q * (q - 1) * pairs * pairs * 2 * (q - 1) * (q - 2), 6 * 4};
    }
    throw Error(ErrorCode::Parse, "unknown quantity");
}

BigInt closed_form(Quantity quantity, unsigned q) {
    const Ratio r = formula(quantity, q);
    if (r.numerator % r.denominator != 0) {
        throw Error(ErrorCode::InternalDefect, std::string(to_string(quantity)) + " is not integral at q = " +
                                                   std::to_string(q));
    }
    return r.numerator / r.denominator;
}

BigInt count_p5_choices(unsigned q) { return closed_form(Quantity::P5Choices, q); }
BigInt theta_planar(unsigned q) { return closed_form(Quantity::ThetaPlanar, q); }
BigInt total_planar(unsigned q) { return closed_form(Quantity::TotalPlanar, q); }
BigInt theta_spatial(unsigned q) { return closed_form(Quantity::ThetaSpatial, q); }
BigInt total_spatial(unsigned q) { return closed_form(Quantity::TotalSpatial, q); }
BigInt spatial_through_point_direct(unsigned q) { return closed_form(Quantity::SpatialThroughPoint, q); }
BigInt naive_planar_through_point(unsigned q) { return closed_form(Quantity::NaivePlanarThroughPoint, q); }

// ---------------------------------------------------------------------------------------
// Scale limits

void ScaleLimits::set(std::string_view key, unsigned value) {
    if (key == "planar_global_max_q") planar_global = value;
    else if (key == "planar_through_max_q") planar_through = value;
    else if (key == "spatial_global_max_q") spatial_global = value;
    else if (key == "spatial_through_max_q") spatial_through = value;
    else if (key == "compressor_max_q") compressors = value;
    else if (key == "arc_max_q") arcs = value;
    else if (key == "p5_max_q") p5 = value;
    else if (key == "lift_max_q") lift_exhaustive = value;
    else if (key == "injectivity_max_q") injectivity = value;
    else throw Error(ErrorCode::Parse, "unknown scale limit '" + std::string(key) + "'");
}

ScaleLimits ScaleLimits::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot read " + path.string());
    ScaleLimits limits;
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::Parse, "expected key=value, got '" + line + "'");
        const std::string value = trim(line.substr(eq + 1));
        try {
            limits.set(trim(line.substr(0, eq)), static_cast<unsigned>(std::stoul(value)));
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::Parse, "bad value '" + value + "'");
        }
    }
    return limits;
}

// ---------------------------------------------------------------------------------------
// Oracles

std::uint64_t brute_force_p5_choices(unsigned q, const OracleOptions& options) {
    checked_order(q);
    require_scale(q, options.limits.p5, "the fifth-point scan");
    const ProjectiveSpace space = space_for(q, 3);
    const AffineChart chart(space);
    std::array<Point, 5> pts{affine_point(space, {0, 0, 0}), affine_point(space, {1, 0, 0}),
                             affine_point(space, {0, 1, 0}), affine_point(space, {0, 0, 1}), Point{}};
    std::uint64_t count = 0;
    for (const Point& x : chart.points()) {
        pts[4] = x;
        if (is_five_compressor(space, pts)) ++count;
    }
    return count;
}

CompressorCensus brute_force_compressors(const AffineChart& chart, const Point& p1, const Point& p2,
                                         const OracleOptions& options) {
    const ProjectiveSpace& space = chart.space();
    const unsigned q = space.q();
    const bool arcs = space.dimension() == 4;
    if (space.dimension() != 3 && !arcs) throw Error(ErrorCode::WrongDimension, "compressor scans need PG(3,q) or PG(4,q)");
    require_scale(q, arcs ? options.limits.arcs : options.limits.compressors,
                  arcs ? "the 5-arc scan" : "the 5-compressor scan");
    if (p1 == p2 || !chart.is_affine(p1) || !chart.is_affine(p2)) {
        throw Error(ErrorCode::BadApexLine, "P1 and P2 must be distinct affine points");
    }
    std::vector<Point> candidates;
    for (const Point& x : chart.points()) {
        if (x != p1 && x != p2 && rank_of(space, std::array<Point, 3>{p1, p2, x}) == 3) candidates.push_back(x);
    }
    const std::size_t m = candidates.size();
    struct Local {
        std::uint64_t count = 0;
        std::vector<FiveCompressor> found;
    };
    auto locals = detail::partitioned<Local>(m, options.jobs, [&](std::size_t i, Local& local) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (rank_of(space, std::array<Point, 4>{p1, p2, candidates[i], candidates[j]}) < 4) continue;
            for (std::size_t k = j + 1; k < m; ++k) {
                const std::array<Point, 5> pts{p1, p2, candidates[i], candidates[j], candidates[k]};
                if (!is_five_compressor(space, pts)) continue;
                if (arcs && rank_of(space, std::span<const Point>(pts)) < 5) continue;
                ++local.count;
                if (options.collect) local.found.emplace_back(space, pts);
            }
        }
    });
    CompressorCensus census;
    for (auto& local : locals) {
        census.count += local.count;
        for (auto& s : local.found) census.compressors.push_back(std::move(s));
    }
    std::sort(census.compressors.begin(), census.compressors.end(),
              [](const FiveCompressor& a, const FiveCompressor& b) { return a.key() < b.key(); });
    return census;
}

ConfigCensus brute_force_planar_configs(const ProjectiveSpace& plane, const std::optional<Point>& through,
                                        const OracleOptions& options) {
    if (plane.dimension() != 2) throw Error(ErrorCode::WrongDimension, "planar census needs PG(2,q)");
    require_scale(plane.q(), through ? options.limits.planar_through : options.limits.planar_global,
                  through ? "the planar through-point census" : "the planar global census");
    return perspective_census(plane, through, options, false);
}

ConfigCensus brute_force_spatial_configs(const ProjectiveSpace& space, const std::optional<Point>& through,
                                         const OracleOptions& options) {
    if (space.dimension() != 3) throw Error(ErrorCode::WrongDimension, "spatial census needs PG(3,q)");
    require_scale(space.q(), through ? options.limits.spatial_through : options.limits.spatial_global,
                  through ? "the spatial through-point census" : "the spatial global census");
    return perspective_census(space, through, options, true);
}

std::vector<FiveCompressor> exhaustive_lifts(const Configuration& d, const Point& p1, const Point& p2,
                                             const Subspace& pi, const OracleOptions& options) {
    const ProjectiveSpace& big = pi.space();
    require_scale(big.q(), options.limits.lift_exhaustive, "the exhaustive lift search");
    if (pi.dim() != d.host().dimension() || big.dimension() != pi.dim() + 1) {
        throw Error(ErrorCode::WrongDimension, "the lift space must be one dimension above the configuration");
    }
    const Coords normal = pi.annihilator().front();
    std::vector<bool> in_config(d.host().point_count(), false);
    for (const Point& x : d.points()) in_config[x.index] = true;
    auto lands_in_config = [&](const Point& x, const Point& y) {
        const Point hit = crossing(big, normal, x, y);
        return in_config[d.host().normalize(*pi.local_coords(hit)).index];
    };
    // Any completion point X needs P1X and P2X to cross pi inside the configuration.
    std::vector<Point> candidates;
    for (std::uint32_t i = 0; i < big.point_count(); ++i) {
        const Point x = big.point(i);
        if (x == p1 || x == p2 || pi.contains(x)) continue;
        if (lands_in_config(p1, x) && lands_in_config(p2, x)) candidates.push_back(x);
    }
    const ConfigKey target = canonical_key(d);
    const std::size_t m = candidates.size();
    using Local = std::vector<FiveCompressor>;
    auto locals = detail::partitioned<Local>(m, options.jobs, [&](std::size_t i, Local& local) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                const std::array<Point, 5> pts{p1, p2, candidates[i], candidates[j], candidates[k]};
                if (!is_five_compressor(big, pts)) continue;
                const FiveCompressor s(big, pts);
                if (canonical_key(section_compressor(s, pi, d.host())) == target) local.push_back(s);
            }
        }
    });
    std::vector<FiveCompressor> out;
    for (auto& local : locals) {
        for (auto& s : local) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const FiveCompressor& a, const FiveCompressor& b) { return a.key() < b.key(); });
    return out;
}

InjectivityReport blockline_injectivity_check(const ProjectiveSpace& plane, const Point& through,
                                              const OracleOptions& options) {
    if (plane.dimension() != 2) throw Error(ErrorCode::WrongDimension, "injectivity check needs PG(2,q)");
    require_scale(plane.q(), options.limits.injectivity, "the blockline injectivity check");
    OracleOptions collect = options;
    collect.collect = true;
    const ConfigCensus census = brute_force_planar_configs(plane, through, collect);

    using GroupKey = std::pair<std::array<std::uint32_t, 10>, std::vector<Subspace>>;
    std::map<GroupKey, std::vector<ConfigKey>> groups;
    for (const Configuration& d : census.configurations) {
        const ConfigKey key = canonical_key(d);
        auto& members = groups[GroupKey{key.points, sorted_blocklines(d)}];
        if (std::find(members.begin(), members.end(), key) == members.end()) members.push_back(key);
    }
    InjectivityReport report;
    report.q = plane.q();
    report.through = through;
    report.configurations = census.count;
    report.groups = groups.size();
    for (const auto& [group, members] : groups) {
        for (std::size_t i = 1; i < members.size(); ++i) report.collisions.emplace_back(members[0], members[i]);
    }
    return report;
}

// ---------------------------------------------------------------------------------------
// Reports

bool CountReport::expected_outcome() const {
    if (quantity == Quantity::NaivePlanarThroughPoint && q >= 3) return agree.has_value() && !*agree;
    return agree.value_or(true);
}

CountReport count_report(Quantity quantity, unsigned q) {
    CountReport r;
    r.quantity = quantity;
    r.q = q;
    r.closed_form = closed_form(quantity, q);
    return r;
}

CountReport oracle_report(Quantity quantity, unsigned q, const std::optional<std::string>& through,
                          const OracleOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    CountReport r = count_report(quantity, q);
    OracleOptions counting = options;
    counting.collect = false;

    auto fixed_point = [&](const ProjectiveSpace& space) {
        return through ? space.parse_point(*through) : space.point(0);
    };
    std::uint64_t found = 0;
    switch (quantity) {
        case Quantity::P5Choices:
            found = brute_force_p5_choices(q, counting);
            break;
        case Quantity::ThetaPlanar:
        case Quantity::ThetaSpatial: {
            const ProjectiveSpace space = space_for(q, quantity == Quantity::ThetaPlanar ? 3 : 4);
            // Apex pair: the affine origin and the first unit point.
            Coords origin{}, unit{};
            origin[space.dimension()] = kOne;
            unit[0] = kOne;
            unit[space.dimension()] = kOne;
            found = brute_force_compressors(AffineChart(space), space.normalize(origin), space.normalize(unit), counting)
                        .count;
            break;
        }
        case Quantity::TotalPlanar:
        case Quantity::NaivePlanarThroughPoint: {
            const ProjectiveSpace plane = space_for(q, 2);
            const bool pointwise = through.has_value() || quantity == Quantity::NaivePlanarThroughPoint;
            std::optional<Point> v;
            if (pointwise) v = fixed_point(plane);
            found = brute_force_planar_configs(plane, v, counting).count;
            if (quantity == Quantity::TotalPlanar && pointwise) r.closed_form = theta_planar(q) / 2;
            if (v) r.through_point = format_coords(*v);
            break;
        }
        case Quantity::TotalSpatial:
        case Quantity::SpatialThroughPoint: {
            const ProjectiveSpace space = space_for(q, 3);
            const bool pointwise = through.has_value() || quantity == Quantity::SpatialThroughPoint;
            std::optional<Point> v;
            if (pointwise) v = fixed_point(space);
            found = brute_force_spatial_configs(space, v, counting).count;
            if (quantity == Quantity::TotalSpatial && pointwise) r.closed_form = theta_spatial(q) / 2;
            if (v) r.through_point = format_coords(*v);
            break;
        }
    }
    r.brute_force = BigInt(found);
    r.agree = *r.brute_force == r.closed_form;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace desconf
