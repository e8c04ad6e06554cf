#include "desconf/twoblock.hpp"

#include "desconf/enumeration.hpp"
#include "desconf/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <array>

namespace desconf {

namespace {

struct Incidence {
    std::vector<std::uint32_t> lines;                 // 35 line masks
    std::array<std::vector<std::uint32_t>, 15> through;  // line masks through each point
};

Incidence incidence_of(const ProjectiveSpace& space) {
    Incidence inc;
    for (const Subspace& line : space.lines()) {
        const std::uint32_t mask = point_set_of(line.points()).bits;
        inc.lines.push_back(mask);
        for (std::uint32_t p = 0; p < 15; ++p) {
            if ((mask >> p) & 1u) inc.through[p].push_back(mask);
        }
    }
    return inc;
}

void require_pg32(const ProjectiveSpace& space) {
    if (space.dimension() != 3 || space.q() != 2) throw Error(ErrorCode::WrongSpace, "2-blocks are scanned in PG(3,2)");
}

bool tangential(const Incidence& inc, std::uint32_t s) {
    for (std::uint32_t line : inc.lines) {
        if ((line & s) == 0) return false;
    }
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
        const int p = std::countr_zero(rest);
        const std::uint32_t bit = 1u << p;
        bool tangent = false;
        for (std::uint32_t line : inc.through[p]) {
            if ((line & s) == bit) {
                tangent = true;
                break;
            }
        }
        if (!tangent) return false;
    }
    return true;
}

}  // namespace

PointSet point_set_of(std::span<const Point> points) {
    PointSet s;
    for (const Point& p : points) s.bits |= 1u << p.index;
    return s;
}

PointSet point_set_of(const Configuration& d) { return point_set_of(std::span<const Point>(d.points())); }

bool is_tangential_two_block(const ProjectiveSpace& space, PointSet s) {
    require_pg32(space);
    return tangential(incidence_of(space), s.bits);
}

TwoBlockReport classify_two_blocks(unsigned jobs) {
    const ProjectiveSpace space(make_shared_field(FieldSpec::for_order(2)), 3);
    const Incidence inc = incidence_of(space);

    std::vector<std::uint32_t> planes;
    for (const Subspace& h : space.hyperplanes()) planes.push_back(point_set_of(h.points()).bits);
    std::sort(planes.begin(), planes.end());

    OracleOptions options;
    options.jobs = jobs;
    options.collect = true;
    std::vector<std::uint32_t> desargues;
    for (const Configuration& d : brute_force_spatial_configs(space, std::nullopt, options).configurations) {
        desargues.push_back(point_set_of(d).bits);
    }
    std::sort(desargues.begin(), desargues.end());

    constexpr std::uint32_t kSubsets = 1u << 15;
    constexpr std::uint32_t kChunk = 1u << 10;
    struct Local {
        std::uint32_t hyperplane = 0, spatial = 0, other = 0;
        std::vector<std::uint32_t> spatial_sets, other_sets;
    };
    auto locals = detail::partitioned<Local>(kSubsets / kChunk, jobs, [&](std::size_t chunk, Local& local) {
        const auto begin = static_cast<std::uint32_t>(chunk * kChunk);
        for (std::uint32_t s = begin; s < begin + kChunk; ++s) {
            if (!tangential(inc, s)) continue;
            if (std::binary_search(planes.begin(), planes.end(), s)) {
                ++local.hyperplane;
            } else if (std::binary_search(desargues.begin(), desargues.end(), s)) {
                ++local.spatial;
                local.spatial_sets.push_back(s);
            } else {
                ++local.other;
                local.other_sets.push_back(s);
            }
        }
    });

    TwoBlockReport report;
    report.total_subsets = kSubsets;
    std::vector<std::uint32_t> others;
    for (const Local& local : locals) {
        report.hyperplane += local.hyperplane;
        report.spatial_desargues += local.spatial;
        report.other += local.other;
        for (auto s : local.spatial_sets) report.spatial_sets.push_back(PointSet{s});
        others.insert(others.end(), local.other_sets.begin(), local.other_sets.end());
    }
    std::sort(report.spatial_sets.begin(), report.spatial_sets.end());
    std::sort(others.begin(), others.end());
    for (std::size_t i = 0; i < others.size() && i < 10; ++i) report.other_examples.push_back(PointSet{others[i]});
    return report;
}

}  // namespace desconf
