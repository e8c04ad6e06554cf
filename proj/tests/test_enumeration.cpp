#include "desconf/enumeration.hpp"
#include "desconf/error.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>

using namespace desconf;

namespace {

ProjectiveSpace pg(int n, unsigned q) { return ProjectiveSpace(make_shared_field(FieldSpec::for_order(q)), n); }

BigInt big(std::uint64_t v) { return BigInt(v); }

std::set<ConfigKey> keys_of(const ConfigCensus& c) {
    std::set<ConfigKey> out;
    for (const auto& d : c.configurations) out.insert(canonical_key(d));
    return out;
}

}  // namespace

TEST(ClosedForms, FrozenValues) {
    const std::map<std::pair<Quantity, unsigned>, std::uint64_t> expected{
        {{Quantity::P5Choices, 2}, 0},           {{Quantity::P5Choices, 3}, 5},
        {{Quantity::P5Choices, 5}, 51},          {{Quantity::ThetaPlanar, 2}, 0},
        {{Quantity::ThetaPlanar, 3}, 360},       {{Quantity::ThetaPlanar, 4}, 9600},
        {{Quantity::TotalPlanar, 2}, 0},         {{Quantity::TotalPlanar, 3}, 234},
        {{Quantity::TotalPlanar, 4}, 10080},     {{Quantity::TotalPlanar, 5}, 158100},
        {{Quantity::ThetaSpatial, 2}, 224},      {{Quantity::ThetaSpatial, 3}, 50544},
        {{Quantity::TotalSpatial, 2}, 168},      {{Quantity::TotalSpatial, 3}, 101088},
        {{Quantity::SpatialThroughPoint, 2}, 112}, {{Quantity::SpatialThroughPoint, 3}, 25272},
        {{Quantity::NaivePlanarThroughPoint, 2}, 0}, {{Quantity::NaivePlanarThroughPoint, 3}, 144},
        {{Quantity::NaivePlanarThroughPoint, 5}, 48000},
    };
    for (const auto& [key, value] : expected) {
        EXPECT_EQ(closed_form(key.first, key.second), big(value)) << to_string(key.first) << " q=" << key.second;
    }
    EXPECT_EQ(theta_planar(5) / 2, big(51000));
    EXPECT_EQ(total_spatial(3), big(40) * big(25272) / 10);
}

TEST(ClosedForms, IdentitiesUpTo64) {
    for (unsigned q = 2; q <= 64; ++q) {
        if (!prime_power(q)) {
            EXPECT_THROW(closed_form(Quantity::TotalPlanar, q), Error);
            continue;
        }
        for (Quantity quantity : kAllQuantities) {
            const Ratio r = formula(quantity, q);
            ASSERT_EQ(r.numerator % r.denominator, 0) << to_string(quantity) << " q=" << q;
        }
        const BigInt b = q;
        EXPECT_EQ(20 * total_planar(q), (b * b + b + 1) * theta_planar(q));
        EXPECT_EQ(20 * total_spatial(q), (b * b * b + b * b + b + 1) * theta_spatial(q));
        EXPECT_EQ(2 * spatial_through_point_direct(q), theta_spatial(q));
        if (q >= 3 && q <= 5) EXPECT_NE(naive_planar_through_point(q), theta_planar(q) / 2);
    }
    EXPECT_GT(total_spatial(64), BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(ClosedForms, QuantityTags) {
    for (Quantity q : kAllQuantities) EXPECT_EQ(parse_quantity(to_string(q)), q);
    EXPECT_THROW(parse_quantity("THETA"), Error);
}

TEST(Oracles, FifthPointPlacements) {
    for (unsigned q : {2u, 3u, 4u, 5u}) EXPECT_EQ(big(brute_force_p5_choices(q)), count_p5_choices(q)) << q;
}

TEST(Oracles, CompressorCountsIndependentOfApexPair) {
    for (unsigned q : {2u, 3u}) {
        const auto s = pg(3, q);
        const AffineChart chart(s);
        const auto pts = chart.points();
        for (std::size_t j : {1u, 5u, 7u}) {
            EXPECT_EQ(big(brute_force_compressors(chart, pts[0], pts[j]).count), theta_planar(q)) << q;
        }
    }
}

TEST(Oracles, PlanarCensus) {
    EXPECT_EQ(brute_force_planar_configs(pg(2, 2), std::nullopt).count, 0u);
    EXPECT_EQ(brute_force_planar_configs(pg(2, 3), std::nullopt).count, 234u);
    const auto p4 = pg(2, 4);
    for (std::uint32_t i : {0u, 7u, 20u}) EXPECT_EQ(brute_force_planar_configs(p4, p4.point(i)).count, 4800u);
}

TEST(Oracles, SpatialCensus) {
    const auto s2 = pg(3, 2);
    EXPECT_EQ(brute_force_spatial_configs(s2, std::nullopt).count, 168u);
    EXPECT_EQ(brute_force_spatial_configs(s2, s2.point(3)).count, 112u);
}

TEST(Oracles, WorkerCountDoesNotChangeResults) {
    const auto p3 = pg(2, 3);
    OracleOptions one, many;
    one.collect = many.collect = true;
    one.jobs = 1;
    many.jobs = 3;
    EXPECT_EQ(keys_of(brute_force_planar_configs(p3, std::nullopt, one)),
              keys_of(brute_force_planar_configs(p3, std::nullopt, many)));
    const AffineChart chart(pg(3, 3));
    const auto pts = chart.points();
    EXPECT_EQ(brute_force_compressors(chart, pts[0], pts[1], one).count,
              brute_force_compressors(chart, pts[0], pts[1], many).count);
}

// Sectioning every compressor through a fixed apex pair reaches each configuration through
// the apex line's trace exactly twice, and nothing else.
TEST(Oracles, SectionRouteMatchesPerspectiveRoute) {
    struct Case {
        int n;
        unsigned q;
    };
    for (const Case& c : {Case{3, 3}, Case{4, 2}}) {
        const auto big_space = pg(c.n, c.q);
        const auto host = ProjectiveSpace(big_space.field_ptr(), c.n - 1);
        const AffineChart chart(big_space);
        const Subspace pi = chart.at_infinity();
        const auto pts = chart.points();
        OracleOptions o;
        o.collect = true;
        const auto comps = brute_force_compressors(chart, pts[0], pts[1], o);
        const Point v = host.normalize(*pi.local_coords(*meet(span(big_space, {pts[0], pts[1]}), pi)->points().begin()));
        std::map<ConfigKey, int> hits;
        for (const auto& s : comps.compressors) ++hits[canonical_key(section_compressor(s, pi, host))];
        const auto census = c.n == 3 ? brute_force_planar_configs(host, v, o) : brute_force_spatial_configs(host, v, o);
        EXPECT_EQ(hits.size(), census.count);
        for (const auto& [key, count] : hits) EXPECT_EQ(count, 2);
        const auto expected = keys_of(census);
        for (const auto& [key, count] : hits) EXPECT_TRUE(expected.count(key));
    }
}

TEST(Oracles, ScaleLimits) {
    try {
        (void)brute_force_planar_configs(pg(2, 5), std::nullopt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ScaleLimit);
    }
    EXPECT_THROW((void)brute_force_spatial_configs(pg(3, 3), std::nullopt), Error);
    OracleOptions raised;
    raised.limits.set("spatial_global_max_q", 3);
    EXPECT_EQ(raised.limits.spatial_global, 3u);
    EXPECT_THROW(raised.limits.set("nope", 1), Error);

    const std::string path = ::testing::TempDir() + "limits.conf";
    std::ofstream(path) << "# desk scale\nplanar_global_max_q = 3\n\ninjectivity_max_q=4 # trailing\n";
    const ScaleLimits loaded = ScaleLimits::load(path);
    EXPECT_EQ(loaded.planar_global, 3u);
    EXPECT_EQ(loaded.injectivity, 4u);
    EXPECT_EQ(loaded.planar_through, ScaleLimits{}.planar_through);
}

TEST(Oracles, InjectivityGF3) {
    const auto p3 = pg(2, 3);
    const auto r = blockline_injectivity_check(p3, p3.point(0));
    EXPECT_EQ(r.configurations, 180u);
    EXPECT_TRUE(r.collisions.empty());
}

TEST(Reports, OracleVerdicts) {
    const auto r = oracle_report(Quantity::TotalPlanar, 3, std::nullopt);
    EXPECT_EQ(r.brute_force, big(234));
    EXPECT_TRUE(r.agree.value());
    EXPECT_TRUE(r.expected_outcome());
    const auto naive = oracle_report(Quantity::NaivePlanarThroughPoint, 3, std::nullopt);
    EXPECT_EQ(naive.brute_force, big(180));
    EXPECT_FALSE(naive.agree.value());
    EXPECT_TRUE(naive.expected_outcome());
    const auto naive2 = oracle_report(Quantity::NaivePlanarThroughPoint, 2, std::nullopt);
    EXPECT_TRUE(naive2.agree.value());
    const auto through = oracle_report(Quantity::TotalPlanar, 3, std::string("1,2,0"));
    EXPECT_EQ(through.closed_form, big(180));
    EXPECT_EQ(through.through_point, "1,2,0");
    EXPECT_TRUE(through.agree.value());
    EXPECT_FALSE(count_report(Quantity::TotalPlanar, 3).brute_force.has_value());
}
