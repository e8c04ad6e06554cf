#include "desconf/configuration.hpp"
#include "desconf/enumeration.hpp"
#include "desconf/error.hpp"
#include "desconf/verify.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

using namespace desconf;

namespace {

ProjectiveSpace pg(int n, unsigned q) { return ProjectiveSpace(make_shared_field(FieldSpec::for_order(q)), n); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalDefect;
}

// The compressor {O, e1, e2, e3, (2,2,2)} of AG(3,3).
FiveCompressor sample_compressor(const ProjectiveSpace& s) {
    return FiveCompressor(s, {affine_point(s, {0, 0, 0}), affine_point(s, {1, 0, 0}), affine_point(s, {0, 1, 0}),
                              affine_point(s, {0, 0, 1}), affine_point(s, {2, 2, 2})});
}

// Apex pair above the point v of the section plane: (v,1) and (v,1) + (v,0).
std::pair<Point, Point> apex_over(const ProjectiveSpace& big, const Point& v) {
    Coords a{}, b{};
    const Field& f = big.field();
    const int n = big.dimension();
    for (int i = 0; i < n; ++i) a[i] = v[i];
    a[n] = kOne;
    for (int i = 0; i < n; ++i) b[i] = f.add(a[i], v[i]);
    b[n] = kOne;
    return {big.normalize(a), big.normalize(b)};
}

PairLabel label_of(const Configuration& d, const Point& p) {
    for (int x = 0; x < 10; ++x) {
        if (d.points()[x] == p) return PairLabel::from_index(x);
    }
    throw std::logic_error("point not in configuration");
}

}  // namespace

TEST(Labels, IndexingAndParsing) {
    for (int x = 0; x < 10; ++x) {
        EXPECT_EQ(PairLabel::from_index(x).index(), x);
        EXPECT_EQ(TripleLabel::from_index(x).index(), x);
        EXPECT_EQ(PairLabel::parse(PairLabel::from_index(x).to_string()), PairLabel::from_index(x));
        EXPECT_EQ(TripleLabel::parse(TripleLabel::from_index(x).to_string()), TripleLabel::from_index(x));
    }
    EXPECT_EQ(PairLabel::from_index(0).to_string(), "12");
    EXPECT_EQ(PairLabel::from_index(9).to_string(), "45");
    EXPECT_EQ(TripleLabel::from_index(9).to_string(), "345");
    EXPECT_THROW(PairLabel::parse("11"), Error);
    EXPECT_THROW(PairLabel::parse("16"), Error);
    EXPECT_THROW(TripleLabel::parse("12"), Error);
}

TEST(Labels, Polarity) {
    EXPECT_EQ(polarity(PairLabel::parse("12")), TripleLabel::parse("345"));
    EXPECT_EQ(polarity(PairLabel::parse("35")), TripleLabel::parse("124"));
    EXPECT_EQ(polarity(TripleLabel::parse("124")), PairLabel::parse("35"));
    EXPECT_TRUE(polarity_is_involutive_duality());
    for (int x = 0; x < 10; ++x) {
        int blocks = 0;
        for (int t = 0; t < 10; ++t) blocks += TripleLabel::from_index(t).contains(PairLabel::from_index(x));
        EXPECT_EQ(blocks, 3);
    }
}

TEST(Perspective, StandardLabelling) {
    const auto s = pg(2, 5);
    const Point v = s.parse_point("0,0,1");
    const Triangle t1{{s.parse_point("1,0,1"), s.parse_point("0,1,1"), s.parse_point("1,1,1")}};
    const Triangle t2{{s.parse_point("2,0,1"), s.parse_point("0,3,1"), s.parse_point("4,4,1")}};
    const Configuration d = perspective_config(s, v, t1, t2);
    EXPECT_EQ(d.point(PairLabel::parse("12")), v);
    EXPECT_EQ(d.point(PairLabel::parse("13")), t1.vertices[0]);
    EXPECT_EQ(d.point(PairLabel::parse("23")), t2.vertices[0]);
    EXPECT_EQ(d.point(PairLabel::parse("14")), t1.vertices[1]);
    EXPECT_EQ(d.point(PairLabel::parse("25")), t2.vertices[2]);
    EXPECT_FALSE(d.spatial());
    for (int t = 0; t < 10; ++t) {
        const TripleLabel b = TripleLabel::from_index(t);
        for (const PairLabel& p : b.points()) EXPECT_TRUE(d.blockline(b).contains(d.point(p)));
    }
    const auto pqr = std::array<Point, 3>{d.point(PairLabel::parse("34")), d.point(PairLabel::parse("45")),
                                          d.point(PairLabel::parse("35"))};
    EXPECT_EQ(rank_of(s, pqr), 2);
}

TEST(Perspective, Errors) {
    const auto s = pg(2, 5);
    const Point v = s.parse_point("0,0,1");
    const Triangle t1{{s.parse_point("1,0,1"), s.parse_point("0,1,1"), s.parse_point("1,1,1")}};
    const Triangle off{{s.parse_point("2,0,1"), s.parse_point("0,3,1"), s.parse_point("4,3,1")}};
    EXPECT_EQ(code_of([&] { (void)perspective_config(s, v, t1, off); }), ErrorCode::NotInPerspective);
    const Triangle flat{{s.parse_point("1,0,1"), s.parse_point("2,0,1"), s.parse_point("3,0,1")}};
    const Triangle flat2{{s.parse_point("1,1,1"), s.parse_point("2,1,1"), s.parse_point("3,1,1")}};
    EXPECT_EQ(code_of([&] { (void)perspective_config(s, s.parse_point("0,1,0"), flat, flat2); }),
              ErrorCode::Degenerate);
    EXPECT_EQ(code_of([&] { (void)perspective_config(s, v, t1, t1); }), ErrorCode::Degenerate);
}

TEST(Perspective, TranslationMakesVertexSelfConjugate) {
    const auto s = pg(2, 5);
    const Point v = s.parse_point("1,2,0");
    auto shift = [&](unsigned x, unsigned y) { return affine_point(s, {(x + 1) % 5, (y + 2) % 5}); };
    const Triangle t1{{affine_point(s, {0, 0}), affine_point(s, {1, 0}), affine_point(s, {0, 1})}};
    const Triangle t2{{shift(0, 0), shift(1, 0), shift(0, 1)}};
    const Configuration d = perspective_config(s, v, t1, t2);
    const auto sc = self_conjugate_points(d);
    EXPECT_NE(std::find(sc.begin(), sc.end(), PairLabel::parse("12")), sc.end());
    const auto bl = blockline_structure(d);
    EXPECT_EQ(bl.subsets[TripleLabel::parse("345").index()].size(), 4u);
    EXPECT_EQ(blockline_violation(d), std::nullopt);
}

TEST(Configuration, KeyIgnoresLabels) {
    const auto s = pg(2, 5);
    const Configuration d = perspective_config(
        s, s.parse_point("0,0,1"), Triangle{{s.parse_point("1,0,1"), s.parse_point("0,1,1"), s.parse_point("1,1,1")}},
        Triangle{{s.parse_point("2,0,1"), s.parse_point("0,3,1"), s.parse_point("4,4,1")}});
    const ConfigKey key = canonical_key(d);
    std::array<int, 5> perm{1, 2, 3, 4, 5};
    int count = 0;
    do {
        const Configuration r = d.relabeled(perm);
        ASSERT_EQ(canonical_key(r), key);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(count, 120);

    const Triangle t1{{d.point(PairLabel::parse("13")), d.point(PairLabel::parse("14")), d.point(PairLabel::parse("15"))}};
    const Triangle t2{{d.point(PairLabel::parse("23")), d.point(PairLabel::parse("24")), d.point(PairLabel::parse("25"))}};
    EXPECT_EQ(canonical_key(perspective_config(s, d.point(PairLabel::parse("12")), t2, t1)), key);

    auto pts = d.points();
    const Configuration other = perspective_config(
        s, s.parse_point("0,0,1"), Triangle{{s.parse_point("1,0,1"), s.parse_point("0,1,1"), s.parse_point("1,1,1")}},
        Triangle{{s.parse_point("3,0,1"), s.parse_point("0,3,1"), s.parse_point("2,2,1")}});
    EXPECT_NE(canonical_key(other), key);
    pts[1] = pts[0];
    EXPECT_EQ(code_of([&] { (void)Configuration::from_points(s, pts); }), ErrorCode::Degenerate);
}

TEST(Compressor, Predicates) {
    const auto s3 = pg(3, 3);
    const std::array<Point, 5> frame{s3.parse_point("1,0,0,0"), s3.parse_point("0,1,0,0"), s3.parse_point("0,0,1,0"),
                                     s3.parse_point("0,0,0,1"), s3.parse_point("1,1,1,1")};
    EXPECT_TRUE(is_five_compressor(s3, frame));
    auto coplanar = frame;
    coplanar[4] = s3.parse_point("1,1,1,0");
    EXPECT_FALSE(is_five_compressor(s3, coplanar));
    EXPECT_EQ(code_of([&] { FiveCompressor(s3, coplanar); }), ErrorCode::Degenerate);
    const auto s4 = pg(4, 2);
    const std::array<Point, 5> basis{s4.parse_point("1,0,0,0,0"), s4.parse_point("0,1,0,0,0"),
                                     s4.parse_point("0,0,1,0,0"), s4.parse_point("0,0,0,1,0"),
                                     s4.parse_point("0,0,0,0,1")};
    EXPECT_TRUE(is_five_arc(s4, basis));
    EXPECT_EQ(code_of([&] { (void)is_five_arc(s3, frame); }), ErrorCode::WrongDimension);
    EXPECT_EQ(code_of([&] { (void)is_five_compressor(pg(2, 3), std::span<const Point>(frame.data(), 5)); }),
              ErrorCode::WrongDimension);
}

TEST(Section, BlocklinesAreHyperplaneMeets) {
    const auto s = pg(3, 3);
    const auto plane = pg(2, 3);
    const FiveCompressor c = sample_compressor(s);
    const Subspace pi = s.standard_hyperplane();
    const Configuration d = section_compressor(c, pi);
    EXPECT_EQ(d.host().dimension(), 2);
    for (int t = 0; t < 10; ++t) {
        const TripleLabel b = TripleLabel::from_index(t);
        const auto m = meet(span(s, {c.point(b.i), c.point(b.j), c.point(b.k)}), pi);
        ASSERT_TRUE(m.has_value());
        std::vector<Point> local;
        for (const Point& p : m->points()) local.push_back(plane.normalize(*pi.local_coords(p)));
        EXPECT_EQ(span(plane, local), d.blockline(b));
    }
    for (int x = 0; x < 10; ++x) {
        const PairLabel l = PairLabel::from_index(x);
        const auto m = meet(span(s, {c.point(l.i), c.point(l.j)}), pi);
        EXPECT_EQ(plane.normalize(*pi.local_coords(m->points().front())), d.point(l));
    }
}

TEST(Section, Errors) {
    const auto s = pg(3, 3);
    const FiveCompressor c = sample_compressor(s);
    EXPECT_EQ(code_of([&] { (void)section_compressor(c, s.hyperplane(s.parse_point("1,0,0,0").coords)); }),
              ErrorCode::CompressorMeetsHyperplane);
    EXPECT_EQ(code_of([&] { (void)section_compressor(c, span(s, {s.point(0), s.point(1)})); }),
              ErrorCode::WrongDimension);
}

TEST(Section, CompressorInsideASolidGivesPlanarConfiguration) {
    const auto s4 = pg(4, 3);
    std::array<Point, 5> pts;
    const char* coords[5] = {"0,0,0,0,1", "0,1,0,0,1", "0,0,1,0,1", "0,0,0,1,1", "0,2,2,2,1"};
    for (int i = 0; i < 5; ++i) pts[i] = s4.parse_point(coords[i]);
    const FiveCompressor c(s4, pts);
    EXPECT_FALSE(c.is_arc());
    EXPECT_FALSE(section_compressor(c, s4.standard_hyperplane()).spatial());
}

TEST(Lift, RoundTripAllConfigurationsThroughAPointGF3) {
    const auto plane = pg(2, 3);
    const auto s = ProjectiveSpace(plane.field_ptr(), 3);
    const Subspace pi = s.standard_hyperplane();
    const Point v = plane.point(4);
    const auto [p1, p2] = apex_over(s, v);
    OracleOptions o;
    o.collect = true;
    const auto census = brute_force_planar_configs(plane, v, o);
    ASSERT_EQ(census.count, 180u);
    for (const Configuration& d : census.configurations) {
        const auto [s1, s2] = lift_to_compressors(d, label_of(d, v), p1, p2, pi);
        ASSERT_NE(s1.key(), s2.key());
        ASSERT_EQ(canonical_key(section_compressor(s1, pi, plane)), canonical_key(d));
        ASSERT_EQ(canonical_key(section_compressor(s2, pi, plane)), canonical_key(d));
    }
}

TEST(Lift, SectionThenLiftRecoversCompressor) {
    const auto s = pg(3, 3);
    const FiveCompressor c = sample_compressor(s);
    const Subspace pi = s.standard_hyperplane();
    const Configuration d = section_compressor(c, pi);
    const auto [s1, s2] = lift_to_compressors(d, PairLabel::parse("12"), c.point(1), c.point(2), pi);
    EXPECT_TRUE(s1.key() == c.key() || s2.key() == c.key());
    const auto found = exhaustive_lifts(d, c.point(1), c.point(2), pi);
    ASSERT_EQ(found.size(), 2u);
}

TEST(Lift, BadApex) {
    const auto s = pg(3, 3);
    const FiveCompressor c = sample_compressor(s);
    const Subspace pi = s.standard_hyperplane();
    const Configuration d = section_compressor(c, pi);
    EXPECT_EQ(code_of([&] { (void)lift_to_compressors(d, PairLabel::parse("12"), c.point(1), c.point(3), pi); }),
              ErrorCode::BadApexLine);
    EXPECT_EQ(code_of([&] { (void)lift_to_compressors(d, PairLabel::parse("12"), c.point(1), c.point(1), pi); }),
              ErrorCode::BadApexLine);
}

TEST(Lift, SpatialConfigurationsLiftToFiveArcs) {
    const auto s3 = pg(3, 2);
    const auto s4 = ProjectiveSpace(s3.field_ptr(), 4);
    const Subspace pi = s4.standard_hyperplane();
    OracleOptions o;
    o.collect = true;
    const auto census = brute_force_spatial_configs(s3, std::nullopt, o);
    ASSERT_EQ(census.count, 168u);
    for (const Configuration& d : census.configurations) {
        ASSERT_TRUE(d.spatial());
        const Point v = d.point(PairLabel::parse("12"));
        const auto [p1, p2] = apex_over(s4, v);
        const auto [a1, a2] = lift_to_compressors(d, PairLabel::parse("12"), p1, p2, pi);
        ASSERT_TRUE(a1.is_arc());
        ASSERT_TRUE(a2.is_arc());
        ASSERT_EQ(canonical_key(section_compressor(a1, pi, s3)), canonical_key(d));
        ASSERT_TRUE(section_compressor(a2, pi, s3).spatial());
    }
}

TEST(Blocklines, SelfConjugatePointExtendsPolarBlockline) {
    const auto plane = pg(2, 3);
    OracleOptions o;
    o.collect = true;
    bool seen = false;
    for (const Configuration& d : brute_force_planar_configs(plane, std::nullopt, o).configurations) {
        ASSERT_EQ(blockline_violation(d), std::nullopt);
        const auto sc = self_conjugate_points(d);
        if (std::find(sc.begin(), sc.end(), PairLabel::parse("35")) == sc.end()) continue;
        seen = true;
        auto subset = blockline_structure(d).subsets[TripleLabel::parse("124").index()];
        std::sort(subset.begin(), subset.end());
        const std::vector<PairLabel> expected{PairLabel::parse("12"), PairLabel::parse("14"), PairLabel::parse("24"),
                                              PairLabel::parse("35")};
        EXPECT_EQ(subset, expected);
    }
    EXPECT_TRUE(seen);
}

TEST(Blocklines, SelfConjugateFreeStructureEqualsBlocks) {
    const auto plane = pg(2, 5);
    OracleOptions o;
    o.collect = true;
    int sc_free = 0;
    for (const Configuration& d : brute_force_planar_configs(plane, plane.point(0), o).configurations) {
        if (!self_conjugate_points(d).empty()) continue;
        ++sc_free;
        const auto bl = blockline_structure(d);
        for (int t = 0; t < 10; ++t) ASSERT_EQ(bl.subsets[t].size(), 3u);
    }
    EXPECT_GT(sc_free, 0);
}
