#include <bmo/catalog.hpp>
#include <bmo/fixture.hpp>

#include <gtest/gtest.h>

#include <filesystem>

using namespace bmo;

TEST(Fixture, CatalogRoundTrips) {
    for (auto& f : fixture_catalog()) {
        std::string text = serialize_fixture(f);
        Fixture g = parse_fixture(text);
        EXPECT_TRUE(g == f) << f.name();
        EXPECT_EQ(serialize_fixture(g), text) << f.name();
    }
}

TEST(Fixture, FilesOnDiskMatchCatalog) {
    namespace fs = std::filesystem;
    fs::path dir(BMO_FIXTURE_DIR);
    ASSERT_TRUE(fs::is_directory(dir)) << dir;
    for (auto& f : fixture_catalog()) {
        auto path = dir / (f.name() + ".fix");
        ASSERT_TRUE(fs::exists(path)) << path;
        EXPECT_TRUE(load_fixture_file(path.string()) == f) << f.name();
        for (auto& [set, pts] : f.point_sets) {
            auto pp = dir / "points" / (f.name() + "." + set + ".pts");
            ASSERT_TRUE(fs::exists(pp)) << pp;
            std::ifstream in(pp);
            std::stringstream ss;
            ss << in.rdbuf();
            EXPECT_EQ(parse_points(ss.str(), f.scheme.hyperplane_index), pts) << pp;
        }
    }
}

TEST(Fixture, ParseErrors) {
    EXPECT_THROW(parse_fixture(""), std::invalid_argument);
    EXPECT_THROW(parse_fixture("begin fixture x\n"), std::invalid_argument);
    EXPECT_THROW(parse_fixture("end\n"), std::invalid_argument);
    EXPECT_THROW(parse_fixture("stray line\n"), std::invalid_argument);
    EXPECT_THROW(parse_fixture("begin fixture x bad-token\nend\n"), std::invalid_argument);
    EXPECT_THROW(load_fixture_file("/nonexistent/x.fix"), std::runtime_error);
    std::string text = serialize_fixture(catalog::dp4_ex1());
    EXPECT_THROW(parse_fixture(text + text), std::invalid_argument);
}

TEST(Fixture, PointsText) {
    auto pts = parse_points("# comment\n1 2 3 4\n(1:2:3:4:5)\n\n", 4);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0], ProjPoint::of_ints({1, 2, 3, 4, 1}));
    EXPECT_EQ(parse_points(serialize_points(pts, 4), 4), pts);
}
