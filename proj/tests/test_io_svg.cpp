#include "curves.hpp"
#include "fixtures.hpp"
#include "tritrop/io.hpp"
#include "tritrop/svg.hpp"

#include <gtest/gtest.h>

#include <regex>

using namespace tritrop;

namespace {

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const DomainError& e) {
        return e.what();
    }
    return {};
}

/// (x1, y1, x2, y2) of every <line>, endpoints ordered.
std::set<std::array<double, 4>> lines_of(const std::string& svg) {
    static const std::regex re(R"re(<line x1="([-0-9.]+)" y1="([-0-9.]+)" x2="([-0-9.]+)" y2="([-0-9.]+)")re");
    std::set<std::array<double, 4>> out;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        std::array<double, 4> l{std::stod((*it)[1]), std::stod((*it)[2]), std::stod((*it)[3]), std::stod((*it)[4])};
        if (std::make_pair(l[2], l[3]) < std::make_pair(l[0], l[1])) l = {l[2], l[3], l[0], l[1]};
        out.insert(l);
    }
    return out;
}

} // namespace

TEST(Io, GraphRoundTrip) {
    const auto g = fixtures::two_hexagons();
    const auto text = serialize_graph(g);
    const auto back = parse_graph(text);
    EXPECT_EQ(serialize_graph(back), text);
    EXPECT_EQ(genus(back), 2);
}

TEST(Io, GraphFileMatchesFixture) {
    const auto g = parse_graph(read_file(std::string(TRITROP_DATA_DIR) + "/two_hexagons.graph"));
    EXPECT_EQ(serialize_graph(g), serialize_graph(fixtures::two_hexagons()));
}

TEST(Io, DivisorRoundTrip) {
    const auto g = fixtures::two_hexagons();
    Divisor d;
    d.add(GraphPoint::vertex(0), -1);
    d.add(GraphPoint::on_edge(g, 3, Rational(1, 3)), 2);
    d.add(GraphPoint::vertex(7), 1);
    EXPECT_EQ(parse_divisor(serialize_divisor(d, g), g), d);
    const MetricGraph point(1, {});
    Divisor p;
    p.add(GraphPoint::vertex(0), 3);
    EXPECT_EQ(serialize_divisor(p, point), "vertex 0 3\n");
    EXPECT_EQ(parse_divisor("vertex 0 3\n", point), p);
}

TEST(Io, PolynomialRoundTrip) {
    const auto p = fixtures::honeycomb(2);
    const auto text = serialize_polynomial(p);
    EXPECT_EQ(serialize_polynomial(parse_polynomial(text)), text);
    EXPECT_EQ(serialize_polynomial(parse_polynomial(read_file(std::string(TRITROP_DATA_DIR) + "/honeycomb2.poly"))), text);
    const auto f = parse_polynomial(read_file(std::string(TRITROP_DATA_DIR) + "/elliptic.poly"));
    EXPECT_EQ(serialize_polynomial(f), serialize_polynomial(fixtures::cubic_f()));
}

TEST(Io, QuadricRoundTrip) {
    const auto q = fixtures::quadric(1);
    const auto text = serialize_quadric(q);
    EXPECT_EQ(serialize_quadric(parse_quadric(text)), text);
    EXPECT_EQ(serialize_quadric(parse_quadric(read_file(std::string(TRITROP_DATA_DIR) + "/quadric.quad"))), text);
}

TEST(Io, RealPolynomialMatchesFixture) {
    const auto p = parse_real_polynomial(read_file(std::string(TRITROP_DATA_DIR) + "/clebsch.rpoly"));
    const auto want = clebsch_sextic().c3;
    for (const Vec3d& x : {Vec3d(0.1, 0.2, 0.3), Vec3d(-0.7, 0.4, 1.1)}) EXPECT_NEAR(p.value(x), want.value(x), 1e-9);
    const auto s = parse_real_polynomial(read_file(std::string(TRITROP_DATA_DIR) + "/sphere.rpoly"));
    EXPECT_NEAR(s.value(Vec3d(1, 0, 0)), 0, 1e-15);
}

TEST(Io, ErrorsCarryLineNumbers) {
    EXPECT_EQ(message_of([] { parse_polynomial("0 0 1\n# comment\n1 0 1/0\n"); }), "line 3: zero denominator");
    EXPECT_EQ(message_of([] { parse_polynomial("0 0 1\n0 0 2\n"); }), "line 2: repeated support point");
    EXPECT_EQ(message_of([] { parse_polynomial("0 0\n"); }).rfind("line 1:", 0), 0U);
    EXPECT_EQ(message_of([] { parse_graph("vertices 2\n\nedge 0 1 -1\n"); }), "line 3: edge length must be positive");
    EXPECT_EQ(message_of([] { parse_graph("vertices 2\nedge 0 5 1\n"); }), "line 2: edge endpoint out of range");
    EXPECT_EQ(message_of([] { parse_quadric("3 0 0 1\n"); }), "line 1: exponent outside 2Δ3");
    EXPECT_EQ(message_of([] { read_file("/nonexistent/x.poly"); }), "cannot open /nonexistent/x.poly");
    const auto g = fixtures::two_hexagons();
    EXPECT_EQ(message_of([&] { parse_divisor("point 0 2 1\n", g); }), "line 1: offset outside edge");
}

TEST(Svg, CubicFLines) {
    Scene s;
    add_curve(s, curve_from_polynomial(fixtures::cubic_f()));
    const auto svg = render_svg(s);
    // box [−2, 4]², 40 px per unit, y flipped: (x, y) ↦ (40(x + 2), 40(4 − y))
    const auto px = [](int x, int y) { return std::make_pair(40.0 * (x + 2), 40.0 * (4 - y)); };
    const auto seg = [&](int x1, int y1, int x2, int y2) {
        auto a = px(x1, y1);
        auto b = px(x2, y2);
        if (b < a) std::swap(a, b);
        return std::array<double, 4>{a.first, a.second, b.first, b.second};
    };
    const auto got = lines_of(svg);
    EXPECT_EQ(got.size(), 18U);
    for (const auto& l : {seg(0, 0, 1, 0), seg(1, 0, 2, 1), seg(2, 1, 2, 2), seg(2, 2, 1, 2), seg(1, 2, 0, 1), seg(0, 1, 0, 0),
                          seg(-1, -1, 0, 0), seg(2, 2, 4, 4), seg(1, 2, 1, 3), seg(2, 1, 3, 1), seg(-1, -1, -1, -2), seg(-1, -1, -2, -1)}) {
        EXPECT_EQ(got.count(l), 1U) << l[0] << "," << l[1] << " " << l[2] << "," << l[3];
    }
    EXPECT_NE(svg.find("width=\"240.000000\" height=\"240.000000\""), std::string::npos);
    EXPECT_EQ(svg, render_svg(s));
}

TEST(Svg, EmptySceneIsAUnitBox) {
    const auto svg = render_svg(Scene{});
    EXPECT_NE(svg.find("viewBox=\"0 0 40.000000 40.000000\""), std::string::npos);
    EXPECT_TRUE(lines_of(svg).empty());
}

TEST(Svg, ChipsMarkersAndWeights) {
    Scene s;
    s.segments.push_back({{Rational(0), Rational(0)}, {Rational(2), Rational(0)}, 2, "curve"});
    add_divisor(s, {{{Rational(1), Rational(0)}, -1}, {{Rational(0), Rational(0)}, 3}});
    s.markers.push_back({{Rational(2), Rational(0)}, "a<b"});
    s.title = "x & y";
    const auto svg = render_svg(s);
    EXPECT_NE(svg.find("fill:#ffffff"), std::string::npos);
    EXPECT_NE(svg.find(">3</text>"), std::string::npos);
    EXPECT_NE(svg.find(">2</text>"), std::string::npos);
    EXPECT_NE(svg.find("a&lt;b"), std::string::npos);
    EXPECT_NE(svg.find("<title>x &amp; y</title>"), std::string::npos);
    EXPECT_NE(svg.find("stroke-width:6"), std::string::npos);
}

TEST(Svg, ClipsLongSegmentsAndLines) {
    Scene s;
    s.box = std::make_pair(Point2{Rational(0), Rational(0)}, Point2{Rational(1), Rational(1)});
    s.segments.push_back({{Rational(-1), Rational(1, 2)}, {Rational(3), Rational(1, 2)}, 1, "curve"});
    s.rays.push_back({{Rational(1, 2), Rational(5)}, {0, 1}, 1, "curve", true});
    s.rays.push_back({{Rational(5), Rational(5)}, {1, 0}, 1, "curve", false});
    const auto got = lines_of(render_svg(s));
    EXPECT_EQ(got, (std::set<std::array<double, 4>>{{0, 20, 40, 20}, {20, 0, 20, 40}}));
}

TEST(Svg, LiftedSceneIsDeterministic) {
    const auto c = curve_from_polynomial(fixtures::honeycomb(1));
    const auto classes = enumerate_tritangents(c);
    const auto phi = make_lift_map(fixtures::quadric(1), lift_cover(c, classes));
    Scene s;
    add_space_curve(s, lift_curve(c, phi));
    add_plane(s, plane_containing(lift_curve(one_one_curve(classes.front().representatives.front().curve), phi)));
    const auto a = render_svg(s);
    EXPECT_EQ(a, render_svg(s));
    EXPECT_GT(lines_of(a).size(), 20U);
}
