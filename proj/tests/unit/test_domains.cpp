#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "potspec/domains.hpp"
#include "potspec/error.hpp"

using namespace potspec;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("domains") {

TEST_CASE("measures") {
    CHECK(Domain::disc(2.0).measure() == doctest::Approx(4.0 * kPi));
    CHECK(Domain::ball(1.0).measure() == doctest::Approx(4.0 * kPi / 3.0));
    CHECK(Domain::box({2.0, 3.0}).measure() == doctest::Approx(6.0));
    CHECK(Domain::box({1.0, 2.0, 3.0}).measure() == doctest::Approx(6.0));
    CHECK(Domain::ellipsoid({2.0, 1.0}).measure() == doctest::Approx(2.0 * kPi));
    CHECK(Domain::ellipsoid({1.0, 2.0, 3.0}).measure() == doctest::Approx(8.0 * kPi));
    CHECK(Domain::triangle({0, 0, 0}, {2, 0, 0}, {0, 1, 0}).measure() == doctest::Approx(1.0));
    CHECK(Domain::polygon({{0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {1, 1, 0}, {1, 2, 0}, {0, 2, 0}}).measure() ==
          doctest::Approx(3.0));
    CHECK(Domain::disc(1.0).dimension() == 2);
    CHECK(Domain::ball(1.0).dimension() == 3);
}

TEST_CASE("invalid geometry") {
    CHECK_THROWS(Domain::disc(-1.0));
    CHECK_THROWS(Domain::box({1.0}));
    CHECK_THROWS_AS(Domain::triangle({0, 0, 0}, {1, 1, 0}, {2, 2, 0}), GeometryError);
    // bow tie
    CHECK_THROWS_AS(Domain::polygon({{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}}), GeometryError);
    CHECK_THROWS_AS(Domain::polygon({{0, 0, 0}, {1, 0, 0}}), GeometryError);
}

TEST_CASE("clockwise polygons are reoriented") {
    const Domain cw = Domain::polygon({{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}});
    CHECK(cw.measure() == doctest::Approx(1.0));
    CHECK(cw.contains({0.5, 0.5, 0.0}));
}

TEST_CASE("membership is open") {
    const Domain d = Domain::disc(1.0);
    CHECK(d.contains({0.0, 0.0, 0.0}));
    CHECK_FALSE(d.contains({1.0, 0.0, 0.0}));
    const Domain sq = Domain::box({2.0, 2.0});
    CHECK(sq.contains({0.999, -0.999, 0.0}));
    CHECK_FALSE(sq.contains({1.0, 0.0, 0.0}));
    const Domain tri = Domain::triangle({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
    CHECK(tri.contains({0.2, 0.2, 0.0}));
    CHECK_FALSE(tri.contains({0.5, 0.5, 0.0}));  // on the hypotenuse
    CHECK_FALSE(tri.contains({0.0, 0.3, 0.0}));  // on a leg
    const Domain l = Domain::polygon({{0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {1, 1, 0}, {1, 2, 0}, {0, 2, 0}});
    CHECK(l.contains({0.5, 1.5, 0.0}));
    CHECK_FALSE(l.contains({1.5, 1.5, 0.0}));
    const Domain e = Domain::ellipsoid({2.0, 1.0, 0.5});
    CHECK(e.contains({1.9, 0.0, 0.0}));
    CHECK_FALSE(e.contains({0.0, 0.0, 0.6}));
}

TEST_CASE("normalization preserves shape and hits the target measure") {
    const Domain sq = normalize_measure(Domain::box({1.0, 1.0}, {3.0, 4.0, 0.0}), kPi);
    CHECK(sq.measure() == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(sq.centroid()[0] == doctest::Approx(3.0));
    const Domain tri = normalize_measure(Domain::triangle({0, 0, 0}, {3, 0, 0}, {1, 2, 0}), 5.0);
    CHECK(tri.measure() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(tri.shape_name() == "triangle");
    const Domain e = equilateral_triangle(kPi);
    CHECK(e.measure() == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(std::abs(e.centroid()[0]) < 1e-14);
    CHECK(std::abs(e.centroid()[1]) < 1e-14);
    const Domain pent = regular_polygon(5, 2.0);
    CHECK(pent.measure() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("spec parsing") {
    auto d = parse_domain_spec(R"({"shape": "disc", "params": {"radius": 2}})");
    CHECK(d.measure() == doctest::Approx(4.0 * kPi));
    d = parse_domain_spec(R"({"shape": "box", "params": {"extents": [1, 2]}, "normalize_measure_to": "unit-disc"})");
    CHECK(d.measure() == doctest::Approx(kPi));
    d = parse_domain_spec(R"({"shape": "ellipsoid", "params": {"semi_axes": [1, 1, 2]}, "normalize_measure_to": "unit-ball"})");
    CHECK(d.measure() == doctest::Approx(4.0 * kPi / 3.0));
    d = parse_domain_spec(R"({"shape": "triangle", "params": {"vertices": [[0,0],[1,0],[0,1]]}, "label": "t"})");
    CHECK(d.label() == "t");
    d = parse_domain_spec(R"({"shape": "polygon", "params": {"vertices": [[0,0],[1,0],[1,1],[0,1]]}, "normalize_measure_to": 3})");
    CHECK(d.measure() == doctest::Approx(3.0));
    d = parse_domain_spec(R"({"shape": "ball", "params": {"radius": 1, "center": [1, 2, 3]}})");
    CHECK(d.centroid()[2] == doctest::Approx(3.0));

    CHECK_THROWS_AS(parse_domain_spec("{"), SpecError);
    CHECK_THROWS_AS(parse_domain_spec(R"({"shape": "torus"})"), SpecError);
    CHECK_THROWS_AS(parse_domain_spec(R"({"params": {}})"), SpecError);
    CHECK_THROWS_AS(parse_domain_spec(R"({"shape": "disc", "params": {}})"), SpecError);
    CHECK_THROWS_AS(parse_domain_spec(R"({"shape": "disc", "params": {"radius": "x"}})"), SpecError);
    CHECK_THROWS_AS(parse_domain_spec(R"({"shape": "triangle", "params": {"vertices": [[0,0],[1,0]]}})"), SpecError);
    CHECK_THROWS_AS(parse_domain_spec(R"({"shape": "disc", "params": {"radius": 1}, "normalize_measure_to": -1})"),
                    SpecError);
    CHECK_THROWS_AS(parse_domain_spec(R"({"shape": "disc", "params": {"radius": 1}, "normalize_measure_to": "big"})"),
                    SpecError);
}

TEST_CASE("spec files") {
    const auto path = std::filesystem::temp_directory_path() / "potspec_domain_test.json";
    {
        std::ofstream f(path);
        f << R"({"shape": "disc", "params": {"radius": 1}})";
    }
    CHECK(load_domain_spec(path).measure() == doctest::Approx(kPi));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_domain_spec(path), std::ios_base::failure);
}

TEST_CASE("mesh construction") {
    const Mesh m = make_mesh(Domain::disc(1.0), 0.1);
    CHECK(m.dimension() == 2);
    CHECK(m.cell_measure == doctest::Approx(0.01));
    CHECK(m.size() > 300);
    CHECK(std::abs(m.total_measure() - kPi) < 0.05);
    for (const Point& c : m.centroids) CHECK(Domain::disc(1.0).contains(c));

    // the grid is centered on the bounding box, so the disc mesh is symmetric
    double sx = 0.0, sy = 0.0;
    for (const Point& c : m.centroids) {
        sx += c[0];
        sy += c[1];
    }
    CHECK(std::abs(sx) < 1e-9);
    CHECK(std::abs(sy) < 1e-9);

    const Mesh b = make_mesh(Domain::box({1.0, 1.0, 1.0}), 0.25);
    CHECK(b.size() == 64);
    CHECK(b.total_measure() == doctest::Approx(1.0));

    CHECK_THROWS_AS(make_mesh(Domain::disc(1.0), 1.0), ResolutionError);
    CHECK_THROWS_AS(make_mesh(Domain::disc(1.0), 0.0), ResolutionError);
    CHECK_THROWS_AS(make_mesh(Domain::disc(1.0), -0.1), ResolutionError);
}

TEST_CASE("mesh is deterministic") {
    const Domain d = Domain::polygon({{0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {1, 1, 0}, {1, 2, 0}, {0, 2, 0}});
    const Mesh a = make_mesh(d, 0.07), b = make_mesh(d, 0.07);
    CHECK(a.centroids == b.centroids);
}

TEST_CASE("measure matching") {
    for (double h : {0.2, 0.13, 0.07}) {
        const Mesh raw = make_mesh(Domain::disc(1.0), h);
        const Mesh m = match_measure(raw);
        CHECK(m.size() == raw.size());
        CHECK(m.total_measure() == doctest::Approx(kPi).epsilon(1e-13));
        CHECK(m.h / raw.h == doctest::Approx(std::sqrt(kPi / raw.total_measure())));
    }
    const Mesh m3 = match_measure(make_mesh(Domain::ball(1.0), 0.3));
    CHECK(m3.total_measure() == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
}

}  // TEST_SUITE
