#include "potspec/domains.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "potspec/error.hpp"

namespace potspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBand = 1e-14;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double signed_area(const std::vector<Point>& v) {
    double s = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * s;
}

double polygon_scale(const std::vector<Point>& v) {
    double lo[2] = {v[0][0], v[0][1]}, hi[2] = {v[0][0], v[0][1]};
    for (const auto& p : v)
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    return std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

int sign(double x) { return (x > 0) - (x < 0); }

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
    const int d1 = sign(cross(q1, q2, p1)), d2 = sign(cross(q1, q2, p2));
    const int d3 = sign(cross(p1, p2, q1)), d4 = sign(cross(p1, p2, q2));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && on_segment(q1, q2, p1)) return true;
    if (d2 == 0 && on_segment(q1, q2, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, q1)) return true;
    if (d4 == 0 && on_segment(p1, p2, q2)) return true;
    return false;
}

void validate_polygon(const std::vector<Point>& v) {
    const std::size_t n = v.size();
    if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
    for (const auto& p : v)
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw GeometryError("polygon vertex is not finite");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % n];
        if (a[0] == b[0] && a[1] == b[1]) throw GeometryError("polygon has a zero-length edge");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            const Point &p1 = v[i], &p2 = v[(i + 1) % n], &q1 = v[j], &q2 = v[(j + 1) % n];
            if (adjacent) {
                // adjacent edges may only share their common vertex
                const Point& shared = (j == i + 1) ? p2 : p1;
                const Point& far_p = (j == i + 1) ? p1 : p2;
                const Point& far_q = (j == i + 1) ? q2 : q1;
                if (cross(shared, far_p, far_q) == 0.0 &&
                    (far_p[0] - shared[0]) * (far_q[0] - shared[0]) +
                            (far_p[1] - shared[1]) * (far_q[1] - shared[1]) >
                        0.0)
                    throw GeometryError("polygon edges fold back onto each other");
                continue;
            }
            if (segments_intersect(p1, p2, q1, q2)) throw GeometryError("polygon is self-intersecting");
        }
    }
}

double measure_of(const Shape& s) {
    return std::visit(
        overloaded{
            [](const DiscShape& d) { return kPi * d.radius * d.radius; },
            [](const BallShape& b) { return 4.0 / 3.0 * kPi * b.radius * b.radius * b.radius; },
            [](const BoxShape& b) {
                double m = 1.0;
                for (int k = 0; k < b.dim; ++k) m *= b.extents[k];
                return m;
            },
            [](const EllipsoidShape& e) {
                double m = e.dim == 2 ? kPi : 4.0 / 3.0 * kPi;
                for (int k = 0; k < e.dim; ++k) m *= e.semi_axes[k];
                return m;
            },
            [](const PolygonShape& p) { return signed_area(p.vertices); },
        },
        s);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << what << " must be positive and finite, got " << v;
        throw GeometryError(msg.str());
    }
}

}  // namespace

Domain::Domain(Shape shape, int dim, std::string label)
    : shape_(std::move(shape)), dim_(dim), measure_(measure_of(shape_)), label_(std::move(label)) {}

Domain Domain::disc(double radius, Point center) {
    require_positive(radius, "disc radius");
    center[2] = 0.0;
    return Domain(DiscShape{center, radius}, 2, "disc");
}

Domain Domain::ball(double radius, Point center) {
    require_positive(radius, "ball radius");
    return Domain(BallShape{center, radius}, 3, "ball");
}

Domain Domain::box(const std::vector<double>& extents, Point center) {
    if (extents.size() != 2 && extents.size() != 3) throw GeometryError("box needs 2 or 3 extents");
    Point e{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < extents.size(); ++k) {
        require_positive(extents[k], "box extent");
        e[k] = extents[k];
    }
    const int dim = static_cast<int>(extents.size());
    if (dim == 2) center[2] = 0.0;
    return Domain(BoxShape{center, e, dim}, dim, "box");
}

Domain Domain::ellipsoid(const std::vector<double>& semi_axes, Point center) {
    if (semi_axes.size() != 2 && semi_axes.size() != 3) throw GeometryError("ellipsoid needs 2 or 3 semi-axes");
    Point a{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < semi_axes.size(); ++k) {
        require_positive(semi_axes[k], "ellipsoid semi-axis");
        a[k] = semi_axes[k];
    }
    const int dim = static_cast<int>(semi_axes.size());
    if (dim == 2) center[2] = 0.0;
    return Domain(EllipsoidShape{center, a, dim}, dim, "ellipsoid");
}

Domain Domain::polygon(std::vector<Point> vertices) {
    for (auto& p : vertices) p[2] = 0.0;
    validate_polygon(vertices);
    const double area = signed_area(vertices);
    const double scale = polygon_scale(vertices);
    if (std::abs(area) <= 1e-12 * scale * scale) throw GeometryError("polygon has zero area");
    if (area < 0.0) std::reverse(vertices.begin(), vertices.end());
    const bool tri = vertices.size() == 3;
    return Domain(PolygonShape{std::move(vertices), tri}, 2, tri ? "triangle" : "polygon");
}

Domain Domain::triangle(Point a, Point b, Point c) {
    a[2] = b[2] = c[2] = 0.0;
    const double scale = polygon_scale({a, b, c});
    if (scale == 0.0 || std::abs(cross(a, b, c)) <= 1e-12 * scale * scale)
        throw GeometryError("degenerate (zero-area) triangle");
    return polygon({a, b, c});
}

std::string Domain::shape_name() const {
    return std::visit(overloaded{
                          [](const DiscShape&) { return std::string("disc"); },
                          [](const BallShape&) { return std::string("ball"); },
                          [](const BoxShape&) { return std::string("box"); },
                          [](const EllipsoidShape&) { return std::string("ellipsoid"); },
                          [](const PolygonShape& p) {
                              return std::string(p.is_triangle ? "triangle" : "polygon");
                          },
                      },
                      shape_);
}

Domain Domain::with_label(std::string label) const {
    Domain d = *this;
    d.label_ = std::move(label);
    return d;
}

bool Domain::contains(const Point& p) const {
    return std::visit(
        overloaded{
            [&](const DiscShape& d) {
                const double dx = p[0] - d.center[0], dy = p[1] - d.center[1];
                return dx * dx + dy * dy < d.radius * d.radius;
            },
            [&](const BallShape& b) {
                const double dx = p[0] - b.center[0], dy = p[1] - b.center[1], dz = p[2] - b.center[2];
                return dx * dx + dy * dy + dz * dz < b.radius * b.radius;
            },
            [&](const BoxShape& b) {
                for (int k = 0; k < b.dim; ++k)
                    if (!(std::abs(p[k] - b.center[k]) < 0.5 * b.extents[k])) return false;
                return true;
            },
            [&](const EllipsoidShape& e) {
                double s = 0.0;
                for (int k = 0; k < e.dim; ++k) {
                    const double t = (p[k] - e.center[k]) / e.semi_axes[k];
                    s += t * t;
                }
                return s < 1.0;
            },
            [&](const PolygonShape& poly) {
                const auto& v = poly.vertices;
                const double band = kBand * polygon_scale(v);
                int winding = 0;
                for (std::size_t i = 0, n = v.size(); i < n; ++i) {
                    const Point& a = v[i];
                    const Point& b = v[(i + 1) % n];
                    const double c = cross(a, b, p);
                    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
                    if (std::abs(c) <= band * len) {
                        const double t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) /
                                         (len * len);
                        if (t >= -kBand && t <= 1.0 + kBand) return false;  // on the boundary
                    }
                    if (a[1] <= p[1]) {
                        if (b[1] > p[1] && c > 0.0) ++winding;
                    } else if (b[1] <= p[1] && c < 0.0) {
                        --winding;
                    }
                }
                return winding != 0;
            },
        },
        shape_);
}

Point Domain::centroid() const {
    return std::visit(overloaded{
                          [](const DiscShape& d) { return d.center; },
                          [](const BallShape& b) { return b.center; },
                          [](const BoxShape& b) { return b.center; },
                          [](const EllipsoidShape& e) { return e.center; },
                          [](const PolygonShape& poly) {
                              const auto& v = poly.vertices;
                              double cx = 0.0, cy = 0.0, a = 0.0;
                              for (std::size_t i = 0, n = v.size(); i < n; ++i) {
                                  const auto& p = v[i];
                                  const auto& q = v[(i + 1) % n];
                                  const double w = p[0] * q[1] - q[0] * p[1];
                                  a += w;
                                  cx += (p[0] + q[0]) * w;
                                  cy += (p[1] + q[1]) * w;
                              }
                              return Point{cx / (3.0 * a), cy / (3.0 * a), 0.0};
                          },
                      },
                      shape_);
}

BoundingBox Domain::bounds() const {
    return std::visit(
        overloaded{
            [](const DiscShape& d) {
                return BoundingBox{{d.center[0] - d.radius, d.center[1] - d.radius, 0.0},
                                   {d.center[0] + d.radius, d.center[1] + d.radius, 0.0}};
            },
            [](const BallShape& b) {
                BoundingBox bb;
                for (int k = 0; k < 3; ++k) {
                    bb.lo[k] = b.center[k] - b.radius;
                    bb.hi[k] = b.center[k] + b.radius;
                }
                return bb;
            },
            [](const BoxShape& b) {
                BoundingBox bb{{0, 0, 0}, {0, 0, 0}};
                for (int k = 0; k < b.dim; ++k) {
                    bb.lo[k] = b.center[k] - 0.5 * b.extents[k];
                    bb.hi[k] = b.center[k] + 0.5 * b.extents[k];
                }
                return bb;
            },
            [](const EllipsoidShape& e) {
                BoundingBox bb{{0, 0, 0}, {0, 0, 0}};
                for (int k = 0; k < e.dim; ++k) {
                    bb.lo[k] = e.center[k] - e.semi_axes[k];
                    bb.hi[k] = e.center[k] + e.semi_axes[k];
                }
                return bb;
            },
            [](const PolygonShape& poly) {
                BoundingBox bb{poly.vertices[0], poly.vertices[0]};
                for (const auto& p : poly.vertices)
                    for (int k = 0; k < 2; ++k) {
                        bb.lo[k] = std::min(bb.lo[k], p[k]);
                        bb.hi[k] = std::max(bb.hi[k], p[k]);
                    }
                return bb;
            },
        },
        shape_);
}

Domain Domain::scaled(double factor) const {
    require_positive(factor, "scale factor");
    const Point c = centroid();
    Shape s = std::visit(overloaded{
                             [&](DiscShape d) -> Shape {
                                 d.radius *= factor;
                                 return d;
                             },
                             [&](BallShape b) -> Shape {
                                 b.radius *= factor;
                                 return b;
                             },
                             [&](BoxShape b) -> Shape {
                                 for (auto& e : b.extents) e *= factor;
                                 return b;
                             },
                             [&](EllipsoidShape e) -> Shape {
                                 for (auto& a : e.semi_axes) a *= factor;
                                 return e;
                             },
                             [&](PolygonShape p) -> Shape {
                                 for (auto& v : p.vertices)
                                     for (int k = 0; k < 2; ++k) v[k] = c[k] + factor * (v[k] - c[k]);
                                 return p;
                             },
                         },
                         shape_);
    return Domain(std::move(s), dim_, label_);
}

Domain normalize_measure(const Domain& d, double target) {
    require_positive(target, "target measure");
    const double factor = std::pow(target / d.measure(), 1.0 / d.dimension());
    return d.scaled(factor);
}

Domain equilateral_triangle(double area) {
    require_positive(area, "triangle area");
    const double side = std::sqrt(4.0 * area / std::sqrt(3.0));
    const double circum = side / std::sqrt(3.0);
    const double inner = 0.5 * circum;
    return Domain::triangle({0.0, circum, 0.0}, {-0.5 * side, -inner, 0.0}, {0.5 * side, -inner, 0.0})
        .with_label("equilateral");
}

Domain regular_polygon(int sides, double area) {
    if (sides < 3) throw GeometryError("regular polygon needs at least 3 sides");
    require_positive(area, "polygon area");
    // area = n/2 R^2 sin(2 pi / n)
    const double r = std::sqrt(2.0 * area / (sides * std::sin(2.0 * kPi / sides)));
    std::vector<Point> v;
    for (int k = 0; k < sides; ++k) {
        const double t = 0.5 * kPi + 2.0 * kPi * k / sides;
        v.push_back({r * std::cos(t), r * std::sin(t), 0.0});
    }
    return Domain::polygon(std::move(v)).with_label("regular-" + std::to_string(sides) + "-gon");
}

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw SpecError(std::string("domain spec: params.") + key + " must be a number");
    return j.at(key).get<double>();
}

std::vector<double> numbers(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw SpecError(std::string("domain spec: params.") + key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw SpecError(std::string("domain spec: params.") + key + " has a non-number");
        out.push_back(v.get<double>());
    }
    return out;
}

Point center_of(const json& params, std::size_t dim) {
    Point c{0.0, 0.0, 0.0};
    if (!params.contains("center")) return c;
    const auto v = numbers(params, "center");
    if (v.size() != dim) throw SpecError("domain spec: center has the wrong dimension");
    for (std::size_t k = 0; k < dim; ++k) c[k] = v[k];
    return c;
}

std::vector<Point> vertices_of(const json& params) {
    if (!params.contains("vertices") || !params.at("vertices").is_array())
        throw SpecError("domain spec: params.vertices must be an array of [x, y] pairs");
    std::vector<Point> out;
    for (const auto& v : params.at("vertices")) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw SpecError("domain spec: every vertex must be [x, y]");
        out.push_back({v[0].get<double>(), v[1].get<double>(), 0.0});
    }
    return out;
}

}  // namespace

Domain parse_domain_spec(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("domain spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("shape") || !doc.at("shape").is_string())
        throw SpecError("domain spec needs a string field \"shape\"");
    const json params = doc.value("params", json::object());
    if (!params.is_object()) throw SpecError("domain spec: \"params\" must be an object");
    const auto shape = doc.at("shape").get<std::string>();

    std::optional<Domain> d;
    if (shape == "disc") {
        d = Domain::disc(number(params, "radius"), center_of(params, 2));
    } else if (shape == "ball") {
        d = Domain::ball(number(params, "radius"), center_of(params, 3));
    } else if (shape == "box") {
        const auto e = numbers(params, "extents");
        if (e.size() != 2 && e.size() != 3) throw SpecError("domain spec: box needs 2 or 3 extents");
        d = Domain::box(e, center_of(params, e.size()));
    } else if (shape == "ellipsoid") {
        const auto a = numbers(params, "semi_axes");
        if (a.size() != 2 && a.size() != 3) throw SpecError("domain spec: ellipsoid needs 2 or 3 semi_axes");
        d = Domain::ellipsoid(a, center_of(params, a.size()));
    } else if (shape == "polygon") {
        d = Domain::polygon(vertices_of(params));
    } else if (shape == "triangle") {
        const auto v = vertices_of(params);
        if (v.size() != 3) throw SpecError("domain spec: triangle needs exactly 3 vertices");
        d = Domain::triangle(v[0], v[1], v[2]);
    } else {
        throw SpecError("domain spec: unknown shape \"" + shape + "\"");
    }

    if (doc.contains("normalize_measure_to")) {
        const auto& t = doc.at("normalize_measure_to");
        double target;
        if (t.is_number()) {
            target = t.get<double>();
        } else if (t == "unit-disc") {
            target = kPi;
        } else if (t == "unit-ball") {
            target = 4.0 / 3.0 * kPi;
        } else {
            throw SpecError("domain spec: normalize_measure_to must be a number, \"unit-disc\" or \"unit-ball\"");
        }
        if (!(target > 0.0)) throw SpecError("domain spec: normalize_measure_to must be positive");
        d = normalize_measure(*d, target);
    }
    if (doc.contains("label") && doc.at("label").is_string()) d = d->with_label(doc.at("label").get<std::string>());
    return *d;
}

Domain load_domain_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read domain spec " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_domain_spec(buf.str());
}

Mesh make_mesh(const Domain& d, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ResolutionError("cell size h must be positive");
    const int dim = d.dimension();
    const BoundingBox bb = d.bounds();
    std::array<long, 3> cells{1, 1, 1};
    Point origin{0.0, 0.0, 0.0};
    double estimate = 1.0;
    for (int k = 0; k < dim; ++k) {
        const double width = bb.hi[k] - bb.lo[k];
        cells[k] = std::max<long>(1, static_cast<long>(std::ceil(width / h - 1e-9)));
        origin[k] = 0.5 * (bb.lo[k] + bb.hi[k]) - 0.5 * h * static_cast<double>(cells[k]);
        estimate *= static_cast<double>(cells[k]);
    }
    if (estimate > 5e8) throw ResolutionError("mesh too fine: bounding grid exceeds 5e8 cells");

    Mesh mesh{d, h, std::pow(h, dim), {}};
    Point c{0.0, 0.0, 0.0};
    for (long iz = 0; iz < cells[2]; ++iz) {
        if (dim == 3) c[2] = origin[2] + (static_cast<double>(iz) + 0.5) * h;
        for (long iy = 0; iy < cells[1]; ++iy) {
            c[1] = origin[1] + (static_cast<double>(iy) + 0.5) * h;
            for (long ix = 0; ix < cells[0]; ++ix) {
                c[0] = origin[0] + (static_cast<double>(ix) + 0.5) * h;
                if (d.contains(c)) mesh.centroids.push_back(c);
            }
        }
    }
    if (mesh.size() < kMinMeshCells) {
        std::ostringstream msg;
        msg << "mesh too coarse: h=" << h << " leaves " << mesh.size() << " cells (need >= " << kMinMeshCells
            << ")";
        throw ResolutionError(msg.str());
    }
    return mesh;
}

Mesh match_measure(const Mesh& mesh) {
    const int dim = mesh.dimension();
    const double s = std::pow(mesh.domain.measure() / mesh.total_measure(), 1.0 / dim);
    const Point o = mesh.domain.centroid();
    Mesh out{mesh.domain, s * mesh.h, std::pow(s * mesh.h, dim), mesh.centroids};
    for (Point& c : out.centroids)
        for (int k = 0; k < dim; ++k) c[k] = o[k] + s * (c[k] - o[k]);
    return out;
}

}  // namespace potspec
