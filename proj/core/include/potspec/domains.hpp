#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace potspec {

/// Point in R^2 or R^3; 2D points keep z = 0.
using Point = std::array<double, 3>;

struct DiscShape {
    Point center;
    double radius;
};

struct BallShape {
    Point center;
    double radius;
};

/// Axis-aligned box (rectangle when dim = 2), centered at `center`.
struct BoxShape {
    Point center;
    Point extents;
    int dim;
};

/// Axis-aligned ellipsoid (ellipse when dim = 2).
struct EllipsoidShape {
    Point center;
    Point semi_axes;
    int dim;
};

/// Simple polygon, counter-clockwise vertices.
struct PolygonShape {
    std::vector<Point> vertices;
    bool is_triangle;
};

using Shape = std::variant<DiscShape, BallShape, BoxShape, EllipsoidShape, PolygonShape>;

struct BoundingBox {
    Point lo;
    Point hi;
};

/// Bounded open region in R^2 or R^3 with its exact measure.
/// Immutable once built; construct through the factory functions.
class Domain {
public:
    static Domain disc(double radius, Point center = {});
    static Domain ball(double radius, Point center = {});
    /// 2 extents give a rectangle, 3 a box.
    static Domain box(const std::vector<double>& extents, Point center = {});
    /// 2 semi-axes give an ellipse, 3 an ellipsoid.
    static Domain ellipsoid(const std::vector<double>& semi_axes, Point center = {});
    /// Rejects self-intersecting or zero-area input; clockwise input is reversed.
    static Domain polygon(std::vector<Point> vertices);
    static Domain triangle(Point a, Point b, Point c);

    int dimension() const noexcept { return dim_; }
    double measure() const noexcept { return measure_; }
    const Shape& shape() const noexcept { return shape_; }
    /// "disc", "ball", "box", "ellipsoid", "polygon" or "triangle".
    std::string shape_name() const;

    const std::string& label() const noexcept { return label_; }
    Domain with_label(std::string label) const;

    /// Open-set membership. Polygon points within a 1e-14 relative band of an
    /// edge count as outside.
    bool contains(const Point& p) const;
    Point centroid() const;
    BoundingBox bounds() const;
    /// Dilation about the centroid.
    Domain scaled(double factor) const;

private:
    Domain(Shape shape, int dim, std::string label);

    Shape shape_;
    int dim_;
    double measure_;
    std::string label_;
};

/// Rescale `d` about its centroid so that its measure equals `target`.
Domain normalize_measure(const Domain& d, double target);

/// Equilateral triangle with centroid at the origin and the given area.
Domain equilateral_triangle(double area);

/// Regular n-gon centered at the origin with the given area (one vertex on +y).
Domain regular_polygon(int sides, double area);

/// Parse a domain spec:
///   {"shape": "disc"|"polygon"|"triangle"|"ball"|"box"|"ellipsoid",
///    "params": {...}, "normalize_measure_to": number | "unit-disc" | "unit-ball"}
/// Throws SpecError on malformed input, GeometryError on invalid geometry.
Domain parse_domain_spec(std::string_view json_text);

/// Reads and parses a spec file. Throws std::ios_base::failure if unreadable.
Domain load_domain_spec(const std::filesystem::path& path);

/// Uniform Cartesian cell decomposition of a domain. A cell belongs to the
/// mesh iff its centroid lies inside the domain.
struct Mesh {
    Domain domain;
    double h;
    double cell_measure;  ///< h^d
    std::vector<Point> centroids;

    std::size_t size() const noexcept { return centroids.size(); }
    int dimension() const noexcept { return domain.dimension(); }
    double total_measure() const noexcept { return cell_measure * static_cast<double>(size()); }
};

inline constexpr std::size_t kMinMeshCells = 16;

/// Grid over the bounding box, centered on it, with ceil(width / h) cells per
/// axis. Throws ResolutionError when fewer than 16 cells are included.
Mesh make_mesh(const Domain& d, double h);

/// The same cells with the grid dilated about the domain centroid so that
/// total_measure() equals the domain measure. h becomes s*h with
/// s = (|domain| / |cells|)^(1/d); cell count and membership are unchanged.
Mesh match_measure(const Mesh& mesh);

}  // namespace potspec
