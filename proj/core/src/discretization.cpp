#include "potspec/discretization.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "potspec/error.hpp"
#include "potspec/kernels.hpp"
#include "potspec/parallel.hpp"

namespace potspec {

namespace {

template <class T>
T to_little_endian(T v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        unsigned char b[sizeof(T)];
        std::memcpy(b, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
        std::memcpy(&v, b, sizeof(T));
        return v;
    }
}

template <class T>
void put(std::ostream& out, T v) {
    v = to_little_endian(v);
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw std::ios_base::failure("truncated matrix dump");
    return to_little_endian(v);
}

}  // namespace

int dimension_of(OperatorKind kind) noexcept { return kind == OperatorKind::Log2D ? 2 : 3; }

std::string to_string(OperatorKind kind) { return kind == OperatorKind::Log2D ? "log2d" : "newton3d"; }

OperatorKind parse_operator_kind(const std::string& name) {
    if (name == "log2d") return OperatorKind::Log2D;
    if (name == "newton3d") return OperatorKind::Newton3D;
    throw SpecError("unknown operator kind \"" + name + "\" (expected log2d or newton3d)");
}

KernelMatrix::KernelMatrix(std::shared_ptr<const Mesh> mesh, OperatorKind kind)
    : mesh_(std::move(mesh)), kind_(kind), n_(mesh_->size()), data_(n_ * n_) {}

KernelMatrix assemble(const Mesh& mesh, OperatorKind kind) {
    const int dim = dimension_of(kind);
    if (mesh.dimension() != dim) {
        std::ostringstream msg;
        msg << to_string(kind) << " needs a " << dim << "D mesh, got " << mesh.dimension() << "D";
        throw DimensionMismatch(msg.str());
    }
    const std::size_t cap = dim == 2 ? kMaxDenseCells2D : kMaxDenseCells3D;
    if (mesh.size() > cap) {
        std::ostringstream msg;
        msg << "mesh has " << mesh.size() << " cells; dense assembly is capped at " << cap;
        throw ResolutionError(msg.str());
    }

    KernelMatrix m(std::make_shared<const Mesh>(mesh), kind);
    const std::size_t n = m.n_;
    const double w = mesh.cell_measure;
    const double diag = kernels::self_cell_integral(dim, w);
    const auto& x = m.mesh_->centroids;
    double* a = m.data_.data();

    // Each unordered pair is evaluated once by the worker owning row i and
    // mirrored into column i; writes from different rows never overlap.
    parallel_for(n, [&](std::size_t i) {
        a[i * n + i] = diag;
        const Point& xi = x[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = xi[0] - x[j][0], dy = xi[1] - x[j][1], dz = xi[2] - x[j][2];
            const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
            const double v = kernels::value(dim, r) * w;
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    });
    return m;
}

std::vector<double> apply(const KernelMatrix& matrix, std::span<const double> f) {
    const std::size_t n = matrix.size();
    if (f.size() != n) {
        std::ostringstream msg;
        msg << "apply: vector length " << f.size() << " does not match matrix size " << n;
        throw DimensionMismatch(msg.str());
    }
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = matrix.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * f[j];
        u[i] = s;
    }
    return u;
}

void write_binary(const KernelMatrix& matrix, std::ostream& out) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(dimension_of(matrix.kind())));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(matrix.size()));
    for (double v : matrix.data()) put<double>(out, v);
    if (!out) throw std::ios_base::failure("failed to write matrix dump");
}

MatrixDump read_binary(std::istream& in) {
    MatrixDump d;
    d.dimension = static_cast<int>(get<std::uint32_t>(in));
    d.n = get<std::uint32_t>(in);
    d.entries.resize(d.n * d.n);
    for (auto& v : d.entries) v = get<double>(in);
    return d;
}

}  // namespace potspec
