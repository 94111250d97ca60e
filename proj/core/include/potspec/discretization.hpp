#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "potspec/domains.hpp"

namespace potspec {

/// Log2D discretizes the logarithmic potential (dim 2), Newton3D the Newton
/// potential (dim 3).
enum class OperatorKind { Log2D, Newton3D };

int dimension_of(OperatorKind kind) noexcept;
std::string to_string(OperatorKind kind);
/// Accepts "log2d" or "newton3d"; throws SpecError otherwise.
OperatorKind parse_operator_kind(const std::string& name);

/// Largest meshes accepted for dense assembly.
inline constexpr std::size_t kMaxDenseCells2D = 20000;
inline constexpr std::size_t kMaxDenseCells3D = 15000;

/// Dense symmetric Nystrom matrix of a potential operator on a Mesh:
///   A(i, j) = kernel(|x_i - x_j|) h^d   (i != j)
///   A(i, i) = self-cell integral of the kernel over a cell of measure h^d
/// Row-major storage; A(i, j) and A(j, i) are the same double.
class KernelMatrix {
public:
    std::size_t size() const noexcept { return n_; }
    OperatorKind kind() const noexcept { return kind_; }
    const Mesh& mesh() const noexcept { return *mesh_; }
    std::shared_ptr<const Mesh> mesh_ptr() const noexcept { return mesh_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

private:
    friend KernelMatrix assemble(const Mesh& mesh, OperatorKind kind);
    KernelMatrix(std::shared_ptr<const Mesh> mesh, OperatorKind kind);

    std::shared_ptr<const Mesh> mesh_;
    OperatorKind kind_;
    std::size_t n_;
    std::vector<double> data_;
};

/// O(n^2) assembly, parallel over rows. Throws DimensionMismatch when the mesh
/// dimension does not match `kind`, ResolutionError when the mesh exceeds the
/// dense-size cap.
KernelMatrix assemble(const Mesh& mesh, OperatorKind kind);

/// u_i = sum_j A(i, j) f_j, i.e. the potential of f sampled at the cell centroids.
std::vector<double> apply(const KernelMatrix& matrix, std::span<const double> f);

/// Binary dump: uint32 dimension, uint32 n (little-endian), then n*n
/// little-endian float64 entries in row-major order.
void write_binary(const KernelMatrix& matrix, std::ostream& out);

struct MatrixDump {
    int dimension;
    std::size_t n;
    std::vector<double> entries;
};

MatrixDump read_binary(std::istream& in);

}  // namespace potspec
