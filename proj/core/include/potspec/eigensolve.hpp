#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "potspec/analytic_spectra.hpp"
#include "potspec/discretization.hpp"

namespace potspec {

/// Where a spectrum came from.
struct SpectrumSource {
    std::string domain;  ///< domain label
    OperatorKind kind = OperatorKind::Log2D;
    double h = 0.0;
    std::size_t n = 0;
};

/// Eigen-decomposition of a symmetric matrix, ordered by descending |lambda|
/// (ties: larger signed value first).
struct Spectrum {
    std::vector<double> eigenvalues;
    /// Column-major n x n; column k is the unit eigenvector of eigenvalues[k].
    /// Empty unless vectors were requested.
    std::vector<double> eigenvectors;
    SpectrumSource source;

    std::size_t size() const noexcept { return eigenvalues.size(); }
    bool has_vectors() const noexcept { return !eigenvectors.empty(); }
    std::span<const double> vector(std::size_t k) const {
        return {eigenvectors.data() + k * size(), size()};
    }
    /// 1/lambda for nonzero eigenvalues, ascending modulus.
    std::vector<double> characteristic_numbers() const;
};

enum class EigenBackend {
    Auto,         ///< Jacobi up to kJacobiMaxSize, Tridiagonal above
    Jacobi,       ///< cyclic Jacobi rotations
    Tridiagonal,  ///< Householder tridiagonalization + implicit symmetric QR
};

inline constexpr std::size_t kJacobiMaxSize = 32;

/// Full spectrum of an assembled operator. Throws ContractError unless the
/// matrix is exactly symmetric.
Spectrum decompose(const KernelMatrix& matrix, bool want_vectors, EigenBackend backend = EigenBackend::Auto);

/// Same for a raw row-major n x n symmetric matrix.
Spectrum decompose_dense(std::span<const double> a, std::size_t n, bool want_vectors,
                         EigenBackend backend = EigenBackend::Auto);

/// (sum |lambda|^p)^(1/p) over the whole spectrum; p = infinity gives |lambda_1|.
/// Throws UnsupportedExponent for p < 1.
SchattenReport schatten_norm(const Spectrum& spectrum, double p);

/// Frobenius norm straight from the entries.
double hs_norm_direct(const KernelMatrix& matrix);

/// Number of eigenvalues below -rel_tol * |lambda_1|.
std::size_t count_negative(const Spectrum& spectrum, double rel_tol = 1e-10);

struct KacSummation {
    double value;
    std::size_t skipped_zero_eigenvalues;
};

/// Discrete Abel summation of the constant function 1 at cell y:
///   sum_j 1/(1 + mu_j delta) u_j(y) sum_x u_j(x) h^d,
/// with u_j the eigenvectors scaled to unit discrete L2 norm and mu_j = 1/lambda_j.
KacSummation kac_summation_check(const Spectrum& spectrum, const Mesh& mesh, double delta, std::size_t y_index);

/// CSV export: header line, then "index,eigenvalue,characteristic_number" rows
/// for the first `count` eigenvalues (all when count = 0).
void write_spectrum_csv(const Spectrum& spectrum, std::ostream& out, std::size_t count = 0);

}  // namespace potspec
