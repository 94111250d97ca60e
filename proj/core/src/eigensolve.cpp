#include "potspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "potspec/error.hpp"

namespace potspec {

namespace {

struct RawEigen {
    std::vector<double> values;
    std::vector<double> vectors;  // column-major
};

RawEigen tridiagonal_eigen(std::span<const double> a, std::size_t n, bool want_vectors) {
    using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;
    const auto idx = static_cast<Eigen::Index>(n);
    // symmetric: row-major == column-major
    const Matrix m = Eigen::Map<const Matrix>(a.data(), idx, idx);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("tridiagonal QR eigensolver did not converge");
    RawEigen out;
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    if (want_vectors) out.vectors.assign(es.eigenvectors().data(), es.eigenvectors().data() + n * n);
    return out;
}

// Cyclic Jacobi rotations on a dense copy.
RawEigen jacobi_eigen(std::span<const double> a_in, std::size_t n, bool want_vectors) {
    std::vector<double> a(a_in.begin(), a_in.end());
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    double frob = 0.0;
    for (double x : a) frob += x * x;
    frob = std::sqrt(frob);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        if (std::sqrt(2.0 * off) <= 1e-15 * frob || off == 0.0) {
            RawEigen out;
            out.values.resize(n);
            for (std::size_t i = 0; i < n; ++i) out.values[i] = at(i, i);
            if (want_vectors) {
                // v is row-major with eigenvectors in columns; transpose to column-major
                out.vectors.resize(n * n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t k = 0; k < n; ++k) out.vectors[k * n + i] = v[i * n + k];
            }
            return out;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    throw NumericError("Jacobi eigensolver did not converge in 100 sweeps");
}

void require_symmetric(std::span<const double> a, std::size_t n) {
    if (a.size() != n * n) throw DimensionMismatch("matrix storage does not match n*n");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a[i * n + j] != a[j * n + i]) {
                std::ostringstream msg;
                msg << "matrix is not symmetric at (" << i << ", " << j << ")";
                throw ContractError(msg.str());
            }
}

}  // namespace

std::vector<double> Spectrum::characteristic_numbers() const {
    std::vector<double> mu;
    mu.reserve(eigenvalues.size());
    for (double l : eigenvalues)
        if (l != 0.0) mu.push_back(1.0 / l);
    return mu;  // eigenvalues are sorted by descending modulus already
}

Spectrum decompose_dense(std::span<const double> a, std::size_t n, bool want_vectors, EigenBackend backend) {
    require_symmetric(a, n);
    if (n == 0) return {};
    const bool use_jacobi =
        backend == EigenBackend::Jacobi || (backend == EigenBackend::Auto && n <= kJacobiMaxSize);
    RawEigen raw = use_jacobi ? jacobi_eigen(a, n, want_vectors) : tridiagonal_eigen(a, n, want_vectors);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double ax = std::abs(raw.values[x]), ay = std::abs(raw.values[y]);
        if (ax != ay) return ax > ay;
        return raw.values[x] > raw.values[y];
    });

    Spectrum s;
    s.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) s.eigenvalues[k] = raw.values[order[k]];
    if (want_vectors) {
        s.eigenvectors.resize(n * n);
        for (std::size_t k = 0; k < n; ++k) {
            const double* src = raw.vectors.data() + order[k] * n;
            // deterministic sign: largest-magnitude component positive
            std::size_t big = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (std::abs(src[i]) > std::abs(src[big])) big = i;
            const double sgn = src[big] < 0.0 ? -1.0 : 1.0;
            for (std::size_t i = 0; i < n; ++i) s.eigenvectors[k * n + i] = sgn * src[i];
        }
    }
    s.source.n = n;
    return s;
}

Spectrum decompose(const KernelMatrix& matrix, bool want_vectors, EigenBackend backend) {
    Spectrum s = decompose_dense(matrix.data(), matrix.size(), want_vectors, backend);
    s.source = {matrix.mesh().domain.label(), matrix.kind(), matrix.mesh().h, matrix.size()};
    return s;
}

SchattenReport schatten_norm(const Spectrum& spectrum, double p) {
    if (!(p >= 1.0)) {
        std::ostringstream msg;
        msg << "Schatten exponent must be >= 1, got " << p;
        throw UnsupportedExponent(msg.str());
    }
    SchattenReport r;
    r.p = p;
    r.provenance = Provenance::Discretized;
    r.truncation = {SummationMethod::FullSpectrum, -1, 0, static_cast<long>(spectrum.size())};
    r.tail_bound = 0.0;
    if (spectrum.size() == 0) return r;
    const double top = std::abs(spectrum.eigenvalues.front());
    if (p == kInfinity || top == 0.0) {
        r.value = top;
        return r;
    }
    // scaled by the largest modulus to stay clear of under/overflow
    long double s = 0.0L;
    for (auto it = spectrum.eigenvalues.rbegin(); it != spectrum.eigenvalues.rend(); ++it)
        s += std::pow(static_cast<long double>(std::abs(*it) / top), static_cast<long double>(p));
    r.value = top * static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(p)));
    return r;
}

double hs_norm_direct(const KernelMatrix& matrix) {
    long double s = 0.0L;
    for (double v : matrix.data()) s += static_cast<long double>(v) * v;
    return static_cast<double>(std::sqrt(s));
}

std::size_t count_negative(const Spectrum& spectrum, double rel_tol) {
    if (spectrum.size() == 0) return 0;
    const double threshold = -rel_tol * std::abs(spectrum.eigenvalues.front());
    return static_cast<std::size_t>(std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                                                   [&](double l) { return l < threshold; }));
}

KacSummation kac_summation_check(const Spectrum& spectrum, const Mesh& mesh, double delta, std::size_t y_index) {
    if (!spectrum.has_vectors()) throw ContractError("Kac summation needs eigenvectors");
    if (spectrum.size() != mesh.size()) throw DimensionMismatch("spectrum and mesh sizes differ");
    if (y_index >= mesh.size()) throw ContractError("y_index outside the mesh");
    if (!(delta >= 0.0)) throw ContractError("delta must be nonnegative");

    const std::size_t n = spectrum.size();
    const double w = mesh.cell_measure;
    const double scale = 1.0 / std::sqrt(w);  // u_j = v_j / sqrt(h^d) has unit discrete L2 norm
    long double total = 0.0L;
    std::size_t skipped = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double lambda = spectrum.eigenvalues[j];
        if (lambda == 0.0) {
            ++skipped;
            continue;
        }
        const double mu = 1.0 / lambda;
        const auto v = spectrum.vector(j);
        long double integral = 0.0L;
        for (double x : v) integral += x;
        integral *= scale * w;
        total += (1.0L / (1.0L + mu * delta)) * (v[y_index] * scale) * integral;
    }
    return {static_cast<double>(total), skipped};
}

void write_spectrum_csv(const Spectrum& spectrum, std::ostream& out, std::size_t count) {
    const std::size_t k = count == 0 ? spectrum.size() : std::min(count, spectrum.size());
    out << "index,eigenvalue,characteristic_number\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < k; ++i) {
        const double l = spectrum.eigenvalues[i];
        out << i + 1 << ',' << l << ',';
        if (l != 0.0)
            out << 1.0 / l;
        else
            out << "inf";
        out << '\n';
    }
}

}  // namespace potspec
