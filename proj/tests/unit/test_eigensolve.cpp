#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "potspec/eigensolve.hpp"
#include "potspec/error.hpp"

using namespace potspec;

namespace {

std::vector<double> random_symmetric(std::size_t n, unsigned seed) {
    std::vector<double> a(n * n);
    unsigned s = seed;
    auto next = [&s] {
        s = s * 1664525u + 1013904223u;
        return static_cast<double>(s >> 8) / 16777216.0 - 0.5;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = next();
    return a;
}

double residual(std::span<const double> a, std::size_t n, const Spectrum& s, std::size_t k) {
    const auto v = s.vector(k);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += a[i * n + j] * v[j];
        r += (av - s.eigenvalues[k] * v[i]) * (av - s.eigenvalues[k] * v[i]);
    }
    return std::sqrt(r);
}

}  // namespace

TEST_SUITE("eigensolve") {

TEST_CASE("2x2 closed form") {
    const std::vector<double> a{2.0, 1.0, 1.0, 2.0};
    for (EigenBackend b : {EigenBackend::Jacobi, EigenBackend::Tridiagonal}) {
        const Spectrum s = decompose_dense(a, 2, true, b);
        CHECK(s.eigenvalues[0] == doctest::Approx(3.0));
        CHECK(s.eigenvalues[1] == doctest::Approx(1.0));
        CHECK(s.vector(0)[0] == doctest::Approx(std::sqrt(0.5)));
        CHECK(s.vector(0)[1] == doctest::Approx(std::sqrt(0.5)));
    }
    // ordering by modulus, ties resolved toward the positive value
    const Spectrum t = decompose_dense(std::vector<double>{0.0, 1.0, 1.0, 0.0}, 2, false);
    CHECK(t.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(t.eigenvalues[1] == doctest::Approx(-1.0));
    const Spectrum u = decompose_dense(std::vector<double>{-5.0, 0.0, 0.0, 2.0}, 2, false);
    CHECK(u.eigenvalues[0] == -5.0);
    CHECK(u.characteristic_numbers()[0] == doctest::Approx(-0.2));
}

TEST_CASE("backends agree") {
    const std::size_t n = 200;
    const auto a = random_symmetric(n, 7);
    const Spectrum j = decompose_dense(a, n, true, EigenBackend::Jacobi);
    const Spectrum l = decompose_dense(a, n, true, EigenBackend::Tridiagonal);
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(j.eigenvalues[k] == doctest::Approx(l.eigenvalues[k]).epsilon(1e-11).scale(1.0));
        CHECK(residual(a, n, j, k) < 1e-10);
        CHECK(residual(a, n, l, k) < 1e-10);
    }
}

TEST_CASE("operator spectra: orthonormality, residuals and identities") {
    const KernelMatrix a = assemble(make_mesh(Domain::disc(1.0), 0.1), OperatorKind::Log2D);
    const std::size_t n = a.size();
    REQUIRE(n > kJacobiMaxSize);
    const Spectrum s = decompose(a, true);
    REQUIRE(s.size() == n);
    CHECK(s.source.n == n);
    for (std::size_t p = 0; p < 10; ++p)
        for (std::size_t q = 0; q < 10; ++q) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += s.vector(p)[i] * s.vector(q)[i];
            CHECK(std::abs(dot - (p == q ? 1.0 : 0.0)) < 1e-10);
        }
    const double norm = hs_norm_direct(a);
    for (std::size_t k = 0; k < 10; ++k) CHECK(residual(a.data(), n, s, k) < 1e-9 * norm);

    double trace = 0.0, sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
    for (double l : s.eigenvalues) {
        sum += l;
        sum2 += l * l;
    }
    CHECK(std::abs(sum - trace) < 1e-10 * std::abs(trace) + 1e-12);
    CHECK(std::abs(std::sqrt(sum2) - norm) < 1e-10 * norm);
    CHECK(schatten_norm(s, 2.0).value == doctest::Approx(norm).epsilon(1e-12));

    for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(s.eigenvalues[k]) <= std::abs(s.eigenvalues[k - 1]));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(decompose_dense(std::vector<double>{1.0, 2.0, 2.0000001, 1.0}, 2, false), ContractError);
    CHECK_THROWS_AS(decompose_dense(std::vector<double>{1.0, 2.0, 3.0}, 2, false), DimensionMismatch);
}

TEST_CASE("Schatten norms of a finite spectrum") {
    Spectrum s;
    s.eigenvalues = {-4.0, 3.0};
    CHECK(schatten_norm(s, 2.0).value == doctest::Approx(5.0));
    CHECK(schatten_norm(s, 1.0).value == doctest::Approx(7.0));
    CHECK(schatten_norm(s, kInfinity).value == doctest::Approx(4.0));
    CHECK(schatten_norm(s, 2.0).provenance == Provenance::Discretized);
    CHECK(schatten_norm(s, 2.0).truncation.method == SummationMethod::FullSpectrum);
    CHECK_THROWS_AS(schatten_norm(s, 0.5), UnsupportedExponent);

    // tiny eigenvalues must not underflow at large p
    Spectrum t;
    t.eigenvalues = {1e-200, 1e-200};
    CHECK(schatten_norm(t, 8.0).value == doctest::Approx(1e-200 * std::pow(2.0, 1.0 / 8.0)));
}

TEST_CASE("Schatten norm decreases in p") {
    const Spectrum s = decompose(assemble(make_mesh(Domain::ball(1.0), 0.3), OperatorKind::Newton3D), false);
    double prev = std::numeric_limits<double>::infinity();
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0, kInfinity}) {
        const double v = schatten_norm(s, p).value;
        CHECK(v <= prev * (1.0 + 1e-14));
        prev = v;
    }
}

TEST_CASE("negative eigenvalue count") {
    Spectrum s;
    s.eigenvalues = {1.0, -0.5, -1e-12, 0.2};
    CHECK(count_negative(s) == 1);
    const Spectrum b = decompose(assemble(make_mesh(Domain::ball(1.0), 0.3), OperatorKind::Newton3D), false);
    CHECK(count_negative(b) == 0);
}

TEST_CASE("Abel summation of the constant function") {
    const Mesh m = make_mesh(Domain::ball(1.0), 0.25);
    const Spectrum s = decompose(assemble(m, OperatorKind::Newton3D), true);
    std::size_t centre = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (std::hypot(m.centroids[i][0], m.centroids[i][1], m.centroids[i][2]) <
            std::hypot(m.centroids[centre][0], m.centroids[centre][1], m.centroids[centre][2]))
            centre = i;
    const auto exact = kac_summation_check(s, m, 0.0, centre);
    CHECK(exact.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(exact.skipped_zero_eigenvalues == 0);
    CHECK(std::abs(kac_summation_check(s, m, 1e12, centre).value) < 1e-6);
    CHECK(kac_summation_check(s, m, 1e-3, centre).value == doctest::Approx(1.0).epsilon(0.05));

    CHECK_THROWS_AS(kac_summation_check(s, m, -1.0, centre), ContractError);
    CHECK_THROWS_AS(kac_summation_check(s, m, 0.0, m.size()), ContractError);
    Spectrum novec = s;
    novec.eigenvectors.clear();
    CHECK_THROWS_AS(kac_summation_check(novec, m, 0.0, 0), ContractError);
}

TEST_CASE("decomposition is deterministic") {
    const KernelMatrix a = assemble(make_mesh(Domain::disc(1.0), 0.12), OperatorKind::Log2D);
    const Spectrum x = decompose(a, true), y = decompose(a, true);
    CHECK(x.eigenvalues == y.eigenvalues);
    CHECK(x.eigenvectors == y.eigenvectors);
}

TEST_CASE("csv export") {
    Spectrum s;
    s.eigenvalues = {0.5, 0.0};
    std::ostringstream out;
    write_spectrum_csv(s, out);
    CHECK(out.str() == "index,eigenvalue,characteristic_number\n1,0.5,2\n2,0,inf\n");
    std::ostringstream one;
    write_spectrum_csv(s, one, 1);
    CHECK(one.str() == "index,eigenvalue,characteristic_number\n1,0.5,2\n");
}

}  // TEST_SUITE
