#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "potspec/bessel.hpp"
#include "potspec/error.hpp"

using namespace potspec;
using potspec::bessel::Order;

TEST_SUITE("bessel") {

TEST_CASE("order validation") {
    CHECK_THROWS_AS(Order(-0.6), DomainError);
    CHECK_THROWS_AS(Order(std::nan("")), DomainError);
    CHECK_NOTHROW(Order(-0.5));
    CHECK(Order(3.0).is_integer());
    CHECK(Order(2.5).is_half_integer());
    CHECK_FALSE(Order(0.3).is_integer());
    CHECK_FALSE(Order(0.3).is_half_integer());
}

TEST_CASE("values agree with std::cyl_bessel_j across regimes") {
    for (double nu : {-0.5, 0.0, 0.3, 0.5, 1.0, 2.5, 7.0, 19.5, 40.0}) {
        for (double x : {0.01, 0.7, 3.0, 9.5, 12.0, 18.0, 26.0, 45.0, 90.0, 150.0}) {
            const double got = bessel::j(Order(nu), x);
            double want;
            if (nu < 0.0)
                want = std::sqrt(2.0 / (std::numbers::pi * x)) * std::cos(x);
            else
                want = std::cyl_bessel_j(nu, x);
            CAPTURE(nu);
            CAPTURE(x);
            CHECK(std::abs(got - want) <= 1e-12 + 1e-10 * std::abs(want));
        }
    }
}

TEST_CASE("values agree with the long-double power series") {
    for (double nu : {0.0, 0.25, 1.0, 3.5}) {
        for (double x : {0.5, 2.0, 5.0, 8.0}) {
            const double want = static_cast<double>(oracle::bessel_series(nu, x));
            CHECK(bessel::j(Order(nu), x) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("j_{0,1} matches power-series bisection to 1e-10") {
    const double want = oracle::bisect([](long double x) { return oracle::bessel_series(0.0L, x); }, 2.0, 3.0);
    const auto z = bessel::zero(Order(0.0), 1);
    CHECK(std::abs(z.value - want) < 1e-10);
    CHECK(z.value == doctest::Approx(2.404825557695773).epsilon(1e-15));
    CHECK(z.index == 1);
}

TEST_CASE("first zeros of several orders match bisection on std::cyl_bessel_j") {
    for (double nu : {0.0, 0.7, 1.0, 4.0, 12.5}) {
        const auto zs = bessel::zero_values(Order(nu), 8);
        for (int m = 0; m < 8; ++m) {
            // bracket around the computed zero, then refine independently
            const double lo = zs[m] - 0.3, hi = zs[m] + 0.3;
            const double want = oracle::bisect([&](long double x) { return std::cyl_bessel_j(nu, double(x)); }, lo, hi);
            CAPTURE(nu);
            CAPTURE(m);
            CHECK(std::abs(zs[m] - want) < 1e-11 * want);
        }
    }
}

TEST_CASE("half-integer orders have trigonometric zeros") {
    for (int m = 1; m <= 30; ++m) {
        CHECK(bessel::zero(Order(0.5), m).value == doctest::Approx(m * std::numbers::pi).epsilon(1e-13));
        CHECK(bessel::zero(Order(-0.5), m).value == doctest::Approx((m - 0.5) * std::numbers::pi).epsilon(1e-13));
    }
}

TEST_CASE("zeros are positive, increasing and interlace with the next order") {
    for (double nu : {-0.5, 0.0, 0.5, 2.0, 9.5}) {
        const auto a = bessel::zero_values(Order(nu), 40);
        const auto b = bessel::zero_values(Order(nu + 1.0), 40);
        for (int m = 0; m < 40; ++m) {
            CHECK(a[m] > 0.0);
            if (m + 1 < 40) {
                CHECK(a[m] < a[m + 1]);
                CHECK(a[m] < b[m]);
                CHECK(b[m] < a[m + 1]);
            }
        }
    }
}

TEST_CASE("zero spacing tends to pi") {
    for (double nu : {0.0, 3.0, 10.5}) {
        const double gap = bessel::zero(Order(nu), 301).value - bessel::zero(Order(nu), 300).value;
        CHECK(gap == doctest::Approx(std::numbers::pi).epsilon(1e-4));
    }
}

TEST_CASE("zero lower bound holds") {
    for (double nu : {-0.5, -0.2, 0.0, 0.5, 0.8, 1.5, 3.0, 10.0, 35.5}) {
        for (int m : {1, 2, 3, 7, 20, 60}) {
            CAPTURE(nu);
            CAPTURE(m);
            CHECK(bessel::zero_lower_bound(Order(nu), m) <= bessel::zero(Order(nu), m).value + 1e-12);
        }
    }
}

TEST_CASE("McMahon estimate is close for large m") {
    const double est = bessel::mcmahon_estimate(Order(1.0), 50);
    CHECK(std::abs(est - bessel::zero(Order(1.0), 50).value) < 1e-6);
}

TEST_CASE("invalid zero index") { CHECK_THROWS(bessel::zero(Order(0.0), 0)); }

TEST_CASE("Rayleigh sums: closed forms and explicit zero sums") {
    for (double nu : {-0.5, 0.0, 1.0, 2.5}) {
        const auto s = bessel::rayleigh_sums(Order(nu), 4);
        // s[p-1] = sum_m j_{nu,m}^{-2p}
        CHECK(s[0] == doctest::Approx(1.0 / (4.0 * (nu + 1.0))).epsilon(1e-14));
        CHECK(s[1] == doctest::Approx(1.0 / (16.0 * (nu + 1.0) * (nu + 1.0) * (nu + 2.0))).epsilon(1e-14));
        // direct summation; tail of j^-6 beyond m=2000 is below 1e-12
        const auto z = bessel::zero_values(Order(nu), 2000);
        double direct3 = 0.0;
        for (auto it = z.rbegin(); it != z.rend(); ++it) direct3 += std::pow(*it, -6.0);
        CHECK(s[2] == doctest::Approx(direct3).epsilon(1e-9));
    }
}

}  // TEST_SUITE
