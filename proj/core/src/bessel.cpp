#include "potspec/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

#include "potspec/error.hpp"

namespace potspec::bessel {

namespace {

constexpr double kPi = std::numbers::pi;

double series(double nu, double x) {
    const double q = 0.25 * x * x;
    double term = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= -q / (k * (k + nu));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Hankel expansion; terminates exactly for half-integer orders.
double hankel(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0, t = 1.0, last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        t *= (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(t) > last && k > 2) break;  // asymptotic series started to diverge
        last = std::abs(t);
        switch (k % 4) {
            case 1: q += t; break;
            case 2: p -= t; break;
            case 3: q -= t; break;
            default: p += t; break;
        }
        if (std::abs(t) < 1e-17) break;
    }
    const double w = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(w) - q * std::sin(w));
}

int miller_start(double nu, double x) {
    const double m = std::max(nu, x);
    return static_cast<int>(std::ceil(m + 30.0 + 6.0 * std::sqrt(m))) + 2;
}

// J_{l+1/2}(x) = sqrt(2x/pi) j_l(x); spherical j_l by backward recurrence
// down to j_{-1}, normalized against j_0 = sin x / x and j_{-1} = cos x / x.
double spherical_miller(int l, double x) {
    const double pref = std::sqrt(2.0 / (kPi * x));
    if (l == -1) return pref * std::cos(x);
    if (l == 0) return pref * std::sin(x);

    const int top = std::max(miller_start(l, x), l + 2);
    double next = 0.0, cur = 1.0, target = 0.0;
    for (int k = top; k >= 0; --k) {
        if (k == l) target = cur;
        const double prev = (2.0 * k + 1.0) / x * cur - next;
        next = cur;
        cur = prev;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            target *= 1e-250;
        }
    }
    // next = j_0 (unscaled), cur = j_{-1} (unscaled)
    const double a = next, b = cur;
    const double s = (a * std::sin(x) + b * std::cos(x)) / (x * (a * a + b * b));
    return std::sqrt(2.0 * x / kPi) * target * s;
}

// Backward recurrence over orders mu + i, normalized by
// (x/2)^mu = sum_k (mu + 2k) Gamma(mu + k) / k! J_{mu+2k}(x).
double neumann_miller(double nu, double x) {
    const double mu = nu >= 0.0 ? nu - std::floor(nu) : nu;
    const int n = static_cast<int>(std::lround(nu - mu));
    int top = std::max(miller_start(nu, x), n + 2);
    if (top % 2 != 0) ++top;

    std::vector<double> g(top / 2 + 1);
    g[0] = std::tgamma(mu + 1.0);
    double r = g[0];  // Gamma(mu + k) / k!
    for (int k = 1; k <= top / 2; ++k) {
        if (k > 1) r *= (mu + k - 1.0) / k;
        g[k] = (mu + 2.0 * k) * r;
    }

    double next = 0.0, cur = 1.0, target = 0.0, norm = 0.0;
    for (int i = top; i >= 0; --i) {
        if (i == n) target = cur;
        if (i % 2 == 0) norm += g[i / 2] * cur;
        if (i == 0) break;
        const double prev = 2.0 * (mu + i) / x * cur - next;
        next = cur;
        cur = prev;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            target *= 1e-250;
            norm *= 1e-250;
        }
    }
    return target * std::pow(0.5 * x, mu) / norm;
}

double brent_root(double nu, double a, double b, double fa, double fb) {
    // Standard Brent iteration on a verified sign-change bracket.
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b);
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
        fb = j(Order(nu), b);
    }
    std::ostringstream msg;
    msg << "bessel zero refinement for nu=" << nu << " did not converge; bracket [" << b << ", "
        << c << "], f=[" << fb << ", " << fc << "]";
    throw NumericError(msg.str());
}

struct ZeroCache {
    std::shared_mutex mutex;
    std::map<double, std::vector<double>> zeros;
};

ZeroCache& cache() {
    static ZeroCache c;
    return c;
}

void extend_zeros(Order order, std::vector<double>& zs, int count) {
    const double nu = order.value();
    constexpr double step = 0.5;
    double a = zs.empty() ? std::max(nu, 0.5) : zs.back() + 0.25;
    double fa = j(order, a);
    while (static_cast<int>(zs.size()) < count) {
        const int m = static_cast<int>(zs.size()) + 1;
        double b = a + step;
        double fb = j(order, b);
        int guard = 0;
        while ((fa > 0) == (fb > 0) && fb != 0.0) {
            a = b;
            fa = fb;
            b = a + step;
            fb = j(order, b);
            if (++guard > 100000) {
                std::ostringstream msg;
                msg << "no sign change found for zero " << m << " of J_" << nu << " up to x=" << b;
                throw NumericError(msg.str());
            }
        }
        double z;
        if (fb == 0.0) {
            z = b;
        } else {
            // Use the McMahon estimate to tighten the bracket when it falls inside.
            const double guess = mcmahon_estimate(order, m);
            if (guess > a && guess < b) {
                const double fg = j(order, guess);
                if (fg == 0.0) {
                    zs.push_back(guess);
                    a = guess + 0.25;
                    fa = j(order, a);
                    continue;
                }
                if ((fg > 0) == (fa > 0)) {
                    a = guess;
                    fa = fg;
                } else {
                    b = guess;
                    fb = fg;
                }
            }
            z = brent_root(nu, a, b, fa, fb);
        }
        zs.push_back(z);
        a = z + 0.25;
        fa = j(order, a);
    }
}

}  // namespace

Order::Order(double nu) : nu_(nu) {
    if (!std::isfinite(nu) || nu < -0.5) {
        std::ostringstream msg;
        msg << "Bessel order must be >= -1/2, got " << nu;
        throw DomainError(msg.str());
    }
}

bool Order::is_integer() const noexcept { return nu_ == std::floor(nu_); }

bool Order::is_half_integer() const noexcept {
    const double s = nu_ + 0.5;
    return s == std::floor(s);
}

double j(Order order, double x) {
    const double nu = order.value();
    if (!(x >= 0.0)) {
        std::ostringstream msg;
        msg << "Bessel argument must be >= 0, got " << x;
        throw DomainError(msg.str());
    }
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (0.25 * x * x <= nu + 1.0) return series(nu, x);
    if (x >= std::max(25.0, nu * nu)) return hankel(nu, x);
    if (order.is_half_integer()) return spherical_miller(static_cast<int>(std::lround(nu - 0.5)), x);
    return neumann_miller(nu, x);
}

double mcmahon_estimate(Order order, int m) {
    const double mu = 4.0 * order.value() * order.value();
    const double beta = (m + 0.5 * order.value() - 0.25) * kPi;
    const double e = 8.0 * beta;
    return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

Zero zero(Order order, int m) {
    if (m < 1) throw DomainError("zero index must be >= 1");
    auto& c = cache();
    {
        std::shared_lock lock(c.mutex);
        auto it = c.zeros.find(order.value());
        if (it != c.zeros.end() && static_cast<int>(it->second.size()) >= m)
            return {order, m, it->second[m - 1]};
    }
    std::unique_lock lock(c.mutex);
    auto& zs = c.zeros[order.value()];
    if (static_cast<int>(zs.size()) < m) extend_zeros(order, zs, m);
    return {order, m, zs[m - 1]};
}

std::vector<double> zero_values(Order order, int count) {
    if (count < 1) throw DomainError("zero count must be >= 1");
    zero(order, count);
    auto& c = cache();
    std::shared_lock lock(c.mutex);
    const auto& zs = c.zeros.at(order.value());
    return {zs.begin(), zs.begin() + count};
}

std::vector<Zero> zeros_upto(Order order, int count) {
    const auto values = zero_values(order, count);
    std::vector<Zero> out;
    out.reserve(values.size());
    for (int m = 1; m <= count; ++m) out.push_back({order, m, values[m - 1]});
    return out;
}

std::vector<double> rayleigh_sums(Order order, int pmax) {
    if (pmax < 1) throw DomainError("rayleigh_sums needs pmax >= 1");
    const double nu = order.value();
    // coefficients of Gamma(nu+1) (2/x)^nu J_nu(x) in powers of t = x^2
    std::vector<double> a(pmax + 1);
    a[0] = 1.0;
    for (int k = 1; k <= pmax; ++k) a[k] = -a[k - 1] / (4.0 * k * (nu + k));
    std::vector<double> sigma(pmax);
    for (int n = 1; n <= pmax; ++n) {
        double s = n * a[n];
        for (int p = 1; p < n; ++p) s += sigma[p - 1] * a[n - p];
        sigma[n - 1] = -s;
    }
    return sigma;
}

double zero_lower_bound(Order order, int m) {
    const double nu = order.value();
    if (nu <= 0.5) return (m + 0.5 * nu - 0.25) * kPi;
    return std::sqrt(nu * (nu + 2.0)) + (m - 1) * kPi;
}

}  // namespace potspec::bessel
