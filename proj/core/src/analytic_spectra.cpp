#include "potspec/analytic_spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include "potspec/bessel.hpp"
#include "potspec/error.hpp"

namespace potspec {

std::string to_string(SummationMethod m) {
    switch (m) {
        case SummationMethod::LeadingZero: return "leading-zero";
        case SummationMethod::RayleighSums: return "rayleigh-sums";
        case SummationMethod::ExplicitZeros: return "explicit-zeros";
        case SummationMethod::FullSpectrum: return "full-spectrum";
    }
    return "unknown";
}

std::string to_string(Provenance p) {
    return p == Provenance::Analytic ? "analytic" : "discretized";
}

namespace analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxRayleighPower = 10;
constexpr long kMaxRayleighOrders = 200'000'000;
constexpr int kDefaultTruncation = 60;
constexpr int kMaxTruncation = 240;

// Kahan-Neumaier accumulator
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// sigma_p(nu) without allocation, p <= kMaxRayleighPower.
double rayleigh_sum(double nu, int p) {
    std::array<double, kMaxRayleighPower + 1> a{};
    std::array<double, kMaxRayleighPower + 1> sigma{};
    a[0] = 1.0;
    for (int k = 1; k <= p; ++k) a[k] = -a[k - 1] / (4.0 * k * (nu + k));
    for (int n = 1; n <= p; ++n) {
        double s = n * a[n];
        for (int q = 1; q < n; ++q) s += sigma[q] * a[n - q];
        sigma[n] = -s;
    }
    return sigma[p];
}

bool is_integer(double p) { return std::isfinite(p) && p == std::floor(p); }

void require_convergent(SpectrumKind kind, double p) {
    if (!(p > divergence_threshold(kind))) {
        std::ostringstream msg;
        msg << to_string(kind) << " Schatten series diverges for p=" << p << " (requires p > "
            << divergence_threshold(kind) << ")";
        throw DivergentSeries(msg.str());
    }
}

// Increment of the p-th root caused by adding `tail` to `sum`.
double root_increment(double sum, double tail, double p) {
    return std::pow(sum + tail, 1.0 / p) - std::pow(sum, 1.0 / p);
}

struct PowerSum {
    double sum;
    long l_max;
    double tail;  // bound on the omitted part of `sum`
};

PowerSum rayleigh_power_sum(SpectrumKind kind, int p, double sum_tol, double root_tol) {
    CompensatedSum acc;
    for (long l = 0; l < kMaxRayleighOrders; ++l) {
        const double nu = bessel_order(kind, static_cast<int>(std::min<long>(l, 2'000'000'000L)));
        acc.add(multiplicity(kind, static_cast<int>(l)) * rayleigh_sum(nu, p));
        if (l % 16 != 0 && l > 64) continue;
        const double tail = order_tail_bound(kind, p, l);
        const double s = acc.value();
        const bool sum_ok = sum_tol <= 0.0 || tail <= sum_tol;
        const bool root_ok = root_tol <= 0.0 || root_increment(s, tail, p) <= root_tol;
        if (sum_ok && root_ok) return {s, l, tail};
    }
    throw TruncationError("Rayleigh-sum truncation budget exhausted for " + to_string(kind));
}

SchattenReport leading(SpectrumKind kind) {
    const double z = bessel::zero(bessel::Order(bessel_order(kind, 0)), 1).value;
    SchattenReport r;
    r.p = kInfinity;
    r.value = 1.0 / (z * z);
    r.truncation = {SummationMethod::LeadingZero, 0, 1, 1};
    r.tail_bound = 0.0;
    r.provenance = Provenance::Analytic;
    return r;
}

SchattenReport explicit_zeros(SpectrumKind kind, double p, double tol) {
    for (int n = kDefaultTruncation; n <= kMaxTruncation; n *= 2) {
        CompensatedSum acc;
        for (int l = 0; l <= n; ++l) {
            const auto zs = bessel::zero_values(bessel::Order(bessel_order(kind, l)), n);
            const int mult = multiplicity(kind, l);
            for (double z : zs) acc.add(mult * std::pow(z, -2.0 * p));
        }
        const double s = acc.value();
        const double tail = series_tail_bound(kind, p, n, n);
        const double inc = root_increment(s, tail, p);
        if (inc <= tol) {
            SchattenReport r;
            r.p = p;
            r.value = std::pow(s, 1.0 / p);
            r.truncation = {SummationMethod::ExplicitZeros, n, n, static_cast<long>(n + 1) * n};
            r.tail_bound = inc;
            r.provenance = Provenance::Analytic;
            return r;
        }
        if (n == kMaxTruncation) {
            std::ostringstream msg;
            msg << to_string(kind) << " p=" << p << ": tail bound " << inc
                << " still above tolerance " << tol << " at l_max=m_max=" << n;
            throw TruncationError(msg.str());
        }
    }
    throw TruncationError("unreachable");
}

}  // namespace

std::string to_string(SpectrumKind k) {
    switch (k) {
        case SpectrumKind::LogDisc: return "log-disc";
        case SpectrumKind::NewtonBall3: return "newton-ball3";
        case SpectrumKind::DirichletDisc: return "dirichlet-disc";
    }
    return "unknown";
}

std::string to_string(DirichletReference r) {
    switch (r) {
        case DirichletReference::SchattenSquared2: return "schatten2";
        case DirichletReference::RegularizedTrace: return "regularized";
        case DirichletReference::ConjectureBound: return "conjecture";
    }
    return "unknown";
}

double bessel_order(SpectrumKind kind, int l) {
    return kind == SpectrumKind::NewtonBall3 ? l - 0.5 : static_cast<double>(l);
}

int multiplicity(SpectrumKind kind, int l) {
    switch (kind) {
        case SpectrumKind::LogDisc: return l == 0 ? 3 : 2;
        case SpectrumKind::NewtonBall3: return 2 * l + 1;
        case SpectrumKind::DirichletDisc: return l == 0 ? 1 : 2;
    }
    return 0;
}

double divergence_threshold(SpectrumKind kind) {
    return kind == SpectrumKind::NewtonBall3 ? 1.5 : 1.0;
}

double series_tail_bound(SpectrumKind kind, double p, int l_max, int m_max) {
    if (l_max < 0 || m_max < 1) throw ContractError("series_tail_bound: truncation indices must be >= 1");
    require_convergent(kind, p);
    const double q = 2.0 * p;

    // omitted zeros m > m_max for every included order
    double part_a = 0.0;
    for (int l = 0; l <= l_max; ++l) {
        const bessel::Order order(bessel_order(kind, l));
        const double b = bessel::zero_lower_bound(order, m_max + 1);
        // sum_{m > M} b_m^{-q} <= integral from M to inf of b(t)^{-q}, b(t) = b_{M+1} + (t - M - 1) pi
        const double bm = b - kPi;
        const double inner = bm > 0.0 ? std::pow(bm, 1.0 - q) / (kPi * (q - 1.0))
                                       : std::pow(b, -q) + std::pow(b, 1.0 - q) / (kPi * (q - 1.0));
        part_a += multiplicity(kind, l) * inner;
    }

    // every zero of the omitted orders l > l_max, using j_{nu,m} >= nu + (m-1) pi
    const double v = bessel_order(kind, l_max + 1);
    double part_b;
    if (kind == SpectrumKind::NewtonBall3) {
        const double h = std::pow(v, 1.0 - q) + std::pow(v, 2.0 - q) / (kPi * (q - 1.0));
        const double integral =
            std::pow(v, 2.0 - q) / (q - 2.0) + std::pow(v, 3.0 - q) / (kPi * (q - 1.0) * (q - 3.0));
        part_b = 2.0 * (1.0 + 1.0 / v) * (h + integral);
    } else {
        const double g = std::pow(v, -q) + std::pow(v, 1.0 - q) / (kPi * (q - 1.0));
        const double integral =
            std::pow(v, 1.0 - q) / (q - 1.0) + std::pow(v, 2.0 - q) / (kPi * (q - 1.0) * (q - 2.0));
        part_b = 2.0 * (g + integral);
    }
    return part_a + part_b;
}

double order_tail_bound(SpectrumKind kind, int p, long l_max) {
    if (p < 2) throw ContractError("order_tail_bound requires integer p >= 2");
    // sigma_p <= sigma_2 * sigma_1^{p-2}, sigma_1 = 1/(4(nu+1)), sigma_2 = 1/(16 (nu+1)^2 (nu+2))
    const double v = bessel_order(kind, 0) + static_cast<double>(l_max + 1);
    const double decay = std::pow(4.0 * (v + 1.0), 2.0 - p);
    if (kind == SpectrumKind::NewtonBall3) return decay / (8.0 * (v + 1.0));
    return decay / (8.0 * (v + 1.0) * (v + 1.0));
}

AnalyticSpectrum enumerate(SpectrumKind kind, int l_max, int m_max, double p) {
    if (l_max < 0 || m_max < 1) throw ContractError("enumerate: need l_max >= 0 and m_max >= 1");
    AnalyticSpectrum s{kind, {}, l_max, m_max, 0.0, p};
    for (int l = 0; l <= l_max; ++l) {
        const auto zs = bessel::zero_values(bessel::Order(bessel_order(kind, l)), m_max);
        for (int m = 1; m <= m_max; ++m)
            s.terms.push_back({1.0 / (zs[m - 1] * zs[m - 1]), multiplicity(kind, l), l, m});
    }
    std::stable_sort(s.terms.begin(), s.terms.end(), [](const SpectrumTerm& a, const SpectrumTerm& b) {
        return a.eigen_magnitude > b.eigen_magnitude;
    });
    s.tail_bound = std::isfinite(p) ? series_tail_bound(kind, p, l_max, m_max) : 0.0;
    return s;
}

SchattenReport schatten(SpectrumKind kind, double p, double tol) {
    if (!(tol > 0.0)) throw ContractError("tolerance must be positive");
    if (p == kInfinity) return leading(kind);
    require_convergent(kind, p);
    if (is_integer(p) && p >= 2 && p <= kMaxRayleighPower) {
        const int ip = static_cast<int>(p);
        const auto ps = rayleigh_power_sum(kind, ip, 0.0, tol);
        SchattenReport r;
        r.p = p;
        r.value = std::pow(ps.sum, 1.0 / p);
        r.truncation = {SummationMethod::RayleighSums, ps.l_max, 0, ps.l_max + 1};
        r.tail_bound = root_increment(ps.sum, ps.tail, p);
        r.provenance = Provenance::Analytic;
        return r;
    }
    return explicit_zeros(kind, p, tol);
}

SchattenReport log_disc_schatten(double p, double radius, double tol) {
    if (!(p == kInfinity || (is_integer(p) && p >= 2))) {
        std::ostringstream msg;
        msg << "log-disc Schatten norm is supported for integer 2 <= p <= inf only, got p=" << p;
        throw UnsupportedExponent(msg.str());
    }
    if (radius != 1.0)
        throw ContractError("log-disc closed form is only available for the unit disc; "
                            "use the discretization for other radii");
    return schatten(SpectrumKind::LogDisc, p, tol);
}

SchattenReport newton_ball3_schatten(double p, double radius, double tol) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ContractError("ball radius must be positive");
    if (p != kInfinity) require_convergent(SpectrumKind::NewtonBall3, p);
    const double scale = radius * radius;
    auto r = schatten(SpectrumKind::NewtonBall3, p, tol / scale);
    r.value *= scale;
    r.tail_bound *= scale;
    return r;
}

double dirichlet_regularized_trace(double cutoff) {
    if (!(cutoff > 100.0)) throw ContractError("regularized trace cutoff must exceed 100");
    struct Eig {
        double lambda;
        int k;
        int m;
    };
    std::vector<Eig> eig;
    const double root = std::sqrt(cutoff);
    for (int k = 0;; ++k) {
        const bessel::Order order(k);
        if (bessel::zero(order, 1).value > root) break;
        for (int m = 1;; ++m) {
            const double z = bessel::zero(order, m).value;
            if (z > root) break;
            const int copies = k == 0 ? 1 : 2;
            for (int c = 0; c < copies; ++c) eig.push_back({z * z, k, m});
        }
    }
    std::stable_sort(eig.begin(), eig.end(), [](const Eig& a, const Eig& b) {
        return std::tie(a.lambda, a.k, a.m) < std::tie(b.lambda, b.k, b.m);
    });
    CompensatedSum s;
    double harmonic = 0.0;
    for (std::size_t i = 0; i < eig.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        s.add(1.0 / eig[i].lambda - 0.25 / k);
        harmonic += 1.0 / k;
    }
    // Tail from the two-term Weyl law N(l) = l/4 - sqrt(l)/2 + 1/6 of the unit disc.
    const double count = static_cast<double>(eig.size());
    const double tail = 0.25 - count / cutoff +
                        0.25 * (harmonic - std::numbers::egamma - std::log(cutoff / 4.0)) -
                        1.0 / root + 1.0 / (6.0 * cutoff);
    return s.value() + tail;
}

double heat_trace_conjecture_bound(int dim, double p, double measure) {
    if (dim < 1) throw ContractError("dimension must be positive");
    if (!(p > 0.5 * dim)) throw DivergentSeries("conjectured bound requires p > d/2");
    return std::tgamma(p - 0.5 * dim) / std::tgamma(p) * std::pow(measure, 2.0 * p / dim) /
           std::pow(4.0 * kPi, 0.5 * dim);
}

double dirichlet_disc_reference(DirichletReference which) {
    switch (which) {
        case DirichletReference::SchattenSquared2:
            return rayleigh_power_sum(SpectrumKind::DirichletDisc, 2, 1e-12, 0.0).sum;
        case DirichletReference::RegularizedTrace:
            return dirichlet_regularized_trace(2.0e4);
        case DirichletReference::ConjectureBound:
            return heat_trace_conjecture_bound(2, 2.0, kPi);
    }
    throw ContractError("unknown Dirichlet reference");
}

}  // namespace analytic
}  // namespace potspec
