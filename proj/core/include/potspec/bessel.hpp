#pragma once

#include <vector>

namespace potspec::bessel {

/// Real order nu >= -1/2 of a Bessel function of the first kind.
class Order {
public:
    /// Throws DomainError when nu < -1/2 or nu is not finite.
    explicit Order(double nu);

    double value() const noexcept { return nu_; }
    bool is_integer() const noexcept;
    /// True when nu + 1/2 is a nonnegative integer.
    bool is_half_integer() const noexcept;

    friend bool operator==(Order a, Order b) noexcept { return a.nu_ == b.nu_; }

private:
    double nu_;
};

/// The m-th positive zero of J_order.
struct Zero {
    Order order;
    int index;
    double value;
};

/// J_nu(x) for x >= 0.
///
/// Regimes: ascending series while x^2/4 <= nu + 1, Hankel asymptotics for
/// x >= max(25, nu^2), otherwise Miller backward recurrence normalized by a
/// Neumann-type sum (spherical recurrence normalized by sin/cos for
/// half-integer orders). Absolute error stays below 1e-12 for x <= 200 and
/// nu <= 60.
double j(Order order, double x);

/// The m-th positive zero (m >= 1), bracketed by a sign change and refined to
/// machine precision. Results are memoized per order.
Zero zero(Order order, int m);

/// First `count` positive zeros, strictly increasing.
std::vector<Zero> zeros_upto(Order order, int count);

/// Same as zeros_upto but values only.
std::vector<double> zero_values(Order order, int count);

/// McMahon's large-m estimate of j_{nu,m}.
double mcmahon_estimate(Order order, int m);

/// Rayleigh sums sigma_p(nu) = sum_m j_{nu,m}^{-2p} for p = 1..pmax,
/// obtained from the power series of J_nu through Newton's identities.
/// Entry [p-1] holds sigma_p.
std::vector<double> rayleigh_sums(Order order, int pmax);

/// Rigorous lower bound on j_{nu,m}:
///  (m + nu/2 - 1/4) pi          for -1/2 <= nu <= 1/2,
///  sqrt(nu (nu + 2)) + (m-1) pi for nu > 1/2.
double zero_lower_bound(Order order, int m);

}  // namespace potspec::bessel
