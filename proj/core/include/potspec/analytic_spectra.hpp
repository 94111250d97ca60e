#pragma once

#include <limits>
#include <string>
#include <vector>

namespace potspec {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Provenance { Analytic, Discretized };

/// How a Schatten value was summed.
enum class SummationMethod {
    LeadingZero,    ///< p = infinity: largest eigenvalue only
    RayleighSums,   ///< exact per-order sums over all zeros; truncated in order only
    ExplicitZeros,  ///< truncated double sum over computed zeros
    FullSpectrum,   ///< every eigenvalue of a finite matrix
};

struct Truncation {
    SummationMethod method = SummationMethod::FullSpectrum;
    long l_max = 0;  ///< highest Bessel order index included (-1 when not applicable)
    long m_max = 0;  ///< highest zero index per order; 0 means "all zeros"
    long terms = 0;  ///< number of distinct eigenvalues summed
};

/// A Schatten p-norm value. `tail_bound` bounds the difference between the
/// reported value and the exact norm of the summed spectrum (0 for finite
/// matrices).
struct SchattenReport {
    double p = 2.0;
    double value = 0.0;
    Truncation truncation;
    double tail_bound = 0.0;
    Provenance provenance = Provenance::Analytic;
};

std::string to_string(SummationMethod m);
std::string to_string(Provenance p);

namespace analytic {

enum class SpectrumKind { LogDisc, NewtonBall3, DirichletDisc };

std::string to_string(SpectrumKind k);

/// Bessel order attached to angular index l:
/// LogDisc / DirichletDisc -> l, NewtonBall3 -> l - 1/2.
double bessel_order(SpectrumKind kind, int l);

/// LogDisc: 3 for l = 0, 2 otherwise. NewtonBall3: 2l + 1.
/// DirichletDisc: 1 for l = 0, 2 otherwise.
int multiplicity(SpectrumKind kind, int l);

/// Exponent at or below which the Schatten series diverges.
double divergence_threshold(SpectrumKind kind);

struct SpectrumTerm {
    double eigen_magnitude;  ///< 1 / j_{nu_l, m}^2
    int multiplicity;
    int l;
    int m;
};

struct AnalyticSpectrum {
    SpectrumKind kind;
    std::vector<SpectrumTerm> terms;  ///< descending eigen_magnitude
    int l_max;
    int m_max;
    double tail_bound;  ///< bound on the omitted sum of eigen_magnitude^p
    double p;
};

/// Enumerate 1/j^2 terms for l <= l_max, m <= m_max, with the omitted mass
/// bounded for exponent p.
AnalyticSpectrum enumerate(SpectrumKind kind, int l_max, int m_max, double p);

/// Upper bound on sum over omitted (l, m) of multiplicity * j^{-2p}, using
/// the zero lower bounds of bessel::zero_lower_bound.
double series_tail_bound(SpectrumKind kind, double p, int l_max, int m_max);

/// Upper bound on sum_{l > l_max} multiplicity * sigma_p(nu_l) for integer
/// p >= 2 (used with exact Rayleigh sums per order).
double order_tail_bound(SpectrumKind kind, int p, long l_max);

/// General unit-radius Schatten norm of a closed-form spectrum.
SchattenReport schatten(SpectrumKind kind, double p, double tol);

/// Unit disc logarithmic potential. p must be an integer >= 2 or infinity;
/// radius must be 1 (the log kernel does not scale multiplicatively).
SchattenReport log_disc_schatten(double p, double radius = 1.0, double tol = 1e-10);

/// Ball Newton potential in R^3. p > 3/2 or infinity; eigenvalues scale as radius^2.
SchattenReport newton_ball3_schatten(double p, double radius = 1.0, double tol = 1e-8);

enum class DirichletReference { SchattenSquared2, RegularizedTrace, ConjectureBound };

std::string to_string(DirichletReference r);

/// Reference sums for the Dirichlet Laplacian on the unit disc.
double dirichlet_disc_reference(DirichletReference which);

/// sum_k (1/lambda_k - 1/(4k)) over the sorted Dirichlet-disc eigenvalues,
/// summed up to `cutoff` and completed with a two-term Weyl tail.
double dirichlet_regularized_trace(double cutoff);

/// Gamma(p - d/2) / Gamma(p) * measure^{2p/d} / (4 pi)^{d/2}.
double heat_trace_conjecture_bound(int dim, double p, double measure);

}  // namespace analytic
}  // namespace potspec
