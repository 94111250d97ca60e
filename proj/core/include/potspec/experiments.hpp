#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "potspec/discretization.hpp"
#include "potspec/domains.hpp"
#include "potspec/eigensolve.hpp"

namespace potspec {

enum class Verdict { InequalityHolds, WithinTolerance, Violated };
std::string to_string(Verdict v);

/// Results for one domain on one mesh level.
struct LevelResult {
    double h;             ///< cell size after measure matching
    double nominal_h;     ///< requested cell size
    std::size_t n;
    std::vector<double> norms;  ///< one per p, same order as the p list
    std::size_t negative_eigenvalues;
    double trace_residual;      ///< relative |sum lambda - trace|
    double frobenius_residual;  ///< relative |sum lambda^2 - sum a_ij^2|
};

/// Norm estimate at one p: per-level values, the order-1 two-level
/// extrapolation, and its error bar |N_fine - N_coarse| h_fine / (h_coarse - h_fine).
struct NormEstimate {
    double p;
    double extrapolated;
    double error_bar;
};

struct DomainRun {
    std::string label;
    double measure;
    OperatorKind kind;
    std::vector<double> p_values;
    std::vector<LevelResult> levels;  ///< coarse to fine
    std::vector<NormEstimate> estimates;
};

/// Evaluates Schatten norms of `domain` at every p and every mesh level.
/// Meshes are measure-matched (see match_measure). Levels are sorted coarse to fine.
DomainRun evaluate_domain(const Domain& domain, OperatorKind kind, std::span<const double> p_values,
                          std::span<const double> h_levels);

struct ComparisonResult {
    DomainRun reference;
    DomainRun challenger;
    std::vector<Verdict> verdicts;  ///< one per p
    double measure_relative_difference;

    bool any_violated() const;
};

/// Verdict from extrapolated norms and their combined error bar: holds when
/// the challenger sits below the reference by more than the bar, violated when
/// it exceeds it by more than the bar.
Verdict judge(const NormEstimate& reference, const NormEstimate& challenger);

/// Compares two already-evaluated runs. Throws ContractError if the measures
/// differ by more than 1e-10 relative or the p lists differ.
ComparisonResult compare(const DomainRun& reference, const DomainRun& challenger);

ComparisonResult run_comparison(const Domain& reference, const Domain& challenger, OperatorKind kind,
                                std::span<const double> p_values, std::span<const double> h_levels);

/// Fixed challenger zoos, normalized to the measure of the unit disc / ball.
/// 2D: square, 2:1 rectangle, regular pentagon, L-shaped hexagon, three random convex polygons.
/// 3D: cube, 2:1:1 box, ellipsoid.
std::vector<Domain> challenger_zoo_2d(std::uint64_t seed);
std::vector<Domain> challenger_zoo_3d();

/// Equilateral, right isosceles and `random_count` random triangles, all of the given area.
std::vector<Domain> triangle_family(double area, std::uint64_t seed, int random_count = 3);

/// Isosceles triangles of the given area with apex angle shrinking along the family.
std::vector<Domain> thin_triangle_family(double area, int count);

struct TriangleSweep {
    std::vector<DomainRun> runs;  ///< runs[0] is the equilateral triangle
    std::vector<ComparisonResult> comparisons;
    bool equilateral_maximal;  ///< no comparison violated
};

/// The first member of `family` must be the equilateral triangle; the others
/// are compared against it.
TriangleSweep triangle_sweep(const std::vector<Domain>& family, std::span<const double> p_values,
                             std::span<const double> h_levels);

struct ConvergenceSeries {
    int k;  ///< 1-based eigenvalue index
    std::vector<double> values;
    double order;         ///< log-log slope of the error (or of successive differences)
    double extrapolated;  ///< least-squares fit of a + b h
    double error_bar;     ///< |extrapolated - finest value|
    bool monotone;
    std::optional<double> reference;
};

struct ConvergenceTable {
    std::string domain;
    OperatorKind kind;
    std::vector<double> h;  ///< nominal, coarse to fine
    std::vector<std::size_t> n;
    std::vector<ConvergenceSeries> series;
};

/// Tracks the k_top largest eigenvalues across >= 3 geometric mesh levels.
/// When `reference` holds analytic values (one per k, may be shorter than
/// k_top) the order is the slope of log|lambda_h - reference| against log h;
/// otherwise of the successive differences.
ConvergenceTable convergence_study(const Domain& domain, OperatorKind kind, std::span<const double> h_sequence,
                                   int k_top, std::span<const double> reference = {});

/// Disc-versus-challengers probe at non-integer 1 < p < 2. No theorem covers
/// this range; results are labeled exploratory and carry the grid sensitivity.
struct ConjectureReport {
    static constexpr std::string_view label = "EXPLORATORY";
    double p;
    std::vector<ComparisonResult> comparisons;
    bool disc_dominates;
    double max_grid_sensitivity;  ///< max relative change between the two levels
    std::string warning;
};

ConjectureReport conjecture_probe(double p, const std::vector<Domain>& challengers,
                                  std::span<const double> h_levels);

enum class Suite { Rfk, Polya, LuttingerLog, LuttingerTri, LuttingerNewton };
std::string to_string(Suite s);
/// Throws SpecError for unknown names.
Suite parse_suite(std::string_view name);
std::vector<std::string> suite_names();

struct SuiteOptions {
    std::vector<double> p_values;  ///< empty: suite default
    std::vector<double> h_levels;  ///< empty: pinned defaults, scaled with the measure
    std::uint64_t seed;
    /// Common measure of every domain; 0 means that of the unit disc / ball.
    double measure = 0.0;
};

SuiteOptions default_suite_options(Suite s);

struct SuiteReport {
    Suite suite;
    OperatorKind kind;
    std::vector<double> p_values;
    std::vector<double> h_levels;
    double measure;
    std::vector<ComparisonResult> comparisons;
    std::size_t max_negative_eigenvalues;
    double max_frobenius_residual;

    bool any_violated() const;
};

SuiteReport run_suite(Suite s, const SuiteOptions& options);

struct ReportMeta {
    std::string tool_version;
    std::string config_hash;
};

/// 64-bit FNV-1a of the canonical config text, as 16 hex digits.
std::string config_hash(std::string_view canonical_config);

std::string tool_version();

/// One row per (experiment, domain, p, h); the extrapolated row uses h = 0.
void write_suite_csv(const SuiteReport& report, const ReportMeta& meta, std::ostream& out);
void write_suite_json(const SuiteReport& report, const ReportMeta& meta, std::ostream& out);

}  // namespace potspec
