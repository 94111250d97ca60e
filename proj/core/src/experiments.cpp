#include "potspec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "potspec/analytic_spectra.hpp"
#include "potspec/defaults.hpp"
#include "potspec/error.hpp"
#include "potspec/parallel.hpp"

namespace potspec {

namespace {

constexpr double kPi = std::numbers::pi;

// Doubles from the raw 64-bit stream so fixtures do not depend on the
// standard library's distribution implementations.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : gen_(seed) {}
    double operator()() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

private:
    std::mt19937_64 gen_;
};

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string p_label(double p) { return std::isinf(p) ? "inf" : fmt(p); }

double relative(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::vector<double> coarse_to_fine(std::span<const double> h_levels) {
    if (h_levels.empty()) throw ContractError("at least one mesh level is required");
    std::vector<double> h(h_levels.begin(), h_levels.end());
    std::sort(h.begin(), h.end(), std::greater<>());
    if (std::adjacent_find(h.begin(), h.end()) != h.end()) throw ContractError("mesh levels must be distinct");
    return h;
}

LevelResult evaluate_level(const Domain& domain, OperatorKind kind, std::span<const double> p_values, double h) {
    const Mesh mesh = match_measure(make_mesh(domain, h));
    const KernelMatrix a = assemble(mesh, kind);
    const Spectrum s = decompose(a, false);

    LevelResult out;
    out.h = mesh.h;
    out.nominal_h = h;
    out.n = mesh.size();
    for (double p : p_values) out.norms.push_back(schatten_norm(s, p).value);
    out.negative_eigenvalues = count_negative(s, defaults::kNegativeTolerance);

    long double trace = 0.0L, sum = 0.0L, sum_sq = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) trace += a(i, i);
    for (double l : s.eigenvalues) {
        sum += l;
        sum_sq += static_cast<long double>(l) * l;
    }
    const double frob = hs_norm_direct(a);
    out.trace_residual = relative(static_cast<double>(sum), static_cast<double>(trace));
    out.frobenius_residual = relative(static_cast<double>(sum_sq), frob * frob);
    return out;
}

std::vector<NormEstimate> extrapolate(const std::vector<LevelResult>& levels, std::span<const double> p_values) {
    std::vector<NormEstimate> est;
    for (std::size_t k = 0; k < p_values.size(); ++k) {
        NormEstimate e{p_values[k], levels.back().norms[k], 0.0};
        if (levels.size() >= 2) {
            const LevelResult& c = levels[levels.size() - 2];
            const LevelResult& f = levels.back();
            const double w = f.h / (c.h - f.h);
            const double diff = f.norms[k] - c.norms[k];
            e.extrapolated = f.norms[k] + diff * w;
            e.error_bar = std::abs(diff) * w;
        }
        est.push_back(e);
    }
    return est;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Domain unit_reference(OperatorKind kind) {
    return kind == OperatorKind::Log2D ? Domain::disc(1.0).with_label("disc") : Domain::ball(1.0).with_label("ball");
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::InequalityHolds: return "inequality_holds";
        case Verdict::WithinTolerance: return "within_tolerance";
        case Verdict::Violated: return "violated";
    }
    return "?";
}

DomainRun evaluate_domain(const Domain& domain, OperatorKind kind, std::span<const double> p_values,
                          std::span<const double> h_levels) {
    if (domain.dimension() != dimension_of(kind))
        throw DimensionMismatch(to_string(kind) + " needs a " + std::to_string(dimension_of(kind)) +
                                "D domain, got " + domain.shape_name());
    const std::vector<double> h = coarse_to_fine(h_levels);
    DomainRun run{domain.label(), domain.measure(), kind, {p_values.begin(), p_values.end()}, {}, {}};
    run.levels.resize(h.size());
    parallel_for(h.size(), [&](std::size_t i) { run.levels[i] = evaluate_level(domain, kind, p_values, h[i]); });
    run.estimates = extrapolate(run.levels, p_values);
    return run;
}

bool ComparisonResult::any_violated() const {
    return std::find(verdicts.begin(), verdicts.end(), Verdict::Violated) != verdicts.end();
}

Verdict judge(const NormEstimate& reference, const NormEstimate& challenger) {
    const double bar = reference.error_bar + challenger.error_bar;
    if (challenger.extrapolated < reference.extrapolated - bar) return Verdict::InequalityHolds;
    if (challenger.extrapolated > reference.extrapolated + bar) return Verdict::Violated;
    return Verdict::WithinTolerance;
}

ComparisonResult compare(const DomainRun& reference, const DomainRun& challenger) {
    const double diff = relative(reference.measure, challenger.measure);
    if (diff > defaults::kMeasureTolerance) {
        std::ostringstream msg;
        msg << "measures differ: " << reference.label << " has " << fmt(reference.measure) << ", "
            << challenger.label << " has " << fmt(challenger.measure) << "; normalize first";
        throw ContractError(msg.str());
    }
    if (reference.p_values != challenger.p_values) throw ContractError("runs were evaluated at different p");
    if (reference.kind != challenger.kind) throw ContractError("runs use different operators");
    ComparisonResult out{reference, challenger, {}, diff};
    for (std::size_t k = 0; k < reference.estimates.size(); ++k)
        out.verdicts.push_back(judge(reference.estimates[k], challenger.estimates[k]));
    return out;
}

ComparisonResult run_comparison(const Domain& reference, const Domain& challenger, OperatorKind kind,
                                std::span<const double> p_values, std::span<const double> h_levels) {
    if (relative(reference.measure(), challenger.measure()) > defaults::kMeasureTolerance)
        throw ContractError("measures differ: normalize " + challenger.label() + " to " + fmt(reference.measure()));
    return compare(evaluate_domain(reference, kind, p_values, h_levels),
                   evaluate_domain(challenger, kind, p_values, h_levels));
}

std::vector<Domain> challenger_zoo_2d(std::uint64_t seed) {
    const double area = kPi;
    std::vector<Domain> zoo;
    zoo.push_back(normalize_measure(Domain::box({1.0, 1.0}), area).with_label("square"));
    zoo.push_back(normalize_measure(Domain::box({2.0, 1.0}), area).with_label("rectangle-2x1"));
    zoo.push_back(regular_polygon(5, area).with_label("pentagon"));
    zoo.push_back(normalize_measure(Domain::polygon({{0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {1, 1, 0}, {1, 2, 0}, {0, 2, 0}}),
                                    area)
                      .with_label("l-hexagon"));
    Uniform u(seed);
    for (int k = 0; k < 3; ++k) {
        // inscribed in a circle: convex by construction; gaps keep vertices apart
        std::vector<double> angles;
        for (;;) {
            angles.clear();
            for (int i = 0; i < 6; ++i) angles.push_back(u(0.0, 2.0 * kPi));
            std::sort(angles.begin(), angles.end());
            double min_gap = angles.front() + 2.0 * kPi - angles.back();
            for (std::size_t i = 1; i < angles.size(); ++i) min_gap = std::min(min_gap, angles[i] - angles[i - 1]);
            if (min_gap > 0.3) break;
        }
        std::vector<Point> v;
        for (double a : angles) v.push_back({std::cos(a), std::sin(a), 0.0});
        zoo.push_back(normalize_measure(Domain::polygon(v), area).with_label("convex-" + std::to_string(k + 1)));
    }
    return zoo;
}

std::vector<Domain> challenger_zoo_3d() {
    const double volume = 4.0 * kPi / 3.0;
    return {
        normalize_measure(Domain::box({1.0, 1.0, 1.0}), volume).with_label("cube"),
        normalize_measure(Domain::box({2.0, 1.0, 1.0}), volume).with_label("box-2x1x1"),
        normalize_measure(Domain::ellipsoid({1.25, 1.0, 0.8}), volume).with_label("ellipsoid"),
    };
}

std::vector<Domain> triangle_family(double area, std::uint64_t seed, int random_count) {
    std::vector<Domain> family;
    family.push_back(equilateral_triangle(area));
    family.push_back(normalize_measure(Domain::triangle({0, 0, 0}, {1, 0, 0}, {0, 1, 0}), area)
                         .with_label("right-isosceles"));
    Uniform u(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int k = 0; k < random_count; ++k) {
        for (;;) {
            const Point a{u(), u(), 0.0}, b{u(), u(), 0.0}, c{u(), u(), 0.0};
            // skip slivers: every angle at least 20 degrees
            auto angle = [](const Point& p, const Point& q, const Point& r) {
                const double ux = q[0] - p[0], uy = q[1] - p[1], vx = r[0] - p[0], vy = r[1] - p[1];
                return std::abs(std::atan2(ux * vy - uy * vx, ux * vx + uy * vy));
            };
            const double lo = 20.0 * kPi / 180.0;
            if (angle(a, b, c) < lo || angle(b, c, a) < lo || angle(c, a, b) < lo) continue;
            family.push_back(normalize_measure(Domain::triangle(a, b, c), area)
                                 .with_label("random-triangle-" + std::to_string(k + 1)));
            break;
        }
    }
    return family;
}

std::vector<Domain> thin_triangle_family(double area, int count) {
    if (count < 1) throw ContractError("family needs at least one member");
    std::vector<Domain> family;
    double aspect = std::sqrt(3.0) / 2.0;  // height over base
    for (int k = 0; k < count; ++k, aspect *= 1.7) {
        auto t = normalize_measure(Domain::triangle({-0.5, 0, 0}, {0.5, 0, 0}, {0.0, aspect, 0}), area);
        family.push_back(t.with_label(k == 0 ? "equilateral" : "isosceles-" + std::to_string(k)));
    }
    return family;
}

TriangleSweep triangle_sweep(const std::vector<Domain>& family, std::span<const double> p_values,
                             std::span<const double> h_levels) {
    if (family.empty()) throw ContractError("empty triangle family");
    for (const Domain& d : family)
        if (d.shape_name() != "triangle") throw GeometryError(d.label() + " is not a triangle");
    TriangleSweep out;
    out.runs.resize(family.size());
    parallel_for(family.size(), [&](std::size_t i) {
        out.runs[i] = evaluate_domain(family[i], OperatorKind::Log2D, p_values, h_levels);
    });
    for (std::size_t i = 1; i < out.runs.size(); ++i) out.comparisons.push_back(compare(out.runs[0], out.runs[i]));
    out.equilateral_maximal = std::none_of(out.comparisons.begin(), out.comparisons.end(),
                                           [](const ComparisonResult& c) { return c.any_violated(); });
    return out;
}

ConvergenceTable convergence_study(const Domain& domain, OperatorKind kind, std::span<const double> h_sequence,
                                   int k_top, std::span<const double> reference) {
    if (h_sequence.size() < 3) throw ContractError("convergence study needs at least 3 mesh levels");
    if (k_top < 1) throw ContractError("k_top must be positive");
    if (domain.dimension() != dimension_of(kind)) throw DimensionMismatch("domain dimension does not match operator");
    const std::vector<double> h = coarse_to_fine(h_sequence);
    const double ratio = h[0] / h[1];
    for (std::size_t i = 1; i + 1 < h.size(); ++i)
        if (std::abs(h[i] / h[i + 1] - ratio) > 1e-6 * ratio)
            throw ContractError("mesh levels must form a geometric sequence");

    const std::size_t levels = h.size();
    std::vector<std::vector<double>> top(levels);
    std::vector<double> h_eff(levels);
    std::vector<std::size_t> n(levels);
    parallel_for(levels, [&](std::size_t i) {
        const Mesh mesh = match_measure(make_mesh(domain, h[i]));
        const Spectrum s = decompose(assemble(mesh, kind), false);
        if (s.size() < static_cast<std::size_t>(k_top))
            throw ResolutionError("mesh at h=" + fmt(h[i]) + " has fewer cells than k_top");
        top[i].assign(s.eigenvalues.begin(), s.eigenvalues.begin() + k_top);
        h_eff[i] = mesh.h;
        n[i] = mesh.size();
    });

    ConvergenceTable table{domain.label(), kind, h, n, {}};
    std::vector<double> log_h;
    for (double v : h_eff) log_h.push_back(std::log(v));
    for (int k = 0; k < k_top; ++k) {
        ConvergenceSeries s;
        s.k = k + 1;
        for (std::size_t i = 0; i < levels; ++i) s.values.push_back(top[i][k]);
        if (static_cast<std::size_t>(k) < reference.size()) s.reference = reference[k];

        std::vector<double> diff;
        for (std::size_t i = 0; i + 1 < levels; ++i) diff.push_back(s.values[i + 1] - s.values[i]);
        s.monotone = std::all_of(diff.begin(), diff.end(), [](double d) { return d > 0.0; }) ||
                     std::all_of(diff.begin(), diff.end(), [](double d) { return d < 0.0; });

        std::vector<double> x, y;
        if (s.reference) {
            for (std::size_t i = 0; i < levels; ++i) {
                x.push_back(log_h[i]);
                y.push_back(std::log(std::abs(s.values[i] - *s.reference)));
            }
        } else {
            for (std::size_t i = 0; i + 1 < levels; ++i) {
                x.push_back(log_h[i]);
                y.push_back(std::log(std::abs(diff[i])));
            }
        }
        const bool finite = std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
        s.order = finite && x.size() >= 2 ? slope(x, y) : std::numeric_limits<double>::quiet_NaN();

        // a + b h by least squares
        const double b = slope(h_eff, s.values);
        double mean_h = 0, mean_v = 0;
        for (std::size_t i = 0; i < levels; ++i) {
            mean_h += h_eff[i] / levels;
            mean_v += s.values[i] / levels;
        }
        s.extrapolated = mean_v - b * mean_h;
        s.error_bar = std::abs(s.extrapolated - s.values.back());
        table.series.push_back(std::move(s));
    }
    return table;
}

ConjectureReport conjecture_probe(double p, const std::vector<Domain>& challengers, std::span<const double> h_levels) {
    if (!(p > 1.0 && p < 2.0)) {
        std::ostringstream msg;
        msg << "conjecture probe covers 1 < p < 2 only, got " << p;
        throw UnsupportedExponent(msg.str());
    }
    if (challengers.empty()) throw ContractError("no challengers given");
    const double area = challengers.front().measure();
    const Domain disc = Domain::disc(std::sqrt(area / kPi)).with_label("disc");
    const std::vector<double> ps{p};
    ConjectureReport out{p, {}, true, 0.0, {}};
    const DomainRun ref = evaluate_domain(disc, OperatorKind::Log2D, ps, h_levels);
    std::vector<DomainRun> runs(challengers.size());
    parallel_for(challengers.size(), [&](std::size_t i) {
        runs[i] = evaluate_domain(challengers[i], OperatorKind::Log2D, ps, h_levels);
    });
    auto sensitivity = [](const DomainRun& r) {
        if (r.levels.size() < 2) return 0.0;
        return relative(r.levels.back().norms[0], r.levels[r.levels.size() - 2].norms[0]);
    };
    out.max_grid_sensitivity = sensitivity(ref);
    for (const DomainRun& r : runs) {
        out.comparisons.push_back(compare(ref, r));
        out.max_grid_sensitivity = std::max(out.max_grid_sensitivity, sensitivity(r));
        if (out.comparisons.back().any_violated()) out.disc_dominates = false;
    }
    std::ostringstream w;
    w << "full-spectrum sums at p=" << p << " depend on grid resolution; norms moved by up to "
      << out.max_grid_sensitivity * 100.0 << "% between the two finest levels";
    out.warning = w.str();
    return out;
}

std::string to_string(Suite s) {
    switch (s) {
        case Suite::Rfk: return "rfk";
        case Suite::Polya: return "polya";
        case Suite::LuttingerLog: return "luttinger-log";
        case Suite::LuttingerTri: return "luttinger-tri";
        case Suite::LuttingerNewton: return "luttinger-newton";
    }
    return "?";
}

std::vector<std::string> suite_names() {
    return {"rfk", "polya", "luttinger-log", "luttinger-tri", "luttinger-newton"};
}

Suite parse_suite(std::string_view name) {
    for (Suite s : {Suite::Rfk, Suite::Polya, Suite::LuttingerLog, Suite::LuttingerTri, Suite::LuttingerNewton})
        if (to_string(s) == name) return s;
    std::string valid;
    for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw SpecError("unknown theorem check '" + std::string(name) + "' (valid: " + valid + ")");
}

SuiteOptions default_suite_options(Suite s) {
    SuiteOptions o;
    o.seed = defaults::kSeed;
    switch (s) {
        case Suite::Rfk:
        case Suite::Polya: o.p_values = {kInfinity}; break;
        case Suite::LuttingerLog: o.p_values = {2.0, 3.0, kInfinity}; break;
        case Suite::LuttingerTri:
        case Suite::LuttingerNewton: o.p_values = {2.0, kInfinity}; break;
    }
    return o;
}

bool SuiteReport::any_violated() const {
    return std::any_of(comparisons.begin(), comparisons.end(), [](const ComparisonResult& c) { return c.any_violated(); });
}

SuiteReport run_suite(Suite s, const SuiteOptions& options) {
    const SuiteOptions defs = default_suite_options(s);
    SuiteReport report;
    report.suite = s;
    report.kind = s == Suite::LuttingerNewton ? OperatorKind::Newton3D : OperatorKind::Log2D;
    report.p_values = options.p_values.empty() ? defs.p_values : options.p_values;
    for (double p : report.p_values)
        if (!(p >= 1.0)) throw UnsupportedExponent("Schatten exponent must be >= 1, got " + fmt(p));
    const int dim = dimension_of(report.kind);
    const double unit = dim == 2 ? kPi : 4.0 * kPi / 3.0;
    if (options.measure < 0.0 || !std::isfinite(options.measure)) throw ContractError("measure must be positive");
    report.measure = options.measure > 0.0 ? options.measure : unit;
    const double scale = std::pow(report.measure / unit, 1.0 / dim);
    report.h_levels = options.h_levels;
    if (report.h_levels.empty())
        for (double h : dim == 2 ? std::span<const double>(defaults::kLevels2D)
                                 : std::span<const double>(defaults::kLevels3D))
            report.h_levels.push_back(h * scale);

    std::vector<Domain> domains;
    if (s == Suite::Polya || s == Suite::LuttingerTri) {
        domains = triangle_family(report.measure, options.seed);
    } else {
        domains.push_back(unit_reference(report.kind).scaled(scale));
        auto zoo = report.kind == OperatorKind::Log2D ? challenger_zoo_2d(options.seed) : challenger_zoo_3d();
        for (const Domain& d : zoo) domains.push_back(normalize_measure(d, report.measure));
    }

    // one job per domain, merged in domain order
    std::vector<DomainRun> runs(domains.size());
    parallel_for(domains.size(), [&](std::size_t i) {
        runs[i] = evaluate_domain(domains[i], report.kind, report.p_values, report.h_levels);
    });
    report.max_negative_eigenvalues = 0;
    report.max_frobenius_residual = 0.0;
    for (const DomainRun& r : runs)
        for (const LevelResult& l : r.levels) {
            report.max_negative_eigenvalues = std::max(report.max_negative_eigenvalues, l.negative_eigenvalues);
            report.max_frobenius_residual = std::max(report.max_frobenius_residual, l.frobenius_residual);
        }
    for (std::size_t i = 1; i < runs.size(); ++i) report.comparisons.push_back(compare(runs[0], runs[i]));
    return report;
}

std::string config_hash(std::string_view canonical_config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_config) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string tool_version() { return POTSPEC_VERSION; }

void write_suite_csv(const SuiteReport& report, const ReportMeta& meta, std::ostream& out) {
    out << "# potspec " << meta.tool_version << " config_hash=" << meta.config_hash
        << " defaults_version=" << defaults::kDefaultsVersion << " measure=" << fmt(report.measure) << '\n';
    out << "experiment,kind,domain,role,measure,p,h,n,norm,error_bar,verdict\n";
    const std::string exp = to_string(report.suite);
    const std::string kind = to_string(report.kind);
    auto rows = [&](const DomainRun& run, const std::string& role, const std::vector<Verdict>* verdicts) {
        for (std::size_t k = 0; k < run.p_values.size(); ++k) {
            const std::string verdict = verdicts ? to_string((*verdicts)[k]) : "";
            for (const LevelResult& l : run.levels)
                out << exp << ',' << kind << ',' << run.label << ',' << role << ',' << fmt(run.measure) << ','
                    << p_label(run.p_values[k]) << ',' << fmt(l.h) << ',' << l.n << ',' << fmt(l.norms[k]) << ",,"
                    << verdict << '\n';
            const NormEstimate& e = run.estimates[k];
            out << exp << ',' << kind << ',' << run.label << ',' << role << ',' << fmt(run.measure) << ','
                << p_label(run.p_values[k]) << ",0,," << fmt(e.extrapolated) << ',' << fmt(e.error_bar) << ','
                << verdict << '\n';
        }
    };
    if (!report.comparisons.empty()) rows(report.comparisons.front().reference, "reference", nullptr);
    for (const ComparisonResult& c : report.comparisons) rows(c.challenger, "challenger", &c.verdicts);
}

namespace {

nlohmann::json p_json(double p) { return std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p); }

nlohmann::json run_json(const DomainRun& run) {
    nlohmann::json j;
    j["domain"] = run.label;
    j["measure"] = run.measure;
    j["levels"] = nlohmann::json::array();
    for (const LevelResult& l : run.levels) {
        nlohmann::json lv{{"h", l.h},
                          {"nominal_h", l.nominal_h},
                          {"n", l.n},
                          {"negative_eigenvalues", l.negative_eigenvalues},
                          {"trace_residual", l.trace_residual},
                          {"frobenius_residual", l.frobenius_residual}};
        lv["norms"] = nlohmann::json::array();
        for (std::size_t k = 0; k < run.p_values.size(); ++k)
            lv["norms"].push_back({{"p", p_json(run.p_values[k])}, {"norm", l.norms[k]}});
        j["levels"].push_back(lv);
    }
    j["estimates"] = nlohmann::json::array();
    for (const NormEstimate& e : run.estimates)
        j["estimates"].push_back({{"p", p_json(e.p)}, {"extrapolated", e.extrapolated}, {"error_bar", e.error_bar}});
    return j;
}

}  // namespace

void write_suite_json(const SuiteReport& report, const ReportMeta& meta, std::ostream& out) {
    nlohmann::json j;
    j["tool_version"] = meta.tool_version;
    j["config_hash"] = meta.config_hash;
    j["defaults_version"] = defaults::kDefaultsVersion;
    j["experiment"] = to_string(report.suite);
    j["kind"] = to_string(report.kind);
    j["p_values"] = nlohmann::json::array();
    for (double p : report.p_values) j["p_values"].push_back(p_json(p));
    j["h_levels"] = report.h_levels;
    j["measure"] = report.measure;
    if (!report.comparisons.empty()) j["reference"] = run_json(report.comparisons.front().reference);
    j["comparisons"] = nlohmann::json::array();
    for (const ComparisonResult& c : report.comparisons) {
        nlohmann::json cj = run_json(c.challenger);
        cj["measure_relative_difference"] = c.measure_relative_difference;
        cj["verdicts"] = nlohmann::json::array();
        for (std::size_t k = 0; k < c.verdicts.size(); ++k)
            cj["verdicts"].push_back({{"p", p_json(report.p_values[k])}, {"verdict", to_string(c.verdicts[k])}});
        j["comparisons"].push_back(cj);
    }
    j["checks"] = {{"max_negative_eigenvalues", report.max_negative_eigenvalues},
                   {"max_frobenius_residual", report.max_frobenius_residual}};
    j["violated"] = report.any_violated();
    out << j.dump(2) << '\n';
}

}  // namespace potspec
