#include "potspec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ios>
#include <numbers>
#include <ostream>
#include <sstream>

#include "potspec/analytic_spectra.hpp"
#include "potspec/bessel.hpp"
#include "potspec/defaults.hpp"
#include "potspec/discretization.hpp"
#include "potspec/domains.hpp"
#include "potspec/eigensolve.hpp"
#include "potspec/error.hpp"
#include "potspec/experiments.hpp"

namespace potspec::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

class IoFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    std::string target;  // analytic target, theorem name or example id
    std::string domain;
    std::string kind;
    std::vector<std::string> p_text;
    std::vector<double> p;
    std::vector<std::string> h_text;
    std::vector<double> h;
    std::string out;
    std::string format;
    std::uint64_t seed = defaults::kSeed;
    double tol = 0.0;
    std::string which = "all";
    int k = 10;
    double measure = 0.0;
    bool match_measure = false;
    std::vector<double> reference;
};

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json json_num(double v) { return std::isfinite(v) ? json(v) : json(num(v)); }

double parse_real(const std::string& text, const char* what) {
    std::string t;
    for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "inf" || t == "infinity") return kInfinity;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != t.size() || !std::isfinite(v))
        throw SpecError(std::string("invalid ") + what + " value '" + text + "'");
    return v;
}

std::string canonical(const RunConfig& c) {
    std::ostringstream s;
    s << "sub=" << c.subcommand << ";target=" << c.target << ";domain=" << c.domain << ";kind=" << c.kind << ";p=";
    for (double v : c.p) s << num(v) << ',';
    s << ";h=";
    for (double v : c.h) s << num(v) << ',';
    s << ";format=" << c.format << ";seed=" << c.seed << ";tol=" << num(c.tol) << ";which=" << c.which
      << ";k=" << c.k << ";measure=" << num(c.measure) << ";match=" << c.match_measure << ";ref=";
    for (double v : c.reference) s << num(v) << ',';
    s << ";defaults=" << defaults::kDefaultsVersion;
    return s.str();
}

ReportMeta meta_for(const RunConfig& c) { return {tool_version(), config_hash(canonical(c))}; }

std::string meta_line(const ReportMeta& m) {
    return "# potspec " + m.tool_version + " config_hash=" + m.config_hash +
           " defaults_version=" + std::to_string(defaults::kDefaultsVersion);
}

/// Writes to --out when given, otherwise to `out`.
void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoFailure("cannot open output file '" + c.out + "'");
    f << text;
    f.flush();
    if (!f) throw IoFailure("failed writing output file '" + c.out + "'");
}

OperatorKind resolve_kind(const RunConfig& c, const Domain& d) {
    if (c.kind.empty()) return d.dimension() == 2 ? OperatorKind::Log2D : OperatorKind::Newton3D;
    const OperatorKind k = parse_operator_kind(c.kind);
    if (dimension_of(k) != d.dimension())
        throw DimensionMismatch(to_string(k) + " needs a " + std::to_string(dimension_of(k)) + "D domain, but '" +
                                c.domain + "' describes a " + std::to_string(d.dimension()) + "D " + d.shape_name());
    return k;
}

Domain load_domain(const RunConfig& c) {
    if (c.domain.empty()) throw SpecError("--domain is required for '" + c.subcommand + "'");
    Domain d = load_domain_spec(c.domain);
    if (d.label().empty()) d = d.with_label(d.shape_name());
    return d;
}

/// Pinned levels for the domain's dimension, scaled to its size.
std::vector<double> default_levels(const Domain& d, bool convergence) {
    const int dim = d.dimension();
    const double unit = dim == 2 ? kPi : 4.0 * kPi / 3.0;
    const double scale = std::pow(d.measure() / unit, 1.0 / dim);
    std::vector<double> h;
    if (convergence) {
        if (dim == 2)
            h.assign(defaults::kConvergence2D.begin(), defaults::kConvergence2D.end());
        else
            h.assign(defaults::kConvergence3D.begin(), defaults::kConvergence3D.end());
    } else {
        if (dim == 2)
            h.assign(defaults::kLevels2D.begin(), defaults::kLevels2D.end());
        else
            h.assign(defaults::kLevels3D.begin(), defaults::kLevels3D.end());
    }
    for (double& v : h) v *= scale;
    return h;
}

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
    if (c.format.empty()) return;
    for (const char* a : allowed)
        if (c.format == a) return;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
    throw SpecError("--format must be " + list + " for '" + c.subcommand + "'");
}

// ---- analytic -------------------------------------------------------------

struct AnalyticRow {
    std::string quantity;
    double p;
    double value;
    std::string method;
    long l_max, m_max, terms;
    double tail_bound;
    bool has_truncation;
};

int cmd_analytic(const RunConfig& c, std::ostream& out) {
    require_format(c, {"text", "csv", "json"});
    std::vector<AnalyticRow> rows;
    const std::vector<double> ps = c.p.empty() ? std::vector<double>{kInfinity} : c.p;
    if (c.target == "log-disc" || c.target == "newton-ball") {
        for (double p : ps) {
            const SchattenReport r = c.target == "log-disc"
                                         ? analytic::log_disc_schatten(p, 1.0, c.tol > 0 ? c.tol : 1e-10)
                                         : analytic::newton_ball3_schatten(p, 1.0, c.tol > 0 ? c.tol : 1e-8);
            rows.push_back({"schatten-norm", p, r.value, to_string(r.truncation.method), r.truncation.l_max,
                            r.truncation.m_max, r.truncation.terms, r.tail_bound, true});
        }
    } else if (c.target == "dirichlet-disc") {
        using analytic::DirichletReference;
        const bool all = c.which == "all";
        if (!all && c.which != "schatten2" && c.which != "regularized-trace" && c.which != "conjecture-bound")
            throw SpecError("--which must be schatten2|regularized-trace|conjecture-bound|all");
        if (all || c.which == "schatten2")
            rows.push_back({"schatten2-squared", 2.0, analytic::dirichlet_disc_reference(DirichletReference::SchattenSquared2),
                            "rayleigh-sums", 0, 0, 0, 1e-12, false});
        if (all || c.which == "regularized-trace")
            rows.push_back({"regularized-trace", 1.0,
                            analytic::dirichlet_disc_reference(DirichletReference::RegularizedTrace), "weyl-tail", 0, 0,
                            0, 0.0, false});
        if (all || c.which == "conjecture-bound")
            rows.push_back({"conjecture-bound", 2.0,
                            analytic::dirichlet_disc_reference(DirichletReference::ConjectureBound), "closed-form", 0,
                            0, 0, 0.0, false});
    } else {
        throw SpecError("unknown analytic target '" + c.target + "' (valid: log-disc, newton-ball, dirichlet-disc)");
    }

    const ReportMeta meta = meta_for(c);
    std::ostringstream s;
    if (c.format == "json") {
        json j{{"tool_version", meta.tool_version}, {"config_hash", meta.config_hash}, {"target", c.target}};
        j["rows"] = json::array();
        for (const auto& r : rows) {
            json row{{"quantity", r.quantity}, {"p", json_num(r.p)}, {"value", r.value}, {"method", r.method},
                     {"tail_bound", r.tail_bound}};
            if (r.has_truncation) row["truncation"] = {{"l_max", r.l_max}, {"m_max", r.m_max}, {"terms", r.terms}};
            j["rows"].push_back(row);
        }
        s << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        s << meta_line(meta) << '\n' << "target,quantity,p,value,method,l_max,m_max,terms,tail_bound\n";
        for (const auto& r : rows) {
            s << c.target << ',' << r.quantity << ',' << num(r.p) << ',' << num(r.value) << ',' << r.method << ',';
            if (r.has_truncation) s << r.l_max << ',' << r.m_max << ',' << r.terms;
            else s << ",,";
            s << ',' << num(r.tail_bound) << '\n';
        }
    } else {
        for (const auto& r : rows) {
            s << c.target << ' ' << r.quantity << " p=" << short_num(r.p) << "  value=" << num(r.value)
              << "  method=" << r.method;
            if (r.has_truncation)
                s << "  l_max=" << r.l_max << " m_max=" << (r.m_max == 0 ? std::string("all") : std::to_string(r.m_max))
                  << " terms=" << r.terms;
            s << "  tail_bound=" << short_num(r.tail_bound) << '\n';
        }
    }
    emit(c, s.str(), out);
    return kOk;
}

// ---- spectrum -------------------------------------------------------------

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    require_format(c, {"csv", "json"});
    const Domain d = load_domain(c);
    const OperatorKind kind = resolve_kind(c, d);
    if (c.h.size() != 1) throw SpecError("'spectrum' takes exactly one --h value");
    if (c.k < 0) throw SpecError("--k must be nonnegative");
    Mesh mesh = make_mesh(d, c.h.front());
    if (c.match_measure) mesh = match_measure(mesh);
    const Spectrum spec = decompose(assemble(mesh, kind), false);
    const std::size_t count =
        c.k == 0 ? spec.size() : std::min<std::size_t>(static_cast<std::size_t>(c.k), spec.size());

    const ReportMeta meta = meta_for(c);
    std::ostringstream s;
    if (c.format == "json") {
        json j{{"tool_version", meta.tool_version},
               {"config_hash", meta.config_hash},
               {"domain", d.label()},
               {"kind", to_string(kind)},
               {"h", mesh.h},
               {"n", mesh.size()},
               {"cell_measure", mesh.cell_measure},
               {"measure", d.measure()},
               {"mesh_measure", mesh.total_measure()}};
        j["eigenvalues"] = json::array();
        j["characteristic_numbers"] = json::array();
        for (std::size_t i = 0; i < count; ++i) {
            j["eigenvalues"].push_back(spec.eigenvalues[i]);
            j["characteristic_numbers"].push_back(spec.eigenvalues[i] != 0.0 ? json(1.0 / spec.eigenvalues[i])
                                                                               : json("inf"));
        }
        s << j.dump(2) << '\n';
    } else {
        s << meta_line(meta) << '\n'
          << "# domain=" << d.label() << " kind=" << to_string(kind) << " h=" << num(mesh.h) << " n=" << mesh.size()
          << " cell_measure=" << num(mesh.cell_measure) << '\n';
        write_spectrum_csv(spec, s, count == 0 ? 0 : count);
    }
    emit(c, s.str(), out);
    return kOk;
}

// ---- schatten -------------------------------------------------------------

int cmd_schatten(const RunConfig& c, std::ostream& out) {
    require_format(c, {"csv", "json"});
    const Domain d = load_domain(c);
    const OperatorKind kind = resolve_kind(c, d);
    const std::vector<double> ps = c.p.empty() ? std::vector<double>{2.0, kInfinity} : c.p;
    for (double p : ps)
        if (!(p >= 1.0)) throw UnsupportedExponent("Schatten exponent must be >= 1, got " + num(p));
    const std::vector<double> h = c.h.empty() ? default_levels(d, false) : c.h;
    const DomainRun run = evaluate_domain(d, kind, ps, h);

    const ReportMeta meta = meta_for(c);
    std::ostringstream s;
    if (c.format == "json") {
        json j{{"tool_version", meta.tool_version},
               {"config_hash", meta.config_hash},
               {"domain", run.label},
               {"kind", to_string(kind)},
               {"measure", run.measure}};
        j["levels"] = json::array();
        for (const LevelResult& l : run.levels) {
            json lv{{"h", l.h}, {"nominal_h", l.nominal_h}, {"n", l.n}, {"negative_eigenvalues", l.negative_eigenvalues}};
            lv["norms"] = json::array();
            for (std::size_t k = 0; k < ps.size(); ++k) lv["norms"].push_back({{"p", json_num(ps[k])}, {"norm", l.norms[k]}});
            j["levels"].push_back(lv);
        }
        j["estimates"] = json::array();
        for (const NormEstimate& e : run.estimates)
            j["estimates"].push_back({{"p", json_num(e.p)}, {"extrapolated", e.extrapolated}, {"error_bar", e.error_bar}});
        s << j.dump(2) << '\n';
    } else {
        s << meta_line(meta) << '\n' << "domain,kind,p,h,n,norm,error_bar\n";
        for (std::size_t k = 0; k < ps.size(); ++k) {
            for (const LevelResult& l : run.levels)
                s << run.label << ',' << to_string(kind) << ',' << num(ps[k]) << ',' << num(l.h) << ',' << l.n << ','
                  << num(l.norms[k]) << ",\n";
            s << run.label << ',' << to_string(kind) << ',' << num(ps[k]) << ",0,," << num(run.estimates[k].extrapolated)
              << ',' << num(run.estimates[k].error_bar) << '\n';
        }
    }
    emit(c, s.str(), out);
    return kOk;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    require_format(c, {"csv", "json"});
    const Suite suite = parse_suite(c.target);
    SuiteOptions opt = default_suite_options(suite);
    if (!c.p.empty()) opt.p_values = c.p;
    opt.h_levels = c.h;
    opt.seed = c.seed;
    opt.measure = c.measure;
    const SuiteReport report = run_suite(suite, opt);
    const ReportMeta meta = meta_for(c);

    std::ostringstream file;
    if (c.format == "json")
        write_suite_json(report, meta, file);
    else
        write_suite_csv(report, meta, file);

    // machine report to --out, or to stdout when a format is requested without a file
    if (!c.out.empty() || !c.format.empty()) emit(c, file.str(), out);
    if (!c.out.empty() || c.format.empty()) {
        out << to_string(suite) << ' ' << to_string(report.kind) << " measure=" << short_num(report.measure)
            << " h=";
        for (std::size_t i = 0; i < report.h_levels.size(); ++i)
            out << (i ? "," : "") << short_num(report.h_levels[i]);
        out << '\n';
        if (!report.comparisons.empty()) {
            const DomainRun& ref = report.comparisons.front().reference;
            for (std::size_t k = 0; k < ref.p_values.size(); ++k)
                out << "  reference " << ref.label << " p=" << short_num(ref.p_values[k])
                    << "  norm=" << short_num(ref.estimates[k].extrapolated) << " +- "
                    << short_num(ref.estimates[k].error_bar) << '\n';
        }
        for (const ComparisonResult& cr : report.comparisons)
            for (std::size_t k = 0; k < cr.verdicts.size(); ++k)
                out << "  " << std::left << std::setw(18) << cr.challenger.label << " p=" << std::setw(4)
                    << short_num(report.p_values[k]) << "  norm=" << short_num(cr.challenger.estimates[k].extrapolated)
                    << " +- " << short_num(cr.challenger.estimates[k].error_bar) << "  "
                    << to_string(cr.verdicts[k]) << std::right << '\n';
        out << "  max negative eigenvalues per matrix: " << report.max_negative_eigenvalues << '\n';
    }
    if (!report.any_violated()) return kOk;
    for (const ComparisonResult& cr : report.comparisons)
        for (std::size_t k = 0; k < cr.verdicts.size(); ++k)
            if (cr.verdicts[k] == Verdict::Violated)
                err << "violated: " << to_string(suite) << ' ' << cr.challenger.label << " p=" << num(report.p_values[k])
                    << " challenger=" << num(cr.challenger.estimates[k].extrapolated)
                    << " reference=" << num(cr.reference.estimates[k].extrapolated) << " combined_error_bar="
                    << num(cr.challenger.estimates[k].error_bar + cr.reference.estimates[k].error_bar) << '\n';
    return kViolated;
}

// ---- repro ----------------------------------------------------------------

struct ReproRow {
    std::string quantity;
    double computed;
    double cited;
    std::string source;
};

std::vector<ReproRow> repro_rows(const std::string& id) {
    using analytic::DirichletReference;
    if (id == "newton-norm")
        return {{"operator norm, Newton potential, unit 3-ball", analytic::newton_ball3_schatten(kInfinity).value,
                 4.0 / (kPi * kPi), "closed form 4/pi^2 = 1/j_{-1/2,1}^2"}};
    if (id == "newton-hs")
        return {{"Hilbert-Schmidt norm, Newton potential, unit 3-ball", analytic::newton_ball3_schatten(2.0).value,
                 std::sqrt(7.0 / 48.0), "published closed form sqrt(7/48)"}};
    if (id == "log-norm") {
        const double j01 = bessel::zero(bessel::Order(0.0), 1).value;
        return {{"operator norm, logarithmic potential, unit disc", analytic::log_disc_schatten(kInfinity).value,
                 1.0 / (j01 * j01), "closed form 1/j_{0,1}^2"}};
    }
    if (id == "dirichlet-schatten2")
        return {{"squared Hilbert-Schmidt norm of the Dirichlet Laplacian inverse, unit disc",
                 analytic::dirichlet_disc_reference(DirichletReference::SchattenSquared2), 0.0493,
                 "published to 4 decimals"}};
    if (id == "dirichlet-regularized")
        return {{"regularized trace of the Dirichlet Laplacian inverse, unit disc",
                 analytic::dirichlet_disc_reference(DirichletReference::RegularizedTrace), -0.3557,
                 "published to 4 decimals"}};
    if (id == "hh-bound")
        return {{"conjectured heat-trace bound at d=2, p=2, measure pi",
                 analytic::dirichlet_disc_reference(DirichletReference::ConjectureBound), 0.7853,
                 "published to 4 decimals (pi/4)"},
                {"sharper exact value (squared Hilbert-Schmidt norm)",
                 analytic::dirichlet_disc_reference(DirichletReference::SchattenSquared2), 0.0493,
                 "published to 4 decimals"}};
    std::string valid;
    for (const auto& v : repro_ids()) valid += (valid.empty() ? "" : ", ") + v;
    throw SpecError("unknown example id '" + id + "' (valid: " + valid + ")");
}

int cmd_repro(const RunConfig& c, std::ostream& out) {
    require_format(c, {"text", "csv", "json"});
    const std::vector<ReproRow> rows = repro_rows(c.target);
    const ReportMeta meta = meta_for(c);
    std::ostringstream s;
    if (c.format == "json") {
        json j{{"tool_version", meta.tool_version}, {"config_hash", meta.config_hash}, {"id", c.target}};
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"quantity", r.quantity},
                                 {"computed", r.computed},
                                 {"cited", r.cited},
                                 {"abs_difference", std::abs(r.computed - r.cited)},
                                 {"source", r.source}});
        s << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        s << meta_line(meta) << '\n' << "id,quantity,computed,cited,abs_difference,source\n";
        for (const auto& r : rows)
            s << c.target << ",\"" << r.quantity << "\"," << num(r.computed) << ',' << num(r.cited) << ','
              << num(std::abs(r.computed - r.cited)) << ",\"" << r.source << "\"\n";
    } else {
        for (const auto& r : rows) {
            s << r.quantity << '\n'
              << "  computed " << num(r.computed) << '\n'
              << "  cited    " << num(r.cited) << "  (" << r.source << ")\n"
              << "  |diff|   " << short_num(std::abs(r.computed - r.cited)) << '\n';
        }
    }
    emit(c, s.str(), out);
    return kOk;
}

// ---- convergence ----------------------------------------------------------

int cmd_convergence(const RunConfig& c, std::ostream& out) {
    require_format(c, {"csv", "json"});
    const Domain d = load_domain(c);
    const OperatorKind kind = resolve_kind(c, d);
    const std::vector<double> h = c.h.empty() ? default_levels(d, true) : c.h;
    if (c.k < 1) throw SpecError("--k must be positive for 'convergence'");
    const ConvergenceTable t = convergence_study(d, kind, h, c.k, c.reference);

    const ReportMeta meta = meta_for(c);
    std::ostringstream s;
    if (c.format == "json") {
        json j{{"tool_version", meta.tool_version},
               {"config_hash", meta.config_hash},
               {"domain", t.domain},
               {"kind", to_string(kind)},
               {"h", t.h},
               {"n", t.n}};
        j["series"] = json::array();
        for (const ConvergenceSeries& cs : t.series) {
            json e{{"k", cs.k},
                   {"values", cs.values},
                   {"order", json_num(cs.order)},
                   {"extrapolated", cs.extrapolated},
                   {"error_bar", cs.error_bar},
                   {"monotone", cs.monotone}};
            if (cs.reference) e["reference"] = *cs.reference;
            j["series"].push_back(e);
        }
        s << j.dump(2) << '\n';
    } else {
        s << meta_line(meta) << '\n' << "domain,kind,k,h,n,eigenvalue,order,extrapolated,error_bar,monotone,reference\n";
        for (const ConvergenceSeries& cs : t.series) {
            for (std::size_t i = 0; i < t.h.size(); ++i)
                s << t.domain << ',' << to_string(kind) << ',' << cs.k << ',' << num(t.h[i]) << ',' << t.n[i] << ','
                  << num(cs.values[i]) << ",,,,,\n";
            s << t.domain << ',' << to_string(kind) << ',' << cs.k << ",0,,," << num(cs.order) << ','
              << num(cs.extrapolated) << ',' << num(cs.error_bar) << ',' << (cs.monotone ? "yes" : "no") << ','
              << (cs.reference ? num(*cs.reference) : std::string()) << '\n';
        }
    }
    emit(c, s.str(), out);
    return kOk;
}

}  // namespace

std::vector<std::string> repro_ids() {
    return {"newton-norm", "newton-hs", "log-norm", "dirichlet-schatten2", "dirichlet-regularized", "hh-bound"};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Spectral norms of logarithmic and Newton potential operators"};
    app.name(args.empty() ? "potspec" : args.front());
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    auto add_format = [&](CLI::App* s) {
        s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
        s->add_option("--out", c.out, "Output file (default: stdout)");
    };
    auto add_domain = [&](CLI::App* s) {
        s->add_option("--domain", c.domain, "Domain spec file (JSON)");
        s->add_option("--kind", c.kind, "Operator: log2d | newton3d (default: from the domain dimension)");
    };
    auto add_p = [&](CLI::App* s) {
        s->add_option("--p", c.p_text, "Schatten exponents, comma separated; 'inf' for the operator norm")
            ->delimiter(',');
    };
    auto add_h = [&](CLI::App* s) {
        s->add_option("--h", c.h_text, "Cell sizes, comma separated")->delimiter(',');
    };

    auto* analytic = app.add_subcommand("analytic", "Closed-form and series values on the disc and ball");
    analytic->add_option("target", c.target, "log-disc | newton-ball | dirichlet-disc")->required();
    add_p(analytic);
    analytic->add_option("--tol", c.tol, "Tail-bound tolerance");
    analytic->add_option("--which", c.which, "dirichlet-disc quantity: schatten2 | regularized-trace | conjecture-bound | all");
    add_format(analytic);

    auto* spectrum = app.add_subcommand("spectrum", "Largest eigenvalues of a discretized operator");
    add_domain(spectrum);
    add_h(spectrum);
    spectrum->add_option("--k", c.k, "Number of eigenvalues (0: all)");
    spectrum->add_flag("--match-measure", c.match_measure, "Dilate the cell grid to the exact domain measure");
    add_format(spectrum);

    auto* schatten = app.add_subcommand("schatten", "Discretized Schatten norms with a two-level error bar");
    add_domain(schatten);
    add_p(schatten);
    add_h(schatten);
    add_format(schatten);

    auto* verify = app.add_subcommand("verify", "Run an isoperimetric theorem check");
    verify->add_option("theorem", c.target, "rfk | polya | luttinger-log | luttinger-tri | luttinger-newton")->required();
    add_p(verify);
    add_h(verify);
    verify->add_option("--seed", c.seed, "Seed for the random challengers");
    verify->add_option("--measure", c.measure, "Common measure of all domains (default: unit disc / ball)");
    add_format(verify);

    auto* repro = app.add_subcommand("repro", "Reproduce a reference number");
    repro->add_option("id", c.target, "Example id")->required();
    add_format(repro);

    auto* convergence = app.add_subcommand("convergence", "Mesh-refinement study of the leading eigenvalues");
    add_domain(convergence);
    add_h(convergence);
    convergence->add_option("--k", c.k, "Number of leading eigenvalues to track");
    convergence->add_option("--reference", c.reference, "Known limits, one per eigenvalue")->delimiter(',');
    add_format(convergence);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << tool_version() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    c.subcommand = app.get_subcommands().front()->get_name();
    if (c.subcommand == "convergence" && convergence->count("--k") == 0) c.k = 3;

    try {
        for (const auto& t : c.p_text) c.p.push_back(parse_real(t, "--p"));
        for (const auto& t : c.h_text) {
            const double v = parse_real(t, "--h");
            if (!(v > 0.0) || std::isinf(v)) throw SpecError("--h values must be positive and finite");
            c.h.push_back(v);
        }
        if (c.subcommand == "analytic") return cmd_analytic(c, out);
        if (c.subcommand == "spectrum") {
            if (c.h.empty()) throw SpecError("'spectrum' needs --h");
            return cmd_spectrum(c, out);
        }
        if (c.subcommand == "schatten") return cmd_schatten(c, out);
        if (c.subcommand == "verify") return cmd_verify(c, out, err);
        if (c.subcommand == "repro") return cmd_repro(c, out);
        if (c.subcommand == "convergence") return cmd_convergence(c, out);
        err << "error: unknown subcommand\n";
        return kUsage;
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const UnsupportedExponent& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace potspec::cli
