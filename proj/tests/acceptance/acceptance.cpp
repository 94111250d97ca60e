// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "potspec/analytic_spectra.hpp"
#include "potspec/bessel.hpp"
#include "potspec/cli.hpp"
#include "potspec/defaults.hpp"
#include "potspec/eigensolve.hpp"
#include "potspec/experiments.hpp"

using namespace potspec;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time;
    time.precision(3);
    time << secs << " s";
    if (time_limit > 0.0) {
        time << " (limit " << time_limit << " s)";
        if (secs > time_limit) {
            o.pass = false;
            o.detail += "; too slow";
        }
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s | %s | %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
                time.str().c_str());
    std::fflush(stdout);
}

std::string num(double v, int digits = 12) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "potspec");
    std::ostringstream out, err;
    return cli::run(args, out, err);
}

}  // namespace

int main() {
    criterion(1, "Newton operator norm on the unit ball", 1.0, [] {
        const double v = analytic::newton_ball3_schatten(kInfinity).value;
        const double want = 4.0 / (kPi * kPi);
        return Outcome{std::abs(v - want) <= 1e-12,
                       "computed " + num(v, 17) + ", 4/pi^2 = " + num(want, 17) + ", diff " + num(std::abs(v - want), 3)};
    });

    criterion(2, "Newton Hilbert-Schmidt norm on the unit ball", 5.0, [] {
        const SchattenReport r = analytic::newton_ball3_schatten(2.0, 1.0, 1e-8);
        const double want = std::sqrt(7.0 / 48.0);
        return Outcome{std::abs(r.value - want) <= 1e-6,
                       "computed " + num(r.value) + " (tail bound " + num(r.tail_bound, 3) + "), published sqrt(7/48) = " +
                           num(want) + ", diff " + num(std::abs(r.value - want), 3)};
    });

    criterion(3, "log potential operator norm on the unit disc", 0.0, [] {
        const double j01 = bessel::zero(bessel::Order(0.0), 1).value;
        const double oracle_j01 =
            oracle::bisect([](long double x) { return std::cyl_bessel_j(0.0L, x); }, 2.0, 3.0);
        const double v = analytic::log_disc_schatten(kInfinity).value;
        const double want = 1.0 / (j01 * j01);
        const bool ok = std::abs(j01 - oracle_j01) <= 1e-10 && std::abs(v - want) <= 1e-15 * want;
        return Outcome{ok, "j01 " + num(j01, 17) + " vs bisection " + num(oracle_j01, 17) + ", norm " + num(v, 17) +
                               " vs 1/j01^2 " + num(want, 17)};
    });

    criterion(4, "Dirichlet disc references to 4 decimals", 10.0, [] {
        using analytic::DirichletReference;
        struct Ref {
            const char* name;
            double computed;
            double printed;
        };
        const Ref refs[] = {
            {"schatten2^2", analytic::dirichlet_disc_reference(DirichletReference::SchattenSquared2), 0.0493},
            {"regularized trace", analytic::dirichlet_disc_reference(DirichletReference::RegularizedTrace), -0.3557},
            {"bound d=2 p=2", analytic::heat_trace_conjecture_bound(2, 2.0, kPi), 0.7853},
        };
        bool ok = true;
        std::string detail;
        for (const Ref& r : refs) {
            const double d = std::abs(r.computed - r.printed);
            ok = ok && d < 1e-4;
            detail += std::string(detail.empty() ? "" : "; ") + r.name + " " + num(r.computed, 8) + " vs " +
                      num(r.printed) + " (diff " + num(d, 2) + ")";
        }
        return Outcome{ok, detail};
    });

    criterion(5, "discretization convergence of lambda_1", 300.0, [] {
        const double j01 = bessel::zero(bessel::Order(0.0), 1).value;
        struct Case {
            Domain domain;
            OperatorKind kind;
            std::vector<double> h;
            double reference;
        };
        const Case cases[] = {
            {Domain::disc(1.0).with_label("disc"), OperatorKind::Log2D,
             {defaults::kConvergence2D.begin(), defaults::kConvergence2D.end()}, 1.0 / (j01 * j01)},
            {Domain::ball(1.0).with_label("ball"), OperatorKind::Newton3D,
             {defaults::kConvergence3D.begin(), defaults::kConvergence3D.end()}, 4.0 / (kPi * kPi)},
        };
        bool ok = true;
        std::string detail;
        for (const Case& c : cases) {
            const std::vector<double> ref{c.reference};
            const ConvergenceTable t = convergence_study(c.domain, c.kind, c.h, 1, ref);
            const ConvergenceSeries& s = t.series.front();
            const double rel = std::abs(s.extrapolated - c.reference) / c.reference;
            ok = ok && rel <= 0.005 && s.order >= 0.9 && t.n.back() <= 10000;
            detail += std::string(detail.empty() ? "" : "; ") + t.domain + " n<=" + std::to_string(t.n.back()) +
                      " extrapolated " + num(s.extrapolated, 8) + " vs " + num(c.reference, 8) + " (rel " +
                      num(rel, 2) + ", order " + num(s.order, 3) + ")";
        }
        return Outcome{ok, detail};
    });

    // Suite runs shared by criteria 6 to 8.
    std::vector<SuiteReport> reports;

    criterion(6, "isoperimetric suites on the challenger zoos", 0.0, [&] {
        bool ok = true;
        std::string detail;
        for (Suite s : {Suite::LuttingerLog, Suite::LuttingerNewton}) {
            const SuiteReport r = run_suite(s, default_suite_options(s));
            int violated = 0;
            std::string worst;
            for (const ComparisonResult& c : r.comparisons)
                for (std::size_t k = 0; k < c.verdicts.size(); ++k)
                    if (c.verdicts[k] == Verdict::Violated) {
                        ++violated;
                        if (worst.empty())
                            worst = " e.g. " + c.challenger.label + " p=" + num(r.p_values[k], 3) + " " +
                                    num(c.challenger.estimates[k].extrapolated, 6) + " > " +
                                    num(c.reference.estimates[k].extrapolated, 6);
                    }
            const int code = run_cli({"verify", to_string(s)});
            ok = ok && violated == 0 && code == 0;
            detail += std::string(detail.empty() ? "" : "; ") + to_string(s) + ": " + std::to_string(violated) +
                      " violated of " + std::to_string(r.comparisons.size() * r.p_values.size()) + worst +
                      ", verify exit " + std::to_string(code);
            reports.push_back(r);
        }
        return Outcome{ok, detail};
    });

    criterion(7, "equilateral triangle maximal in the triangle family", 0.0, [&] {
        const SuiteReport r = run_suite(Suite::LuttingerTri, default_suite_options(Suite::LuttingerTri));
        reports.push_back(r);
        std::string detail = std::to_string(r.comparisons.size() + 1) + " triangles;";
        for (const ComparisonResult& c : r.comparisons)
            for (std::size_t k = 0; k < c.verdicts.size(); ++k)
                detail += " " + c.challenger.label + "@p=" + num(r.p_values[k], 3) + ":" + to_string(c.verdicts[k]);
        return Outcome{r.comparisons.size() == 4 && !r.any_violated(), detail};
    });

    criterion(8, "structural invariants", 0.0, [&] {
        double frob = 0.0;
        std::size_t newton_neg = 0, log_neg = 0;
        std::size_t matrices = 0;
        for (const SuiteReport& r : reports) {
            frob = std::max(frob, r.max_frobenius_residual);
            (r.kind == OperatorKind::Newton3D ? newton_neg : log_neg) =
                std::max(r.kind == OperatorKind::Newton3D ? newton_neg : log_neg, r.max_negative_eigenvalues);
            matrices += (r.comparisons.size() + 1) * r.h_levels.size();
        }

        const Mesh mesh = match_measure(make_mesh(Domain::ball(1.0), defaults::kLevels3D.front()));
        const Spectrum s = decompose(assemble(mesh, OperatorKind::Newton3D), true);
        double kac_worst = 0.0;
        int kac_points = 0;
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            const Point& x = mesh.centroids[i];
            if (std::hypot(x[0], x[1], x[2]) > 0.5) continue;
            ++kac_points;
            for (double delta : {1e-3, 1e-4, 1e-5})
                kac_worst = std::max(kac_worst, std::abs(kac_summation_check(s, mesh, delta, i).value - 1.0));
        }

        const bool ok = matrices > 0 && frob <= 1e-9 && newton_neg == 0 && log_neg <= 1 && kac_points > 0 &&
                        kac_worst <= defaults::kKacTolerance;
        return Outcome{ok, std::to_string(matrices) + " matrices, max Frobenius residual " + num(frob, 3) +
                               ", Newton negatives " + std::to_string(newton_neg) + ", max Log2D negatives " +
                               std::to_string(log_neg) + ", Kac max |sum-1| " + num(kac_worst, 3) + " over " +
                               std::to_string(kac_points) + " interior cells, n=" + std::to_string(mesh.size())};
    });

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
