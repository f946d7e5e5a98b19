#include "fracbern/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracbern/errors.hpp"
#include "fracbern/one_free.hpp"
#include "fracbern/output.hpp"
#include "fracbern/parallel.hpp"
#include "fracbern/proofcheck.hpp"
#include "fracbern/specfn.hpp"
#include "fracbern/two_free.hpp"

namespace fracbern {

using nlohmann::ordered_json;

namespace {

struct Invocation {
    std::string command;
    std::string problem;  // empty for bounds / proofcheck
    RunConfig cfg;
    bool grid_given = false;
};

QuadratureSpec quad_spec(const RunConfig& c) {
    QuadratureSpec q;
    q.abs_tol = c.quad_tol;
    q.rel_tol = c.quad_tol;
    return q;
}

SeriesSpec series_spec(const RunConfig& c) {
    SeriesSpec s;
    s.tail_tol = c.series_tail_tol;
    return s;
}

ordered_json meta_json(const Invocation& inv) {
    const RunConfig& c = inv.cfg;
    ordered_json cfg;
    cfg["alpha"] = c.alpha;
    cfg["center"] = c.domain_center;
    cfg["radius"] = c.domain_radius;
    cfg["lambda"] = c.lambda ? ordered_json(*c.lambda) : ordered_json(nullptr);
    cfg["grid"] = c.grid;
    cfg["quad_tol"] = c.quad_tol;
    cfg["tail_tol"] = c.series_tail_tol;
    cfg["format"] = c.output_format;
    cfg["plot"] = c.plot_path ? ordered_json(*c.plot_path) : ordered_json(nullptr);
    cfg["verify"] = c.verify;
    ordered_json m;
    m["artifact"] = "fracbern";
    m["version"] = kArtifactVersion;
    m["command"] = inv.command;
    m["problem"] = inv.problem.empty() ? ordered_json(nullptr) : ordered_json(inv.problem);
    m["config"] = cfg;
    return m;
}

void emit_json(std::ostream& out, const Invocation& inv, const ordered_json& data) {
    ordered_json doc;
    doc["meta"] = meta_json(inv);
    doc["data"] = data;
    out << doc.dump(2) << '\n';
}

bool want_json(const Invocation& inv) { return inv.cfg.output_format == "json"; }

void maybe_plot(const Invocation& inv, const PlotSpec& plot) {
    if (inv.cfg.plot_path) write_text_file(*inv.cfg.plot_path, render_svg(plot));
}

std::string alpha_tag(double alpha) { return "alpha = " + format_number(alpha); }

int cmd_constant(const Invocation& inv, std::ostream& out) {
    const RunConfig& c = inv.cfg;
    const AlphaContext ctx = make_alpha_context(c.alpha);
    const Interval dom(c.domain_center, c.domain_radius);
    const BernoulliResult r = inv.problem == "one-free"
                                  ? mu_constant(ctx, dom)
                                  : lambda_constant(ctx, dom, series_spec(c), quad_spec(c));
    if (want_json(inv)) {
        ordered_json d;
        d["alpha"] = c.alpha;
        d["domain"] = {c.domain_center - c.domain_radius, c.domain_center + c.domain_radius};
        d["constant"] = r.constant;
        d["argmin"] = r.argmin_a;
        d["bracket_width"] = r.bracket_width;
        d["evaluations"] = r.evaluations;
        emit_json(out, inv, d);
    } else {
        out << csv_table({"alpha", "center", "radius", "constant", "argmin", "bracket_width", "evaluations"},
                         {{format_number(c.alpha), format_number(c.domain_center), format_number(c.domain_radius),
                           format_number(r.constant), format_number(r.argmin_a), format_number(r.bracket_width),
                           std::to_string(r.evaluations)}});
    }
    return kExitOk;
}

int cmd_curve(const Invocation& inv, std::ostream& out) {
    const RunConfig& c = inv.cfg;
    const AlphaContext ctx = make_alpha_context(c.alpha);
    const bool one = inv.problem == "one-free";
    const std::vector<CurveSample> pts =
        one ? rate_R_curve(ctx, c.grid) : psi_curve(ctx, c.grid, series_spec(c), quad_spec(c));
    if (want_json(inv)) {
        ordered_json rows = ordered_json::array();
        for (const auto& p : pts) rows.push_back({{"a", p.a}, {"value", p.value}});
        emit_json(out, inv, rows);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : pts) rows.push_back({format_number(p.a), format_number(p.value)});
        out << csv_table({"a", "value"}, rows);
    }
    PlotSeries s{one ? "R" : "Psi", {}, {}};
    for (const auto& p : pts) {
        s.x.push_back(p.a);
        s.y.push_back(p.value);
    }
    maybe_plot(inv, PlotSpec{(one ? "R(a), " : "Psi(a), ") + alpha_tag(c.alpha), "a", one ? "R(a)" : "Psi(a)", {s}});
    return kExitOk;
}

struct Solved {
    std::vector<FreeBoundarySolution> solutions;
    std::vector<std::string> warnings;
};

Solved solve_for(const Invocation& inv) {
    const RunConfig& c = inv.cfg;
    if (!c.lambda) throw DomainError("--lambda is required for this command");
    const AlphaContext ctx = make_alpha_context(c.alpha);
    const Interval dom(c.domain_center, c.domain_radius);
    if (inv.problem == "one-free") {
        OneFreeOptions o;
        o.quad = quad_spec(c);
        return {solve_one_free(ctx, dom, *c.lambda, o), {}};
    }
    TwoFreeOptions o;
    o.series = series_spec(c);
    o.quad = quad_spec(c);
    TwoFreeOutcome r = solve_two_free(ctx, dom, *c.lambda, o);
    return {std::move(r.solutions), std::move(r.warnings)};
}

void plot_profiles(const Invocation& inv, const Solved& s) {
    PlotSpec plot{"Solutions at lambda = " + format_number(*inv.cfg.lambda) + ", " + alpha_tag(inv.cfg.alpha), "x",
                  "u(x)", {}};
    for (std::size_t i = 0; i < s.solutions.size(); ++i) {
        PlotSeries ser{"solution " + std::to_string(i + 1), {}, {}};
        for (const auto& p : s.solutions[i].profile) {
            ser.x.push_back(p.x);
            ser.y.push_back(p.u);
        }
        plot.series.push_back(std::move(ser));
    }
    maybe_plot(inv, plot);
}

ordered_json profile_json(const FreeBoundarySolution& s) {
    ordered_json x = ordered_json::array();
    ordered_json u = ordered_json::array();
    for (const auto& p : s.profile) {
        x.push_back(p.x);
        u.push_back(p.u);
    }
    return {{"x", x}, {"u", u}};
}

int cmd_solve(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const Solved s = solve_for(inv);
    for (const auto& w : s.warnings) err << "warning: " << w << '\n';
    if (want_json(inv)) {
        ordered_json sols = ordered_json::array();
        for (std::size_t i = 0; i < s.solutions.size(); ++i) {
            const auto& sol = s.solutions[i];
            ordered_json j;
            j["solution_index"] = i + 1;
            j["parameter_a"] = sol.parameter_a;
            j["k"] = {sol.k_lo, sol.k_hi};
            j["free_points"] = sol.free_points;
            j["level"] = sol.level;
            j["profile"] = profile_json(sol);
            sols.push_back(j);
        }
        emit_json(out, inv, {{"solutions", sols}, {"warnings", s.warnings}});
    } else {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < s.solutions.size(); ++i) {
            const auto& sol = s.solutions[i];
            std::string fp;
            for (double x : sol.free_points) fp += (fp.empty() ? "" : ";") + format_number(x);
            rows.push_back({std::to_string(i + 1), format_number(sol.parameter_a), format_number(sol.k_lo),
                            format_number(sol.k_hi), fp});
        }
        out << csv_table({"solution_index", "parameter_a", "k_lo", "k_hi", "free_points"}, rows);
    }
    plot_profiles(inv, s);
    return kExitOk;
}

int cmd_profile(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const Solved s = solve_for(inv);
    for (const auto& w : s.warnings) err << "warning: " << w << '\n';
    if (want_json(inv)) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < s.solutions.size(); ++i) {
            for (const auto& p : s.solutions[i].profile) {
                rows.push_back({{"x", p.x}, {"u", p.u}, {"solution_index", i + 1}});
            }
        }
        emit_json(out, inv, rows);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < s.solutions.size(); ++i) {
            for (const auto& p : s.solutions[i].profile) {
                rows.push_back({format_number(p.x), format_number(p.u), std::to_string(i + 1)});
            }
        }
        out << csv_table({"x", "u", "solution_index"}, rows);
    }
    plot_profiles(inv, s);
    return kExitOk;
}

int cmd_bounds(const Invocation& inv, std::ostream& out) {
    const RunConfig& c = inv.cfg;
    const AlphaContext ctx = make_alpha_context(c.alpha);
    const Bounds b = bounds_LU(ctx);
    std::optional<double> constant;
    if (c.verify) constant = lambda_constant(ctx, Interval(0.0, 1.0), series_spec(c), quad_spec(c)).constant;
    const bool inside = constant && *constant >= b.lower && *constant <= b.upper;
    if (want_json(inv)) {
        ordered_json d;
        d["alpha"] = c.alpha;
        d["lower"] = b.lower;
        d["upper"] = b.upper;
        if (constant) {
            d["constant"] = *constant;
            d["in_bracket"] = inside;
        }
        emit_json(out, inv, d);
    } else if (constant) {
        out << csv_table({"alpha", "lower", "upper", "constant", "in_bracket"},
                         {{format_number(c.alpha), format_number(b.lower), format_number(b.upper),
                           format_number(*constant), inside ? "true" : "false"}});
    } else {
        out << csv_table({"alpha", "lower", "upper"},
                         {{format_number(c.alpha), format_number(b.lower), format_number(b.upper)}});
    }
    return kExitOk;
}

int cmd_proofcheck(const Invocation& inv, std::ostream& out) {
    const int grid = inv.grid_given ? inv.cfg.grid : 400;
    const ProofReport r = check_inequality(grid);
    ordered_json d;
    d["f1_grid"] = r.f1_grid;
    d["f1_infimum_estimate"] = r.f1_infimum_estimate;
    d["f1_grid_minimum_location"] = {r.f1_min_a, r.f1_min_b};
    d["f2_at_034"] = r.f2_at_034;
    d["f2_minimum"] = r.f2_minimum;
    d["f2_argmin"] = r.f2_argmin;
    d["lambda_lower_from_f1"] = r.lambda_lower_from_f1;
    d["conclusion_holds"] = r.conclusion_holds;
    d["note"] = r.note;
    emit_json(out, inv, d);
    return r.conclusion_holds ? kExitOk : kExitAccuracy;
}

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err) {
    inv.cfg.validate();
    if (inv.command == "constant") return cmd_constant(inv, out);
    if (inv.command == "curve") return cmd_curve(inv, out);
    if (inv.command == "solve") return cmd_solve(inv, out, err);
    if (inv.command == "profile") return cmd_profile(inv, out, err);
    if (inv.command == "bounds") return cmd_bounds(inv, out);
    return cmd_proofcheck(inv, out);
}

}  // namespace

void RunConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("--alpha must lie in (0, 2)");
    if (!std::isfinite(domain_center)) throw DomainError("--center must be finite");
    if (!(domain_radius > 0.0) || !std::isfinite(domain_radius)) throw DomainError("--radius must be positive");
    if (lambda && !(*lambda > 0.0)) throw DomainError("--lambda must be positive");
    if (grid < 16) throw DomainError("--grid must be at least 16");
    if (!(quad_tol > 0.0)) throw DomainError("--quad-tol must be positive");
    if (!(series_tail_tol > 0.0)) throw DomainError("--tail-tol must be positive");
    if (output_format != "csv" && output_format != "json") throw DomainError("--format must be csv or json");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    configure_threads_from_env();
    Invocation inv;
    RunConfig& c = inv.cfg;
    double lambda = 0.0;
    std::string plot;

    CLI::App app{"Bernoulli constants and free boundary solutions for the 1-D fractional Laplacian", "fracbern"};
    app.set_config("--config", "", "key = value file mirroring the flags; flags override it");
    app.add_option("--alpha", c.alpha, "order of the fractional Laplacian, in (0, 2)");
    app.add_option("--center", c.domain_center, "center x0 of D");
    app.add_option("--radius", c.domain_radius, "radius r of D");
    CLI::Option* lambda_opt = app.add_option("--lambda", lambda, "level lambda > 0 (solve, profile)");
    CLI::Option* grid_opt = app.add_option("--grid", c.grid, "grid points for curves and proofcheck");
    app.add_option("--quad-tol", c.quad_tol, "quadrature tolerance");
    app.add_option("--tail-tol", c.series_tail_tol, "Neumann series tail tolerance");
    app.add_option("--format", c.output_format, "csv or json");
    CLI::Option* plot_opt = app.add_option("--plot", plot, "write an SVG plot to this path");
    app.add_flag("--verify", c.verify, "bounds: also compute the constant and check the bracket");
    app.require_subcommand(1);

    const std::vector<std::string> problems{"one-free", "two-free"};
    auto with_problem = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("problem", inv.problem, "one-free or two-free")->required()->check(CLI::IsMember(problems));
        return sub;
    };
    CLI::App* constant = with_problem("constant", "Bernoulli constant of D");
    CLI::App* curve = with_problem("curve", "rate function R or Psi on a uniform grid of (0, 1)");
    CLI::App* solve = with_problem("solve", "free boundary solutions at --lambda");
    CLI::App* profile = with_problem("profile", "sampled profiles of the solutions at --lambda");
    CLI::App* bounds = app.add_subcommand("bounds", "closed-form bracket of the two-free constant");
    CLI::App* proof = app.add_subcommand("proofcheck", "reproduce the estimates behind Lambda > lambda at alpha = 1");
    bounds->fallthrough();
    proof->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    for (CLI::App* sub : {constant, curve, solve, profile, bounds, proof}) {
        if (sub->parsed()) inv.command = sub->get_name();
    }
    if (lambda_opt->count() > 0) c.lambda = lambda;
    if (plot_opt->count() > 0) c.plot_path = plot;
    inv.grid_given = grid_opt->count() > 0;

    try {
        return dispatch(inv, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const AccuracyError& e) {
        err << "accuracy failure: " << e.what() << " (best value " << format_number(e.best_value())
            << ", error estimate " << format_number(e.error_estimate()) << ")\n";
        return kExitAccuracy;
    } catch (const BracketError& e) {
        err << "accuracy failure: " << e.what() << '\n';
        return kExitAccuracy;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace fracbern
