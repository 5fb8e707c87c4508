#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lbroots/lbroots.hpp"
#include "lbroots/report.hpp"

using namespace lbroots;
using io::input_error;
using io::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_quality = 2;

cplx parse_complex(const std::string& s, const std::string& flag)
{
    double re = 0.0, im = 0.0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &extra) == 2 || std::sscanf(s.c_str(), "%lf%c", &re, &extra) == 1)
        return {re, im};
    throw input_error(flag + ": expected 're' or 're,im', got '" + s + "'");
}

std::pair<long, long> parse_range(const std::string& s, const std::string& flag)
{
    long a = 0, b = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%ld:%ld%c", &a, &b, &extra) != 2 || a > b)
        throw input_error(flag + ": expected A:B with A <= B, got '" + s + "'");
    return {a, b};
}

rectangle parse_region(const std::string& s)
{
    rectangle r;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf:%lf%c", &r.re_min, &r.re_max, &r.im_min, &r.im_max, &extra) != 4)
        throw input_error("--region: expected re_min:re_max:im_min:im_max, got '" + s + "'");
    try {
        r.validate();
    } catch (const solver_error& e) {
        throw input_error(std::string("--region: ") + e.what());
    }
    return r;
}

std::pair<int, int> parse_grid(const std::string& s)
{
    int nx = 0, ny = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%d:%d%c", &nx, &ny, &extra) != 2 || nx < 4 || ny < 4)
        throw input_error("--grid: expected NX:NY with both >= 4, got '" + s + "'");
    return {nx, ny};
}

void print_diagnostics(const root_field& f)
{
    for (const auto& d : f.diagnostics)
        std::cerr << to_string(d) << "\n";
}

root_record plain_record(cplx z, const equation* eq = nullptr)
{
    root_record r;
    r.z = z;
    r.refined = true;
    r.converged = true;
    r.multiplicity = 1;
    r.residual = eq ? residual_of(*eq, z) : 0.0;
    return r;
}

// ---------------------------------------------------------------------------

struct solve_args {
    std::string input;
    std::string s_range = "0:0";
    int terms = 30;
    double tol = 1e-12;
    double radius = 1.0;
    std::string format = "json";
    bool quad = false;
};

int cmd_solve(const solve_args& a)
{
    const equation eq = io::parse_equation(io::load_document(a.input));
    const auto [s_min, s_max] = parse_range(a.s_range, "--s-range");
    if (a.terms < 1)
        throw input_error("--terms: must be >= 1");
    if (!(a.tol > 0.0))
        throw input_error("--tol: must be positive");
    solve_options opt;
    opt.s_min = s_min;
    opt.s_max = s_max;
    opt.terms = a.terms;
    opt.tol = a.tol;
    opt.radius = a.radius;
    opt.prec = a.quad ? precision::quad : precision::standard;
    const root_field f = solve_all(eq, opt);
    print_diagnostics(f);
    if (a.format == "csv") {
        std::cout << io::root_csv(f);
    } else {
        const json settings{{"s_range", {s_min, s_max}}, {"terms", a.terms}, {"tol", a.tol},
                            {"radius", a.radius},        {"precision", a.quad ? "quad" : "double"},
                            {"equation", io::equation_document(eq)}};
        std::cout << io::canonical(io::root_report(f, settings)) << "\n";
    }
    return f.has_unrescued_divergence() ? exit_quality : exit_ok;
}

// ---------------------------------------------------------------------------

struct famous_args {
    std::string name;
    std::string t = "1";
    std::string k_range;
    double M = 10.0 * pi / 11.8622;
    double e = 0.04844;
    std::string kind = "surface";
    std::string C = "0.5", a = "-1", w = "0.5";
    double r = 1.0, nu = 0.5;
    std::string region = "-5:5:-20:20";
    std::string m = "1", p = "1", q = "2";
    std::string h = "-1,0,1";
    int terms = 0;
    bool paper_check = false;
    double planck = 6.62607015e-34, light = 299792458.0, boltzmann = 1.380649e-23;
};

struct check_list {
    json items = json::array();
    bool pass = true;

    void add(const std::string& name, double expected, double got, double tol)
    {
        const bool ok = std::abs(got - expected) <= tol;
        pass = pass && ok;
        items.push_back({{"name", name}, {"expected", expected}, {"got", got}, {"tol", tol}, {"pass", ok}});
    }
    void add(const std::string& name, bool ok)
    {
        pass = pass && ok;
        items.push_back({{"name", name}, {"pass", ok}});
    }
};

std::set<long> parse_h(const std::string& s)
{
    std::set<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const long v = std::strtol(item.c_str(), &end, 10);
        if (item.empty() || *end != '\0')
            throw input_error("--h-set: expected a comma separated list of integers, got '" + s + "'");
        out.insert(v);
    }
    if (out.empty())
        throw input_error("--h-set: empty list");
    return out;
}

int cmd_famous(const famous_args& a)
{
    const auto start = std::chrono::steady_clock::now();
    root_field field;
    json values = json::object();
    json settings{{"name", a.name}};
    check_list checks;
    auto k_range = [&](long lo, long hi) {
        return a.k_range.empty() ? std::pair<long, long>{lo, hi} : parse_range(a.k_range, "--k-range");
    };
    auto J = [&](int def) {
        if (a.terms < 0)
            throw input_error("--terms: must be >= 1");
        return a.terms == 0 ? def : a.terms;
    };

    if (a.name == "wien") {
        const wien_result w = wien_solve(J(40));
        field.roots.push_back(plain_record(w.x, nullptr));
        field.roots.back().residual = w.residual;
        field.roots.back().series_terms = w.terms;
        field.roots.back().converged = w.converged;
        values = {{"x", w.x}, {"trivial_root", w.trivial}, {"series_value", w.series_value},
                  {"displacement", wien_displacement(a.planck, a.light, a.boltzmann, w.x)}};
        if (a.paper_check)
            checks.add("wien x", 4.9651142317442763037, w.x, 1e-12);
    } else if (a.name == "kepler") {
        if (!(a.e >= 0.0 && a.e < 1.0))
            throw input_error("--e: eccentricity must lie in [0, 1)");
        const kepler_result k = kepler_solve({a.M, a.e}, J(60));
        settings["M"] = a.M;
        settings["e"] = a.e;
        root_record rec = plain_record(k.E);
        rec.residual = k.residual;
        rec.series_terms = k.terms;
        rec.converged = k.converged;
        rec.newton_iterations = k.newton_iterations;
        field.roots.push_back(rec);
        values = {{"E", k.E}, {"series_value", k.series_value}, {"residual", k.residual}};
        if (a.paper_check) {
            const kepler_result jup = kepler_solve({10.0 * pi / 11.8622, 0.04844}, 60);
            checks.add("kepler jupiter E", 2.6704, jup.E, 5e-4);
            checks.add("kepler jupiter residual", 0.0, jup.residual, 1e-12);
        }
    } else if (a.name == "hypersphere") {
        hypersphere_kind kind;
        if (a.kind == "surface")
            kind = hypersphere_kind::surface;
        else if (a.kind == "volume")
            kind = hypersphere_kind::volume;
        else
            throw input_error("--kind: expected surface or volume");
        const hypersphere_result h = hypersphere_max(kind);
        settings["kind"] = a.kind;
        values = {{"root_half", h.root_half},   {"root_gamma", h.root_gamma}, {"seed_half", h.seed_half},
                  {"seed_gamma", h.seed_gamma}, {"true_root", h.true_root},   {"integer_answer", h.integer_answer}};
        field.roots.push_back(plain_record(h.root_half));
        field.roots.push_back(plain_record(h.root_gamma));
        if (a.paper_check) {
            const hypersphere_result s = hypersphere_max(hypersphere_kind::surface);
            const hypersphere_result v = hypersphere_max(hypersphere_kind::volume);
            checks.add("surface bound 1/2", 7.27218, s.root_half, 1e-4);
            checks.add("surface bound e^-gamma", 7.18109, s.root_gamma, 1e-4);
            checks.add("volume bound 1/2", 5.27218, v.root_half, 1e-4);
            checks.add("volume bound e^-gamma", 5.18109, v.root_gamma, 1e-4);
            checks.add("surface integer", s.integer_answer == 7);
            checks.add("volume integer", v.integer_answer == 5);
        }
    } else if (a.name == "lambert") {
        const cplx t = parse_complex(a.t, "--t");
        const auto [k0, k1] = k_range(0, 0);
        zexpz_options opt;
        opt.terms = J(80);
        field = zexpz_solve(t, k0, k1, opt);
        settings["t"] = io::complex_json(t);
        settings["k_range"] = {k0, k1};
    } else if (a.name == "dde") {
        dde_spec sp{parse_complex(a.C, "--C"), parse_complex(a.a, "--a"), parse_complex(a.w, "--w"), a.r, a.nu};
        const rectangle region = parse_region(a.region);
        const auto [k0, k1] = k_range(-5, 5);
        const dde_result d = dde_char_roots(sp, region, k0, k1, J(30));
        field = d.field;
        values = {{"contour_count", d.contour_count}, {"roots_found", static_cast<int>(d.field.roots.size())}};
        settings["region"] = {d.region.re_min, d.region.re_max, d.region.im_min, d.region.im_max};
        settings["k_range"] = {k0, k1};
    } else if (a.name == "selfpower") {
        const cplx m = parse_complex(a.m, "--m"), t = parse_complex(a.t, "--t");
        const auto [k0, k1] = k_range(-1, 1);
        field = selfpower_solve(m, t, k0, k1, parse_h(a.h), J(30));
        settings["m"] = io::complex_json(m);
        settings["t"] = io::complex_json(t);
    } else if (a.name == "powerpq") {
        const cplx p = parse_complex(a.p, "--p"), q = parse_complex(a.q, "--q");
        const cplx m = parse_complex(a.m, "--m"), t = parse_complex(a.t, "--t");
        field = power_pq_solve(p, q, m, t, J(30));
        settings["p"] = io::complex_json(p);
        settings["q"] = io::complex_json(q);
        settings["m"] = io::complex_json(m);
        settings["t"] = io::complex_json(t);
    } else if (a.name == "tanw") {
        const cplx m = parse_complex(a.m, "--m");
        const auto [k0, k1] = k_range(-2, 2);
        field = tan_solve(m, k0, k1, J(30));
        settings["m"] = io::complex_json(m);
        settings["k_range"] = {k0, k1};
    } else {
        throw input_error("unknown famous name '" + a.name + "'");
    }

    print_diagnostics(field);
    json report = io::root_report(field, settings);
    report["values"] = values;
    report["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (a.paper_check) {
        if (checks.items.empty())
            checks.add("no cited constants for " + a.name, true);
        report["paper_check"] = {{"pass", checks.pass}, {"checks", checks.items}};
        std::cerr << "paper-check: " << (checks.pass ? "pass" : "fail") << "\n";
    }
    std::cout << io::canonical(report) << "\n";
    if (a.paper_check && !checks.pass)
        return exit_quality;
    return field.has_unrescued_divergence() ? exit_quality : exit_ok;
}

// ---------------------------------------------------------------------------

struct compare_args {
    std::string input;
    std::string region = "-10:10:-10:10";
    std::string grid = "64:64";
    std::string s_range = "0:0";
    int terms = 30;
    double tol = 1e-12;
    double match_tol = 1e-8;
    bool no_refine = false;
};

int cmd_compare(const compare_args& a)
{
    const equation eq = io::parse_equation(io::load_document(a.input));
    const rectangle region = parse_region(a.region);
    const auto [nx, ny] = parse_grid(a.grid);
    const auto [s_min, s_max] = parse_range(a.s_range, "--s-range");
    if (a.terms < 1)
        throw input_error("--terms: must be >= 1");
    solve_options opt;
    opt.s_min = s_min;
    opt.s_max = s_max;
    opt.terms = a.terms;
    opt.tol = a.tol;
    opt.refine = !a.no_refine;
    const root_field f = solve_all(eq, opt);
    print_diagnostics(f);

    std::vector<cplx> in_region;
    for (const cplx& z : f.values())
        if (region.contains(z))
            in_region.push_back(z);
    const comparison_report grid =
        compare_root_sets(in_region, grid_newton_scan(eq, region, nx, ny), a.match_tol);
    bool clean = grid.clean();

    json report{{"engine", io::root_report(f, {{"s_range", {s_min, s_max}},
                                              {"terms", a.terms},
                                              {"tol", a.tol},
                                              {"refine", !a.no_refine}})},
                {"grid", io::comparison_json(grid)},
                {"region", {region.re_min, region.re_max, region.im_min, region.im_max}},
                {"aberth", nullptr}};
    if (const auto poly = polynomial_oracle_roots(eq)) {
        const comparison_report ab = compare_root_sets(f.values(), *poly, a.match_tol);
        report["aberth"] = io::comparison_json(ab);
        clean = clean && ab.clean();
    }
    report["clean"] = clean;
    std::cout << io::canonical(report) << "\n";
    return clean ? exit_ok : exit_input;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lagrange-Burmann root finder"};
    app.require_subcommand(1);

    solve_args sa;
    auto* solve = app.add_subcommand("solve", "solve an equation document");
    solve->add_option("input", sa.input, "document path or inline JSON")->required();
    solve->add_option("--s-range", sa.s_range, "branch windings A:B");
    solve->add_option("--terms", sa.terms, "series terms J");
    solve->add_option("--tol", sa.tol, "residual tolerance");
    solve->add_option("--radius", sa.radius, "convergence check radius");
    solve->add_option("--format", sa.format)->check(CLI::IsMember({"json", "csv"}));
    solve->add_flag("--quad", sa.quad, "quad precision series");

    famous_args fa;
    auto* famous = app.add_subcommand("famous", "run a named showcase solver");
    famous->add_option("name", fa.name)
        ->required()
        ->check(CLI::IsMember({"lambert", "hypersphere", "kepler", "dde", "selfpower", "powerpq", "tanw", "wien"}));
    famous->add_option("--t", fa.t, "constant term, re or re,im");
    famous->add_option("--k-range", fa.k_range, "branch range A:B");
    famous->add_option("--M", fa.M, "mean anomaly");
    famous->add_option("--e", fa.e, "eccentricity");
    famous->add_option("--kind", fa.kind, "surface or volume");
    famous->add_option("--C", fa.C);
    famous->add_option("--a", fa.a);
    famous->add_option("--w", fa.w);
    famous->add_option("--r", fa.r);
    famous->add_option("--nu", fa.nu);
    famous->add_option("--region", fa.region, "re_min:re_max:im_min:im_max");
    famous->add_option("--m", fa.m);
    famous->add_option("--p", fa.p);
    famous->add_option("--q", fa.q);
    famous->add_option("--h-set", fa.h, "selfpower log windings, comma separated");
    famous->add_option("--terms", fa.terms, "series terms J");
    famous->add_option("--planck", fa.planck);
    famous->add_option("--light", fa.light);
    famous->add_option("--boltzmann", fa.boltzmann);
    famous->add_flag("--paper-check", fa.paper_check, "assert the published constants");

    compare_args ca;
    auto* compare = app.add_subcommand("compare", "compare engine roots with the oracles");
    compare->add_option("input", ca.input, "document path or inline JSON")->required();
    compare->add_option("--region", ca.region, "re_min:re_max:im_min:im_max");
    compare->add_option("--grid", ca.grid, "NX:NY Newton starts");
    compare->add_option("--s-range", ca.s_range, "branch windings A:B");
    compare->add_option("--terms", ca.terms, "series terms J");
    compare->add_option("--tol", ca.tol, "residual tolerance");
    compare->add_option("--match-tol", ca.match_tol, "matching distance");
    compare->add_flag("--no-refine", ca.no_refine, "keep raw series values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (*solve)
            return cmd_solve(sa);
        if (*famous)
            return cmd_famous(fa);
        return cmd_compare(ca);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const solver_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == errc::invalid_argument ? exit_input : exit_quality;
    }
}
