#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbroots/engine.hpp"
#include "lbroots/equation.hpp"
#include "lbroots/oracle.hpp"

namespace lbroots::io {

using json = nlohmann::json;

class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Equation documents

namespace detail {

inline cplx read_complex(const json& j, const std::string& where)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw input_error(where + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace detail

inline equation parse_equation(const json& doc)
{
    if (!doc.is_object())
        throw input_error("document: expected an object");
    if (!doc.contains("terms") || !doc["terms"].is_array())
        throw input_error("terms: required array");
    if (!doc.contains("constant"))
        throw input_error("constant: required [re, im]");
    std::vector<term> terms;
    for (std::size_t i = 0; i < doc["terms"].size(); ++i) {
        const json& t = doc["terms"][i];
        const std::string where = "terms[" + std::to_string(i) + "]";
        if (!t.is_object())
            throw input_error(where + ": expected an object");
        if (!t.contains("coef"))
            throw input_error(where + ".coef: required");
        if (!t.contains("kind") || !t["kind"].is_string())
            throw input_error(where + ".kind: required string");
        const cplx coef = detail::read_complex(t["coef"], where + ".coef");
        const std::string kind = t["kind"].get<std::string>();
        const bool has_r = t.contains("r");
        const bool has_tau = t.contains("tau");
        if (has_r != (kind == "power"))
            throw input_error(where + ".r: " + (has_r ? "only allowed for kind=power" : "required for kind=power"));
        const bool needs_tau = kind == "expscaled" || kind == "linexp";
        if (has_tau != needs_tau)
            throw input_error(where + ".tau: " + (has_tau ? "only allowed for kind=expscaled or linexp" : "required for kind=" + kind));
        try {
            if (kind == "power")
                terms.push_back({coef, term_function::power(detail::read_complex(t["r"], where + ".r"))});
            else if (kind == "exp")
                terms.push_back({coef, term_function::exp()});
            else if (kind == "log")
                terms.push_back({coef, term_function::log()});
            else if (kind == "sin")
                terms.push_back({coef, term_function::sin()});
            else if (kind == "cos")
                terms.push_back({coef, term_function::cos()});
            else if (kind == "selfpower")
                terms.push_back({coef, term_function::selfpower()});
            else if (kind == "expscaled")
                terms.push_back({coef, term_function::expscaled(detail::read_complex(t["tau"], where + ".tau"))});
            else if (kind == "linexp")
                terms.push_back({coef, term_function::linexp(detail::read_complex(t["tau"], where + ".tau"))});
            else
                throw input_error(where + ".kind: unknown kind '" + kind + "'");
        } catch (const solver_error& e) {
            throw input_error(where + ": " + e.what());
        }
    }
    const cplx constant = detail::read_complex(doc["constant"], "constant");
    try {
        return equation(std::move(terms), constant);
    } catch (const solver_error& e) {
        throw input_error(std::string("equation: ") + e.what());
    }
}

inline json parse_json_text(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(origin + ": " + e.what());
    }
}

// A path, or inline JSON when the argument starts with '{'.
inline json load_document(const std::string& arg)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{')
        return parse_json_text(arg, "inline document");
    std::ifstream in(arg);
    if (!in)
        throw input_error("cannot open '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), arg);
}

inline json equation_document(const equation& eq)
{
    json terms = json::array();
    for (const auto& t : eq.terms()) {
        json o{{"coef", {t.coef.real(), t.coef.imag()}}};
        const cplx p = t.fn.parameter();
        switch (t.fn.kind()) {
        case term_kind::power: o["kind"] = "power"; o["r"] = {p.real(), p.imag()}; break;
        case term_kind::exp: o["kind"] = "exp"; break;
        case term_kind::log: o["kind"] = "log"; break;
        case term_kind::sin: o["kind"] = "sin"; break;
        case term_kind::cos: o["kind"] = "cos"; break;
        case term_kind::selfpower: o["kind"] = "selfpower"; break;
        case term_kind::expscaled: o["kind"] = "expscaled"; o["tau"] = {p.real(), p.imag()}; break;
        case term_kind::linexp: o["kind"] = "linexp"; o["tau"] = {p.real(), p.imag()}; break;
        }
        terms.push_back(o);
    }
    return {{"terms", terms}, {"constant", {eq.constant().real(), eq.constant().imag()}}};
}

// ---------------------------------------------------------------------------
// Canonical serialization: sorted keys, %.17g floats, no whitespace.

inline std::string format_number(double x)
{
    if (!std::isfinite(x))
        return "null";
    if (x == 0.0)
        return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_canonical(const json& j, std::string& out)
{
    switch (j.type()) {
    case json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ',';
            first = false;
            out += json(it.key()).dump();
            out += ':';
            write_canonical(it.value(), out);
        }
        out += '}';
        break;
    }
    case json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                out += ',';
            write_canonical(j[i], out);
        }
        out += ']';
        break;
    }
    case json::value_t::number_float: out += format_number(j.get<double>()); break;
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::string:
    case json::value_t::boolean:
    case json::value_t::null:
    default: out += j.dump(); break;
    }
}

inline std::string canonical(const json& j)
{
    std::string out;
    write_canonical(j, out);
    return out;
}

// ---------------------------------------------------------------------------
// Reports

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json root_json(const root_record& r)
{
    json sources = json::array();
    for (const auto& b : r.sources)
        sources.push_back({{"k", b.k}, {"q", b.q}, {"s", b.s}, {"sheet", b.sheet}});
    return {{"z", complex_json(r.z)},
            {"k", r.branch.k},
            {"q", r.branch.q},
            {"s", r.branch.s},
            {"sheet", r.branch.sheet},
            {"residual", r.residual},
            {"series_terms", r.series_terms},
            {"refined", r.refined},
            {"converged", r.converged},
            {"multiplicity", r.multiplicity},
            {"sources", sources}};
}

inline json root_report(const root_field& f, const json& settings)
{
    json roots = json::array();
    for (const auto& r : f.roots)
        roots.push_back(root_json(r));
    json diags = json::array();
    for (const auto& d : f.diagnostics)
        diags.push_back(to_string(d));
    return {{"roots", roots}, {"diagnostics", diags}, {"settings", settings}};
}

inline std::string csv_header()
{
    return "z_re,z_im,k,q,s,residual,series_terms,refined,converged,sheet,multiplicity";
}

inline std::string root_csv(const root_field& f)
{
    std::string out = csv_header() + "\n";
    for (const auto& r : f.roots) {
        out += format_number(r.z.real()) + "," + format_number(r.z.imag()) + "," + std::to_string(r.branch.k) + "," +
               std::to_string(r.branch.q) + "," + std::to_string(r.branch.s) + "," + format_number(r.residual) + "," +
               std::to_string(r.series_terms) + "," + (r.refined ? "true" : "false") + "," +
               (r.converged ? "true" : "false") + "," + std::to_string(r.branch.sheet) + "," +
               std::to_string(r.multiplicity) + "\n";
    }
    return out;
}

inline json comparison_json(const comparison_report& rep)
{
    json matched = json::array();
    for (const auto& m : rep.matched)
        matched.push_back({{"engine", complex_json(m.engine)}, {"oracle", complex_json(m.oracle)}, {"distance", m.distance}});
    json eo = json::array(), oo = json::array();
    for (const cplx& z : rep.engine_only)
        eo.push_back(complex_json(z));
    for (const cplx& z : rep.oracle_only)
        oo.push_back(complex_json(z));
    return {{"matched", matched}, {"engine_only", eo}, {"oracle_only", oo}, {"max_distance", rep.max_distance}, {"tol", rep.tol}};
}

} // namespace lbroots::io
