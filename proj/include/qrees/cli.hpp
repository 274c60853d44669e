#ifndef QREES_CLI_HPP
#define QREES_CLI_HPP

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "problem.hpp"
#include "resolution.hpp"
#include "saturation.hpp"

namespace qrees {

struct CommandOptions {
    bool json = false;
    bool dot = false;
    unsigned nmax = 4;
    Weight cap = Weight(8);
    unsigned max_steps = 50;
    std::string point;      // comma separated field elements
    std::string var;        // hypersurface / projected variable
    std::string center;     // comma separated center variables
    std::string chart_var;
    std::string algebra;    // defaults to the first algebra of the file
    std::string other;      // second algebra for equiv
    std::string poly;       // element for nu, nubar, member
    std::string weight;     // level for member
};

struct CommandResult {
    std::string output;
    int exit_code = 0;
};

inline int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::Parse: return 2;
        case ErrorCode::UnsupportedCharacteristic: return 3;
        case ErrorCode::ChartSplitRequired: return 4;
        case ErrorCode::NotTerminated: return 5;
        case ErrorCode::Precondition: return 6;
    }
    return 1;
}

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"diff",         "sing", "ord", "coeff",  "eliminate", "blowup", "transform",
                                                "nonmonomial", "nu",   "nubar", "member", "equiv",     "resolve"};
    return names;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

inline std::vector<Scalar> parse_point(const Ring& ring, const std::string& text) {
    auto parts = split_list(text);
    if (parts.size() != ring.nvars())
        fail(ErrorCode::Parse, "point needs " + std::to_string(ring.nvars()) + " coordinates");
    std::vector<Scalar> pt;
    for (const auto& p : parts) {
        static const std::regex re(R"(-?\d+(/\d+)?)");
        if (!std::regex_match(p, re)) fail(ErrorCode::Parse, "bad coordinate '" + p + "'");
        Scalar v(p);
        if (v.get_den() == 0) fail(ErrorCode::Parse, "bad coordinate '" + p + "'");
        pt.push_back(ring.field.normalize(v));
    }
    return pt;
}

inline std::size_t need_var(const Ring& ring, const std::string& name, const char* flag) {
    if (name.empty()) fail(ErrorCode::Parse, std::string("missing ") + flag);
    auto v = ring.index_of(name);
    if (!v) fail(ErrorCode::Parse, "unknown variable '" + name + "'");
    return *v;
}

inline ojson algebra_json(const QReesAlgebra& J) {
    ojson gens = ojson::array();
    for (const auto& g : J.generators()) gens.push_back({{"poly", g.poly.str()}, {"weight", g.weight.str()}});
    ojson vars = J.ring()->vars;
    return {{"variables", vars}, {"generators", gens}};
}

inline ojson closed_json(const ClosedSet& S) {
    ojson comps = ojson::array();
    if (!S.is_empty())
        for (const auto& c : S.components()) {
            ojson g = ojson::array();
            for (const auto& p : c.basis()) g.push_back(p.str());
            comps.push_back(g);
        }
    return {{"empty", S.is_empty()}, {"components", comps}};
}

inline ojson fc_json(const InvariantValue& v) {
    ojson levels = ojson::array();
    for (const auto& l : v.levels) levels.push_back(ojson::array({l.omega.str(), l.n}));
    ojson out{{"levels", levels}, {"terminator", terminator_name(v.terminator)}};
    if (v.terminator == Terminator::Monomial)
        out["gamma"] = {{"p", v.gamma.p}, {"s", v.gamma.s.str()}, {"indices", v.gamma.indices}};
    return out;
}

inline ojson trace_json(const ResolveResult& r) {
    ojson steps = ojson::array();
    for (const auto& t : r.trace) {
        ojson sub = ojson::object();
        for (const auto& [v, img] : t.substitution) sub[v] = img;
        ojson changes = ojson::array();
        for (const auto& c : t.changes) changes.push_back({{"var", c.var}, {"shift", c.shift.str()}});
        ojson divs = ojson::array();
        for (const auto& d : t.divisors) divs.push_back({{"var", d.var}, {"created", d.created}, {"ell", d.ell.str()}});
        steps.push_back({{"step", t.step},
                         {"chart", t.chart},
                         {"parent", t.parent ? ojson(*t.parent) : ojson(nullptr)},
                         {"substitution", sub},
                         {"coordinate_changes", changes},
                         {"center", t.center},
                         {"fc", fc_json(t.fc)},
                         {"divisors", divs},
                         {"children", t.children},
                         {"sing", t.fc.terminator == Terminator::NonSingular ? "empty" : "nonempty"}});
    }
    return {{"status", r.status == ResolveStatus::Resolved ? "resolved" : "not_terminated"}, {"steps", steps}};
}

inline std::string trace_text(const ResolveResult& r) {
    std::ostringstream os;
    for (const auto& t : r.trace) {
        os << "step " << t.step << " chart " << t.chart;
        if (t.parent) os << " (parent " << *t.parent << ")";
        os << ":";
        for (const auto& c : t.changes) os << " change " << c.var << " := " << c.var << " + (" << c.shift.str() << ");";
        if (t.fc.terminator == Terminator::NonSingular) {
            os << " sing: empty\n";
            continue;
        }
        os << " fc " << t.fc.str() << ", center (";
        for (std::size_t i = 0; i < t.center.size(); ++i) os << (i ? ", " : "") << t.center[i];
        os << ")";
        if (t.children.empty()) os << ", not blown up";
        else {
            os << ", children";
            for (auto c : t.children) os << " " << c;
        }
        os << "\n";
    }
    os << "status: " << (r.status == ResolveStatus::Resolved ? "resolved" : "not terminated") << "\n";
    return os.str();
}

inline std::string trace_dot(const ResolveResult& r) {
    std::ostringstream os;
    os << "digraph resolution {\n  node [shape=box];\n";
    for (const auto& t : r.trace) {
        os << "  c" << t.chart << " [label=\"chart " << t.chart << "\\n"
           << (t.fc.terminator == Terminator::NonSingular ? std::string("sing: empty") : t.fc.str()) << "\"];\n";
    }
    for (const auto& t : r.trace) {
        if (!t.parent) continue;
        std::string label;
        for (const auto& d : t.divisors)
            if (d.created == t.step) label = d.var;
        os << "  c" << *t.parent << " -> c" << t.chart << " [label=\"" << label << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

inline std::vector<std::size_t> center_arg(const Ring& ring, const std::string& text) {
    if (text.empty()) fail(ErrorCode::Parse, "missing --center");
    std::vector<std::size_t> out;
    for (const auto& v : split_list(text)) out.push_back(need_var(ring, v, "--center"));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::string with_json(bool json, const ojson& j, const std::string& text) {
    return json ? j.dump(2) + "\n" : text;
}

}  // namespace detail

/// Runs one command against a parsed problem. Errors are thrown as qrees::Error.
inline CommandResult run_command(const std::string& command, const ProblemFile& pf, const CommandOptions& opt) {
    using detail::ojson;
    const RingPtr& R = pf.ring;
    const QReesAlgebra& J = pf.algebra(opt.algebra);
    auto algebra_out = [&](const QReesAlgebra& A) {
        return CommandResult{detail::with_json(opt.json, detail::algebra_json(A), A.str())};
    };

    if (command == "diff") return algebra_out(diff_saturate(J));
    if (command == "sing") {
        ClosedSet S = sing_locus(J);
        return {detail::with_json(opt.json, detail::closed_json(S), S.str() + "\n")};
    }
    if (command == "ord") {
        if (opt.point.empty()) fail(ErrorCode::Parse, "missing --point");
        auto o = ord_at_point(J, detail::parse_point(*R, opt.point));
        return {detail::with_json(opt.json, ojson{{"ord", o.str()}}, o.str() + "\n")};
    }
    if (command == "coeff") return algebra_out(coefficient_algebra(J, detail::need_var(*R, opt.var, "--var")));
    if (command == "eliminate")
        return algebra_out(elimination_algebra(diff_saturate(J), detail::need_var(*R, opt.var, "--var")));
    if (command == "blowup" || command == "transform") {
        auto center = detail::center_arg(*R, opt.center);
        std::size_t cv = detail::need_var(*R, opt.chart_var, "--chart-var");
        Chart parent = pf.chart();
        unsigned step = 1;
        for (const auto& d : parent.divisors) step = std::max(step, d.created + 1);
        Blowup b = blowup_chart(parent, center, cv, step, 1);
        if (command == "transform") return algebra_out(transform(J, b));
        std::string text;
        ojson sub = ojson::object(), divs = ojson::array();
        for (std::size_t j = 0; j < R->nvars(); ++j) {
            text += R->vars[j] + " -> " + b.child.substitution[j].str() + "\n";
            sub[R->vars[j]] = b.child.substitution[j].str();
        }
        for (const auto& d : b.child.divisors) {
            text += "divisor " + d.var + " created " + std::to_string(d.created) + "\n";
            divs.push_back({{"var", d.var}, {"created", d.created}});
        }
        return {detail::with_json(opt.json, ojson{{"substitution", sub}, {"divisors", divs}}, text)};
    }
    if (command == "nonmonomial") {
        std::vector<std::size_t> vars;
        for (const auto& d : pf.divisors) vars.push_back(R->require_index(d.var));
        NonMonomialPart nm = non_monomial_part(J, vars);
        std::string text = nm.algebra.str();
        ojson ells = ojson::array();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            text += "ell " + pf.divisors[i].var + " = " + nm.ells[i].str() + "\n";
            ells.push_back({{"var", pf.divisors[i].var}, {"ell", nm.ells[i].str()}});
        }
        ojson j = detail::algebra_json(nm.algebra);
        j["ells"] = ells;
        return {detail::with_json(opt.json, j, text)};
    }
    if (command == "nu" || command == "nubar" || command == "member") {
        if (opt.poly.empty()) fail(ErrorCode::Parse, "missing --poly");
        Polynomial f = parse_polynomial(R, opt.poly);
        if (command == "nu") {
            auto v = nu(J, f, opt.cap);
            return {detail::with_json(opt.json, ojson{{"nu", v.str()}}, v.str() + "\n")};
        }
        if (command == "nubar") {
            auto v = nu_bar_estimate(J, f, opt.nmax, opt.cap);
            return {detail::with_json(opt.json, ojson{{"nubar_lower_bound", v.str()}}, v.str() + "\n")};
        }
        if (opt.weight.empty()) fail(ErrorCode::Parse, "missing --weight");
        auto v = is_integral_member(J, f, parse_weight(opt.weight), opt.nmax, opt.cap);
        return {detail::with_json(opt.json, ojson{{"verdict", v.str()}, {"n", v.n}}, v.str() + "\n")};
    }
    if (command == "equiv") {
        if (opt.other.empty()) fail(ErrorCode::Parse, "missing --other");
        auto e = equivalence_check(J, pf.algebra(opt.other), opt.nmax, opt.cap);
        return {detail::with_json(opt.json, ojson{{"equivalence", equivalence_name(e)}},
                                  std::string(equivalence_name(e)) + "\n")};
    }
    if (command == "resolve") {
        ResolveResult r = resolve(pf.chart(), J, opt.max_steps);
        std::string out = opt.dot ? detail::trace_dot(r) : opt.json ? detail::trace_json(r).dump(2) + "\n" : detail::trace_text(r);
        return {out, r.status == ResolveStatus::Resolved ? 0 : exit_code_for(ErrorCode::NotTerminated)};
    }
    fail(ErrorCode::Parse, "unknown command '" + command + "'");
}

}  // namespace qrees

#endif
