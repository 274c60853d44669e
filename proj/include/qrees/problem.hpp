#ifndef QREES_PROBLEM_HPP
#define QREES_PROBLEM_HPP

#include <cctype>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace qrees {

/// A parsed problem file: one chart, its divisors, and named algebras in
/// declaration order.
struct ProblemFile {
    RingPtr ring;
    std::vector<DivisorRecord> divisors;
    std::vector<std::pair<std::string, QReesAlgebra>> algebras;

    const QReesAlgebra& algebra(const std::string& name = "") const {
        require(!algebras.empty(), "problem declares no algebra");
        if (name.empty()) return algebras.front().second;
        for (const auto& [n, a] : algebras)
            if (n == name) return a;
        fail(ErrorCode::Precondition, "no algebra named '" + name + "'");
    }
    Chart chart() const { return root_chart(ring, divisors); }
};

/// Parses "n" or "n/d" into a positive weight.
inline Weight parse_weight(const std::string& text) {
    static const std::regex re(R"(\s*(\d+)(?:\s*/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) fail(ErrorCode::Parse, "malformed weight '" + text + "'");
    mpz_class num(m[1].str()), den(m[2].matched ? m[2].str() : "1");
    if (den == 0) fail(ErrorCode::Parse, "weight denominator is zero");
    Weight w{mpq_class(num, den)};
    if (w.is_zero()) fail(ErrorCode::Parse, "weights must be positive");
    return w;
}

namespace detail {

inline std::vector<std::string> split_words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

}  // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
    ProblemFile pf;
    std::optional<Field> field;
    std::optional<std::size_t> current;  // index of the algebra receiving gen lines
    std::istringstream in(text);
    std::string raw;
    unsigned lineno = 0;

    auto at = [&](const std::string& msg) { fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg); };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        auto words = detail::split_words(line);
        if (words.empty()) continue;
        const std::string& kw = words[0];
        try {
            if (kw == "field") {
                if (field) at("field declared twice");
                if (words.size() == 2 && words[1] == "Q") {
                    field = Field::rationals();
                } else if (words.size() == 3 && words[1] == "F") {
                    if (!std::all_of(words[2].begin(), words[2].end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                        at("characteristic must be a number");
                    field = Field::prime(std::stoull(words[2]));
                } else {
                    at("expected 'field Q' or 'field F <p>'");
                }
            } else if (kw == "chart") {
                if (!field) at("chart before field");
                if (pf.ring) at("chart declared twice");
                std::vector<std::string> vars(words.begin() + 1, words.end());
                if (vars.empty()) at("chart needs at least one variable");
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    if (!detail::is_identifier(vars[i])) at("bad variable name '" + vars[i] + "'");
                    for (std::size_t j = 0; j < i; ++j)
                        if (vars[i] == vars[j]) at("variable '" + vars[i] + "' declared twice");
                }
                pf.ring = make_ring(*field, std::move(vars));
            } else if (kw == "algebra") {
                if (!pf.ring) at("algebra before chart");
                if (words.size() != 2 || !detail::is_identifier(words[1])) at("expected 'algebra <name>'");
                for (const auto& [n, a] : pf.algebras)
                    if (n == words[1]) at("algebra '" + n + "' declared twice");
                pf.algebras.emplace_back(words[1], QReesAlgebra(pf.ring));
                current = pf.algebras.size() - 1;
            } else if (kw == "gen") {
                if (!current) at("gen outside an algebra block");
                std::string body = line.substr(line.find("gen") + 3);
                auto colon = body.rfind(':');
                if (colon == std::string::npos) at("expected 'gen <poly> : <weight>'");
                Polynomial f = parse_polynomial(pf.ring, body.substr(0, colon));
                Weight w = parse_weight(body.substr(colon + 1));
                if (f.is_zero()) at("generator polynomial is zero");
                pf.algebras[*current].second.add(std::move(f), w);
            } else if (kw == "divisor") {
                if (!pf.ring) at("divisor before chart");
                if (words.size() != 4 || words[2] != "created") at("expected 'divisor <var> created <index>'");
                if (!pf.ring->index_of(words[1])) at("unknown variable '" + words[1] + "'");
                if (!std::all_of(words[3].begin(), words[3].end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                    at("creation index must be a natural number");
                for (const auto& d : pf.divisors)
                    if (d.var == words[1]) at("two divisors on variable '" + words[1] + "'");
                pf.divisors.push_back({words[1], static_cast<unsigned>(std::stoul(words[3]))});
            } else {
                at("unknown directive '" + kw + "'");
            }
        } catch (const Error& e) {
            if (std::string(e.what()).rfind("line ", 0) == 0) throw;
            at(e.what());
        }
    }
    if (!pf.ring) fail(ErrorCode::Parse, "missing chart declaration");
    return pf;
}

/// Text form accepted by parse_problem.
inline std::string print_problem(const ProblemFile& pf) {
    std::string s = "field " + pf.ring->field.name() + "\nchart";
    for (const auto& v : pf.ring->vars) s += " " + v;
    s += "\n";
    for (const auto& d : pf.divisors) s += "divisor " + d.var + " created " + std::to_string(d.created) + "\n";
    for (const auto& [n, a] : pf.algebras) s += "algebra " + n + "\n" + a.str();
    return s;
}

}  // namespace qrees

#endif
