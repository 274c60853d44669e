// Shared helpers and independent oracles for the test suites.
#ifndef QREES_TEST_SUPPORT_HPP
#define QREES_TEST_SUPPORT_HPP

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qrees/cli.hpp"

namespace qt {

using namespace qrees;

inline RingPtr Q(std::vector<std::string> vars) { return make_ring(Field::rationals(), std::move(vars)); }
inline RingPtr Fp(std::uint64_t p, std::vector<std::string> vars) { return make_ring(Field::prime(p), std::move(vars)); }

inline Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }
inline Weight W(const std::string& s) { return s == "0" ? Weight(0) : parse_weight(s); }

inline QReesAlgebra A(const RingPtr& r, std::vector<std::pair<std::string, std::string>> gens) {
    QReesAlgebra out(r);
    for (const auto& [f, w] : gens) out.add(P(r, f), W(w));
    return out;
}

inline Ideal I(const RingPtr& r, std::vector<std::string> gens) {
    std::vector<Polynomial> g;
    for (const auto& s : gens) g.push_back(P(r, s));
    return Ideal(r, std::move(g));
}

inline bool same_ideal(const Ideal& a, const Ideal& b) { return a.subset_of(b) && b.subset_of(a); }

inline std::vector<Scalar> pt(std::vector<long> xs) {
    std::vector<Scalar> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ProblemFile problem(const std::string& name) {
    return parse_problem(read_file(std::string(QREES_PROBLEMS_DIR) + "/" + name));
}

// ---- oracles -------------------------------------------------------------

/// Order of f at `point` by expanding f(point + h) through substitution and
/// reading the lowest total degree in h.
inline Extended<unsigned> taylor_order(const Polynomial& f, const std::vector<Scalar>& point) {
    if (f.is_zero()) return Extended<unsigned>::infinity();
    const RingPtr& R = f.ring();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < R->nvars(); ++i)
        images.push_back(Polynomial::variable(R, i) + Polynomial::constant(R, point[i]));
    Polynomial g = f.compose(images);
    unsigned best = ~0u;
    for (const auto& [e, c] : g.terms()) best = std::min(best, total_degree(e));
    return best;
}

/// min_i ord(f_i)/a_i at a point, straight from the definition.
inline Extended<Weight> ord_oracle(const QReesAlgebra& J, const std::vector<Scalar>& point) {
    std::optional<Weight> best;
    for (const auto& g : J.generators()) {
        auto o = taylor_order(g.poly, point);
        if (o.is_infinite()) continue;
        Weight w = Weight(static_cast<long>(o.value())) / g.weight;
        if (!best || w < *best) best = w;
    }
    if (!best) return Extended<Weight>::infinity();
    return *best;
}

/// Coefficient of h^alpha in f(x + h), computed in an enlarged ring.
inline Polynomial hasse_oracle(const Polynomial& f, const std::vector<unsigned>& alpha) {
    const RingPtr& R = f.ring();
    std::vector<std::string> vars = R->vars;
    for (const auto& v : R->vars) vars.push_back("h_" + v);
    RingPtr big = make_ring(R->field, vars);
    const std::size_t n = R->nvars();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(big, i) + Polynomial::variable(big, n + i));
    for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(big, n + i));
    Polynomial g = f.change_ring(big).compose(images);
    Polynomial out(R);
    for (const auto& [e, c] : g.terms()) {
        bool match = true;
        for (std::size_t i = 0; i < n; ++i) match = match && e[n + i] == alpha[i];
        if (!match) continue;
        Exponents base(e.begin(), e.begin() + static_cast<long>(n));
        out.add_term(base, c);
    }
    return out;
}

/// ν_H(f) as the least k with ∂^k/∂x^k f nonzero on x = 0 (Hasse derivative
/// in the divisor variable, restricted to the hyperplane).
inline Extended<unsigned> valuation_oracle(const Polynomial& f, std::size_t var) {
    if (f.is_zero()) return Extended<unsigned>::infinity();
    const RingPtr& R = f.ring();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < R->nvars(); ++i)
        images.push_back(i == var ? Polynomial(R) : Polynomial::variable(R, i));
    for (unsigned k = 0;; ++k) {
        std::vector<unsigned> alpha(R->nvars(), 0);
        alpha[var] = k;
        if (!hasse_oracle(f, alpha).compose(images).is_zero()) return k;
    }
}

/// Level ideal J_a by enumerating every multiset of generators whose weight
/// sum reaches a, up to the size after which adding factors only shrinks the
/// ideal.
inline Ideal level_oracle(const QReesAlgebra& J, const Weight& a) {
    const RingPtr& R = J.ring();
    if (a.is_zero()) return Ideal(R, {Polynomial::one(R)});
    const auto& gens = J.generators();
    std::vector<Polynomial> out;
    std::vector<unsigned> counts(gens.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, Weight sum, Polynomial prod) -> void {
        if (sum >= a) {
            out.push_back(prod);
            return;  // supersets only add multiples
        }
        if (i == gens.size()) return;
        self(self, i + 1, sum, prod);
        Weight s = sum;
        Polynomial p = prod;
        while (s < a) {
            s = s + gens[i].weight;
            p = p * gens[i].poly;
            self(self, i + 1, s, p);
        }
    };
    rec(rec, 0, Weight(0), Polynomial::one(R));
    return Ideal(R, std::move(out));
}

/// Linear algebra membership: f = Σ q_i g_i with deg q_i ≤ bound, decided by
/// Gaussian elimination over the prime field or ℚ.
inline bool linear_membership(const Polynomial& f, const std::vector<Polynomial>& gens, unsigned bound) {
    const RingPtr& R = f.ring();
    const Field& k = R->field;
    std::vector<Polynomial> columns;
    for (unsigned d = 0; d <= bound; ++d)
        for (const auto& e : multi_indices_of_degree(R->nvars(), d))
            for (const auto& g : gens) columns.push_back(Polynomial::monomial(R, e, Scalar(1)) * g);
    std::map<Exponents, std::size_t> rows;
    auto row_of = [&](const Exponents& e) { return rows.emplace(e, rows.size()).first->second; };
    for (const auto& c : columns)
        for (const auto& [e, _] : c.terms()) row_of(e);
    for (const auto& [e, _] : f.terms()) row_of(e);
    const std::size_t m = rows.size(), n = columns.size();
    std::vector<std::vector<Scalar>> M(m, std::vector<Scalar>(n + 1, Scalar(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [e, c] : columns[j].terms()) M[rows[e]][j] = c;
    for (const auto& [e, c] : f.terms()) M[rows[e]][n] = c;
    std::size_t r = 0;
    for (std::size_t j = 0; j < n && r < m; ++j) {
        std::size_t piv = r;
        while (piv < m && M[piv][j] == 0) ++piv;
        if (piv == m) continue;
        std::swap(M[piv], M[r]);
        Scalar inv = k.inv(M[r][j]);
        for (auto& x : M[r]) x = k.mul(x, inv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || M[i][j] == 0) continue;
            Scalar factor = M[i][j];
            for (std::size_t t = j; t <= n; ++t) M[i][t] = k.sub(M[i][t], k.mul(factor, M[r][t]));
        }
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (M[i][n] != 0) return false;
    return true;
}

// ---- corpus --------------------------------------------------------------

struct CorpusEntry {
    std::string name;
    QReesAlgebra algebra;
};

inline std::vector<CorpusEntry> corpus() {
    auto r2 = Q({"x", "y"});
    auto r3 = Q({"x", "y", "z"});
    auto f2 = Fp(2, {"x", "y", "z"});
    auto f3 = Fp(3, {"x", "y"});
    return {
        {"cusp", A(r2, {{"x^2+y^3", "2"}})},
        {"umbrella", A(r3, {{"x^2-y^2*z", "2"}})},
        {"a4", A(r2, {{"x^2+y^5", "2"}})},
        {"monomial", A(r2, {{"x^2*y^3", "1"}})},
        {"mixed3", A(r3, {{"x^2", "2"}, {"y^3-z^2", "3/2"}})},
        {"fractional", A(r2, {{"x", "3/2"}, {"y", "1"}})},
        {"double_line", A(r2, {{"x^2", "1"}})},
        {"cross", A(r3, {{"x^2+y^2*z^2", "2"}})},
        {"coords", A(r3, {{"x*y*z", "2"}})},
        {"two_gens", A(r2, {{"x^2", "1"}, {"y^3", "1"}})},
        {"char2", A(f2, {{"x^2+y^2*z", "2"}})},
        {"char2_lines", A(f2, {{"y^2*z", "1"}})},
        {"char3", A(f3, {{"x^3+y^2", "2"}})},
    };
}

/// Rational points of the grid {-2..2}^n.
inline std::vector<std::vector<Scalar>> grid_points(const Ring& r) {
    std::vector<std::vector<Scalar>> out{{}};
    for (std::size_t i = 0; i < r.nvars(); ++i) {
        std::vector<std::vector<Scalar>> next;
        for (const auto& p : out)
            for (long c = -2; c <= 2; ++c) {
                auto q = p;
                q.push_back(r.field.normalize(Scalar(c)));
                next.push_back(q);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace qt

#endif
