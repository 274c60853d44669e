#ifndef QREES_GEOMETRY_HPP
#define QREES_GEOMETRY_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qrees_algebra.hpp"
#include "saturation.hpp"

namespace qrees {

/// A coordinate hyperplane divisor V(var) and the step that created it
/// (0 for divisors given with the input).
struct DivisorRecord {
    std::string var;
    unsigned created = 0;
    friend bool operator==(const DivisorRecord&, const DivisorRecord&) = default;
};

/// Triangular change of coordinates: the new `var` equals old `var` + shift,
/// so algebras are rewritten by var ↦ var - shift. The shift never involves `var`.
struct CoordinateChange {
    std::string var;
    Polynomial shift;
};

/// An affine chart of the blowup tree.
struct Chart {
    int id = 0;
    RingPtr ring;
    std::optional<int> parent;
    /// Images of the parent's variables, expressed in this chart's coordinates.
    std::vector<Polynomial> substitution;
    std::vector<DivisorRecord> divisors;
    std::vector<CoordinateChange> coordinate_changes;

    std::size_t var_index(const std::string& name) const { return ring->require_index(name); }
    const DivisorRecord* divisor_on(const std::string& var) const {
        for (const auto& d : divisors)
            if (d.var == var) return &d;
        return nullptr;
    }
};

inline Chart root_chart(RingPtr ring, std::vector<DivisorRecord> divisors = {}) {
    Chart c;
    c.ring = std::move(ring);
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        c.ring->require_index(divisors[i].var);
        for (std::size_t j = 0; j < i; ++j)
            require(divisors[i].var != divisors[j].var, "two divisors on variable " + divisors[i].var);
    }
    std::stable_sort(divisors.begin(), divisors.end(),
                     [](const DivisorRecord& a, const DivisorRecord& b) { return a.created < b.created; });
    c.divisors = std::move(divisors);
    return c;
}

/// ℓ_H = min_i ν_H(f_i) / a_i for the coordinate divisor H = V(x_var).
inline Extended<Weight> ell_value(const QReesAlgebra& J, std::size_t var) {
    std::optional<Weight> best;
    for (const auto& g : J.generators()) {
        Weight w = Weight(static_cast<long>(g.poly.divisor_valuation(var).value())) / g.weight;
        if (!best || w < *best) best = w;
    }
    if (!best) return Extended<Weight>::infinity();
    return *best;
}

/// I(H)^{-ℓ}·J: each f_i is divided by x_var^{⌈a_i·ℓ⌉}.
inline QReesAlgebra divide_by_divisor(const QReesAlgebra& J, std::size_t var, const Weight& ell) {
    if (ell.is_zero()) return J;
    require(Extended<Weight>(ell) <= ell_value(J, var),
            "I(H)^" + ell.str() + " does not divide the algebra along " + J.ring()->vars[var]);
    QReesAlgebra out(J.ring());
    for (const auto& g : J.generators())
        out.add(g.poly.divide_by_variable_power(var, static_cast<unsigned>((g.weight * ell).ceil_ul())), g.weight);
    return out;
}

struct NonMonomialPart {
    QReesAlgebra algebra;
    std::vector<Weight> ells;  // one per requested divisor, in order
};

/// E^{-1}J: divides out every listed coordinate divisor to its ℓ_H.
inline NonMonomialPart non_monomial_part(const QReesAlgebra& J, const std::vector<std::size_t>& vars) {
    NonMonomialPart out{J, {}};
    for (auto v : vars) {
        auto ell = ell_value(J, v);
        Weight l = ell.is_infinite() ? Weight(0) : ell.value();
        out.ells.push_back(l);
        out.algebra = divide_by_divisor(out.algebra, v, l);
    }
    return out;
}

struct Blowup {
    Chart child;
    std::vector<std::size_t> center;  // parent variable indices
    std::size_t chart_var;            // index (same in parent and child)
};

/// The chart_var-chart of the blowup along V(center): x_j ↦ x_j·x_c for the
/// other center variables. Parent divisors on other variables keep their
/// creation index; V(x_c) becomes the new exceptional divisor.
inline Blowup blowup_chart(const Chart& parent, const std::vector<std::size_t>& center, std::size_t chart_var,
                           unsigned step_index, int child_id) {
    require(!center.empty(), "blowup center is empty");
    require(std::find(center.begin(), center.end(), chart_var) != center.end(),
            "chart variable is not a center variable");
    Chart child;
    child.id = child_id;
    child.ring = parent.ring;
    child.parent = parent.id;
    for (std::size_t j = 0; j < parent.ring->nvars(); ++j) {
        Polynomial img = Polynomial::variable(child.ring, j);
        if (j != chart_var && std::find(center.begin(), center.end(), j) != center.end())
            img *= Polynomial::variable(child.ring, chart_var);
        child.substitution.push_back(std::move(img));
    }
    const std::string& cv = parent.ring->vars[chart_var];
    for (const auto& d : parent.divisors)
        if (d.var != cv) child.divisors.push_back(d);
    child.divisors.push_back({cv, step_index});
    return {std::move(child), center, chart_var};
}

/// V(center) ⊆ Sing(J).
inline bool center_in_sing(const QReesAlgebra& J, const std::vector<std::size_t>& center) {
    Ideal c = Ideal::of_variables(J.ring(), center);
    Ideal sing = order_locus(J, Weight(1));
    for (const auto& g : sing.generators())
        if (!radical_contains(c, g)) return false;
    return true;
}

/// Controlled transform I(H)^{-1}·J* in the child chart.
inline QReesAlgebra transform(const QReesAlgebra& J, const Blowup& b) {
    if (!center_in_sing(J, b.center)) {
        std::string vars;
        for (auto v : b.center) vars += (vars.empty() ? "" : ",") + J.ring()->vars[v];
        fail(ErrorCode::Precondition, "center V(" + vars + ") is not contained in the singular locus");
    }
    QReesAlgebra total = J.compose(b.child.substitution);
    return divide_by_divisor(total, b.chart_var, Weight(1));
}

/// Coeff_V(J) for V = V(x_var): restriction of Diff(J) to the hyperplane,
/// living in the ring without x_var. Zero images are dropped.
inline QReesAlgebra coefficient_algebra(const QReesAlgebra& J, std::size_t var) {
    RingPtr sub = drop_variable(J.ring(), var);
    return diff_saturate(J).map_polys(sub, [&](const Polynomial& p) { return p.restrict_to_hyperplane(var, sub); });
}

/// Generator-level elimination algebra for the projection forgetting x_var:
/// the generators that do not involve x_var.
inline QReesAlgebra elimination_algebra(const QReesAlgebra& J, std::size_t var) {
    RingPtr sub = drop_variable(J.ring(), var);
    QReesAlgebra out(sub);
    for (const auto& g : J.generators())
        if (!g.poly.involves(var)) out.add(g.poly.restrict_to_hyperplane(var, sub), g.weight);
    return out;
}

/// Rewrites J under the coordinate change var ↦ var - shift.
inline QReesAlgebra apply_coordinate_change(const QReesAlgebra& J, std::size_t var, const Polynomial& shift) {
    std::vector<Polynomial> images;
    for (std::size_t j = 0; j < J.ring()->nvars(); ++j) images.push_back(Polynomial::variable(J.ring(), j));
    images[var] -= shift;
    return J.compose(images);
}

/// A hypersurface of maximal contact V(x_var) reached after var ↦ var - shift.
struct MaximalContact {
    std::size_t var;
    Polynomial shift;  // zero when no change is needed
    Polynomial equation;  // the Diff generator z = c·(x_var + shift)
};

/// Looks for a weight-one generator z of Diff(J) of the form c·x_v + h with c
/// a nonzero constant and h free of x_v. Candidates needing no change come
/// first; a change is never applied to a variable in `frozen` (divisor
/// variables) and variables in `avoid` are never chosen. Characteristic zero only.
inline MaximalContact find_maximal_contact(const QReesAlgebra& J, const std::vector<std::size_t>& frozen = {},
                                           const std::vector<std::size_t>& avoid = {}) {
    auto in = [](const std::vector<std::size_t>& s, std::size_t v) { return std::find(s.begin(), s.end(), v) != s.end(); };
    if (!J.ring()->field.is_rationals())
        fail(ErrorCode::UnsupportedCharacteristic, "maximal contact requires characteristic zero");
    QReesAlgebra D = diff_saturate(J);
    std::optional<MaximalContact> with_change;
    for (const auto& g : D.generators()) {
        if (g.weight != Weight(1)) continue;
        const Polynomial& z = g.poly;
        for (std::size_t v = 0; v < z.nvars(); ++v) {
            if (z.degree_in(v) != 1 || in(avoid, v)) continue;
            Polynomial lin(z.ring()), rest(z.ring());
            for (const auto& [e, c] : z.terms()) {
                if (e[v] == 1) {
                    Exponents f = e;
                    f[v] = 0;
                    lin.add_term(std::move(f), c);
                } else {
                    rest.add_term(e, c);
                }
            }
            if (!lin.is_constant() || lin.is_zero()) continue;
            Polynomial shift = rest.scaled(z.field().inv(lin.constant_term()));
            if (shift.is_zero()) return {v, std::move(shift), z};
            if (in(frozen, v)) continue;
            if (!with_change) with_change = MaximalContact{v, std::move(shift), z};
        }
    }
    if (with_change) return *with_change;
    fail(ErrorCode::ChartSplitRequired, "no chart-wide hypersurface of maximal contact");
}

}  // namespace qrees

#endif
