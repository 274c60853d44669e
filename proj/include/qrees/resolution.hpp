#ifndef QREES_RESOLUTION_HPP
#define QREES_RESOLUTION_HPP

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "invariant.hpp"

namespace qrees {

/// Lower-dimensional problem opened at some level: the contact variable,
/// the old divisors adjoined to the algebra, and the algebra on the contact
/// hypersurface. Carried to children as long as its hypersurface survives.
struct LevelMemo {
    std::string contact;
    std::vector<std::string> adjoined;
    QReesAlgebra lower;
};

/// One chart of a running resolution together with the data the invariant
/// needs: the current transform and the maxima seen along the chart's path.
struct ResolutionState {
    Chart chart;
    QReesAlgebra algebra;
    unsigned step = 0;                    // blowups performed along the path
    std::vector<InvariantValue> history;  // max value at steps 0..step-1
    std::vector<LevelMemo> memo;          // transforms of the parent's lower problems
};

/// Maximum of the invariant over a chart and where it is attained. The locus
/// is expressed after applying `changes` (in order) to the chart.
struct MaxLocus {
    InvariantValue value;
    ClosedSet locus;
    std::vector<CoordinateChange> changes;
    std::vector<LevelMemo> stack;  // lower problems of the maximal branch
};

namespace detail {

template <class Fn>
ClosedSet map_closed(const ClosedSet& S, const RingPtr& target, Fn&& fn) {
    std::vector<Ideal> comps;
    for (const auto& c : S.components()) {
        std::vector<Polynomial> g;
        for (const auto& p : c.generators()) g.push_back(fn(p));
        comps.emplace_back(target, std::move(g));
    }
    return ClosedSet(std::move(comps));
}

inline ClosedSet coordinate_subspace(const RingPtr& r, const std::vector<std::size_t>& vars) {
    return ClosedSet(Ideal::of_variables(r, vars));
}

struct LevelInput {
    QReesAlgebra algebra;                 // J^(k)
    std::vector<DivisorRecord> divisors;  // E^(k)
    unsigned start = 0;                   // step at which this level's problem began
    std::vector<Level> prefix;            // levels already fixed above
    ClosedSet within;                     // points under consideration
};

struct Branch {
    InvariantValue value;
    ClosedSet locus;
    std::vector<CoordinateChange> changes;
    std::vector<LevelMemo> stack;
};

struct Context {
    unsigned step;
    const std::vector<InvariantValue>* history;
    const std::vector<LevelMemo>* memo;
    std::vector<std::string> divisor_vars;  // every divisor variable of the chart
};

/// Non-monomial part without rounding: f·T^a becomes
/// (f^m / Π x_H^{m·a·ℓ_H})·T^{m·a} with m clearing every denominator, an
/// integrally equivalent presentation. Its order at ξ is
/// ord(J)(ξ) - Σ_{H ∋ ξ} ℓ_H.
inline NonMonomialPart exact_non_monomial_part(const QReesAlgebra& J, const std::vector<std::size_t>& vars) {
    NonMonomialPart out{QReesAlgebra(J.ring()), {}};
    for (auto v : vars) {
        auto e = ell_value(J, v);
        out.ells.push_back(e.is_infinite() ? Weight(0) : e.value());
    }
    for (const auto& g : J.generators()) {
        mpz_class m = 1;
        for (const auto& l : out.ells) {
            Weight al = g.weight * l;
            mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), al.denominator().get_mpz_t());
        }
        Polynomial p = g.poly.pow(static_cast<unsigned>(m.get_ui()));
        Weight mw{mpq_class(m)};
        for (std::size_t h = 0; h < vars.size(); ++h)
            p = p.divide_by_variable_power(vars[h], static_cast<unsigned>((mw * g.weight * out.ells[h]).numerator().get_ui()));
        out.algebra.add(std::move(p), mw * g.weight);
    }
    return out;
}

/// Smallest j in [start, step] such that each recorded maximum in [j, step)
/// continues `prefix` with a level accepted by `pred`.
template <class Pred>
unsigned first_matching(const Context& ctx, unsigned start, const std::vector<Level>& prefix, Pred&& pred) {
    unsigned j = ctx.step;
    const std::size_t k = prefix.size();
    while (j > start) {
        const auto& h = (*ctx.history)[j - 1];
        if (h.terminator == Terminator::NonSingular || h.levels.size() <= k) break;
        if (!std::equal(prefix.begin(), prefix.end(), h.levels.begin())) break;
        if (!pred(h.levels[k])) break;
        --j;
    }
    return j;
}

inline bool same_changes(const std::vector<CoordinateChange>& a, const std::vector<CoordinateChange>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].var != b[i].var || a[i].shift.str() != b[i].shift.str()) return false;
    return true;
}

/// Keeps the larger value; equal values merge their loci.
inline void absorb(std::optional<Branch>& best, Branch b) {
    if (!best || best->value < b.value) {
        best = std::move(b);
        return;
    }
    if (b.value < best->value) return;
    if (!same_changes(best->changes, b.changes))
        fail(ErrorCode::ChartSplitRequired, "maximal value reached under different coordinate changes");
    best->locus = best->locus.unite(b.locus);
}

inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

struct Monomial {
    Gamma gamma;
    std::vector<std::size_t> vars;
};

/// Best divisor subset of the monomial case meeting X: fewest divisors with
/// exponent sum ≥ 1, then the largest sum, then the oldest creation indices.
inline std::optional<Monomial> best_monomial(const std::vector<DivisorRecord>& exc, const std::vector<Weight>& ells,
                                             const RingPtr& ring, const ClosedSet& X) {
    std::optional<Monomial> best;
    for (std::size_t size = 1; size <= exc.size(); ++size) {
        for (const auto& S : subsets_of_size(exc.size(), size)) {
            Weight sum(0);
            for (auto s : S) sum = sum + ells[s];
            if (sum < Weight(1)) continue;
            Monomial m;
            m.gamma.p = static_cast<unsigned>(size);
            m.gamma.s = sum;
            for (auto s : S) {
                m.gamma.indices.push_back(exc[s].created);
                m.vars.push_back(ring->require_index(exc[s].var));
            }
            std::sort(m.gamma.indices.begin(), m.gamma.indices.end());
            std::sort(m.vars.begin(), m.vars.end());
            if (X.intersect(coordinate_subspace(ring, m.vars)).is_empty()) continue;
            if (!best || best->gamma < m.gamma || (best->gamma == m.gamma && m.vars < best->vars)) best = std::move(m);
        }
        if (best) break;
    }
    return best;
}

inline Branch level(const Context& ctx, const LevelInput& in) {
    const QReesAlgebra& J = in.algebra;
    const RingPtr& R = J.ring();
    ClosedSet Z = sing_locus(J).intersect(in.within);
    if (Z.is_empty()) {
        if (in.prefix.empty()) return {InvariantValue::nonsingular(), ClosedSet::empty(R), {}, {}};
        fail(ErrorCode::Precondition, "empty singular locus below a nonempty stratum");
    }

    std::vector<DivisorRecord> exc;
    std::vector<std::size_t> exc_vars;
    for (const auto& d : in.divisors)
        if (d.created > in.start) {
            exc.push_back(d);
            exc_vars.push_back(R->require_index(d.var));
        }
    NonMonomialPart nm = exact_non_monomial_part(J, exc_vars);
    OrderStratum top = max_order_stratum(nm.algebra, Z);
    const Weight omega = top.omega;

    unsigned j0 = first_matching(ctx, in.start, in.prefix, [&](const Level& l) { return l.omega == omega; });
    std::vector<DivisorRecord> old, fresh;
    for (const auto& d : in.divisors) (d.created <= j0 ? old : fresh).push_back(d);

    // Largest set of old divisors meeting the ω-stratum.
    std::vector<std::pair<std::vector<std::size_t>, ClosedSet>> choices;
    std::size_t n = old.size();
    for (;; --n) {
        for (const auto& A : subsets_of_size(old.size(), n)) {
            std::vector<std::size_t> vars;
            for (auto a : A) vars.push_back(R->require_index(old[a].var));
            ClosedSet X = top.stratum.intersect(coordinate_subspace(R, vars));
            if (!X.is_empty()) choices.emplace_back(std::move(vars), std::move(X));
        }
        if (!choices.empty() || n == 0) break;
    }
    std::vector<Level> prefix = in.prefix;
    prefix.push_back({omega, static_cast<unsigned>(n)});

    if (omega.is_zero()) {
        // Monomial case: the divisor data lives in Γ and the center is V(S).
        prefix.back().n = 0;
        auto m = best_monomial(exc, nm.ells, R, top.stratum);
        if (!m) fail(ErrorCode::Precondition, "monomial case without a divisor subset of order one");
        return {{prefix, Terminator::Monomial, m->gamma}, top.stratum.intersect(coordinate_subspace(R, m->vars)), {}, {}};
    }
    std::optional<Branch> best;
    if (R->nvars() == 1) {
        Branch b{{prefix, Terminator::Point, {}}, ClosedSet::empty(R), {}, {}};
        for (const auto& [A, X] : choices) b.locus = b.locus.unite(X);
        return b;
    }

    std::vector<std::size_t> frozen, avoid;
    for (const auto& name : ctx.divisor_vars)
        if (auto v = R->index_of(name)) frozen.push_back(*v);
    for (const auto& d : fresh) avoid.push_back(R->require_index(d.var));
    unsigned next_start =
        first_matching(ctx, in.start, in.prefix, [&](const Level& l) { return l == prefix.back(); });

    // The lower problem opened at an earlier step is reused while the levels
    // above it keep their values.
    const LevelMemo* memo = nullptr;
    const std::size_t k = in.prefix.size();
    if (ctx.memo && ctx.memo->size() > k && next_start < ctx.step) memo = &(*ctx.memo)[k];

    for (const auto& [A, X0] : choices) {
        std::vector<std::string> adjoined;
        for (auto a : A) adjoined.push_back(R->vars[a]);
        ClosedSet X = X0;
        std::vector<CoordinateChange> changes;
        std::size_t v;
        std::optional<QReesAlgebra> lowered;
        if (memo && memo->adjoined == adjoined) {
            v = R->require_index(memo->contact);
            lowered = memo->lower;
        } else {
            QReesAlgebra T = scale(nm.algebra, Weight(1) / omega);
            if (ctx.step > in.start) T = odot(T, J);
            for (auto a : A) T.add(Polynomial::variable(R, a), Weight(1));

            MaximalContact mc = find_maximal_contact(T, frozen, avoid);
            v = mc.var;
            if (!mc.shift.is_zero()) {
                T = apply_coordinate_change(T, v, mc.shift);
                std::vector<Polynomial> images;
                for (std::size_t j = 0; j < R->nvars(); ++j) images.push_back(Polynomial::variable(R, j));
                images[v] -= mc.shift;
                X = map_closed(X, R, [&](const Polynomial& p) { return p.compose(images); });
                changes.push_back({R->vars[v], mc.shift});
            }
            QReesAlgebra C = coefficient_algebra(T, v);
            if (C.is_zero()) {
                absorb(best, {{prefix, Terminator::ZeroCoeff, {}}, sing_locus(T).intersect(X), changes, {}});
                continue;
            }
            lowered = std::move(C);
        }
        const QReesAlgebra& C = *lowered;
        RingPtr sub = C.ring();
        LevelInput lower{C, fresh, next_start, prefix,
                         map_closed(X, sub, [&](const Polynomial& p) { return p.restrict_to_hyperplane(v, sub); })};
        Branch b = level(ctx, lower);
        QReesAlgebra kept = C;
        for (const auto& c : b.changes) kept = apply_coordinate_change(kept, sub->require_index(c.var), c.shift);
        changes.insert(changes.end(), b.changes.begin(), b.changes.end());
        ClosedSet locus = map_closed(b.locus, R, [&](const Polynomial& p) { return p.change_ring(R); })
                              .intersect(coordinate_subspace(R, {v}));
        std::vector<LevelMemo> stack{{R->vars[v], adjoined, std::move(kept)}};
        stack.insert(stack.end(), std::make_move_iterator(b.stack.begin()), std::make_move_iterator(b.stack.end()));
        absorb(best, {std::move(b.value), std::move(locus), std::move(changes), std::move(stack)});
    }
    return *best;
}

inline Branch run_levels(const ResolutionState& state, const ClosedSet& within) {
    if (!state.algebra.ring()->field.is_rationals())
        fail(ErrorCode::UnsupportedCharacteristic, "the resolution invariant requires characteristic zero");
    require(state.history.size() == state.step, "history length must equal the step index");
    require(!state.algebra.is_zero(), "cannot resolve the zero algebra");
    Context ctx{state.step, &state.history, &state.memo, {}};
    for (const auto& d : state.chart.divisors) ctx.divisor_vars.push_back(d.var);
    return level(ctx, {state.algebra, state.chart.divisors, 0, {}, within});
}

}  // namespace detail

/// Maximum of the invariant over the chart, computed stratum by stratum.
inline MaxLocus max_locus_fc(const ResolutionState& state) {
    auto b = detail::run_levels(state, ClosedSet::whole(state.algebra.ring()));
    return {std::move(b.value), std::move(b.locus), std::move(b.changes), std::move(b.stack)};
}

/// Value of the invariant at a rational point of the chart.
inline InvariantValue fc_at_point(const ResolutionState& state, std::span<const Scalar> point) {
    const RingPtr& R = state.algebra.ring();
    require(point.size() == R->nvars(), "point has the wrong number of coordinates");
    std::vector<Polynomial> g;
    for (std::size_t i = 0; i < point.size(); ++i)
        g.push_back(Polynomial::variable(R, i) - Polynomial::constant(R, point[i]));
    return detail::run_levels(state, ClosedSet(Ideal(R, std::move(g)))).value;
}

/// Monomial case as a standalone rule: divisors (creation index, ℓ) through
/// the stratum, returning Γ and the positions of the chosen divisors.
inline std::pair<Gamma, std::vector<std::size_t>> monomial_center(const std::vector<DivisorRecord>& divisors,
                                                                  const std::vector<Weight>& ells) {
    require(divisors.size() == ells.size(), "one exponent per divisor");
    std::vector<std::string> names;
    for (const auto& d : divisors) names.push_back(d.var);
    RingPtr r = make_ring(Field::rationals(), names);
    auto m = detail::best_monomial(divisors, ells, r, ClosedSet::whole(r));
    if (!m) fail(ErrorCode::Precondition, "no divisor subset reaches exponent sum one");
    return {m->gamma, m->vars};
}

/// Variables of a coordinate subspace equal to `locus`; anything else needs a
/// chart split.
inline std::vector<std::size_t> center_variables(const ClosedSet& locus) {
    require(!locus.is_empty(), "empty center");
    const RingPtr& R = locus.ring();
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < R->nvars(); ++v) {
        Polynomial x = Polynomial::variable(R, v);
        bool all = std::all_of(locus.components().begin(), locus.components().end(),
                               [&](const Ideal& c) { return radical_contains(c, x); });
        if (all) vars.push_back(v);
    }
    ClosedSet sub = detail::coordinate_subspace(R, vars);
    if (vars.empty() || !locus.same_as(sub))
        fail(ErrorCode::ChartSplitRequired, "center " + locus.str() + " is not a coordinate subspace of the chart");
    return vars;
}

struct TraceDivisor {
    std::string var;
    unsigned created;
    Extended<Weight> ell;
};

struct TraceStep {
    unsigned step = 0;
    int chart = 0;
    std::optional<int> parent;
    std::vector<std::pair<std::string, std::string>> substitution;  // parent variable ↦ image
    std::vector<CoordinateChange> changes;
    std::vector<std::string> center;  // empty when nothing is blown up
    InvariantValue fc;
    std::vector<TraceDivisor> divisors;
    std::vector<int> children;
};

enum class ResolveStatus { Resolved, NotTerminated };

struct ResolveResult {
    ResolveStatus status = ResolveStatus::Resolved;
    std::vector<TraceStep> trace;        // ordered by chart id
    std::vector<ResolutionState> leaves;  // final charts, by id
};

namespace detail {

/// Controlled transforms of the lower problems in a child chart. A problem
/// whose contact hypersurface has no strict transform there, and everything
/// below it, is dropped.
inline std::vector<LevelMemo> transform_memo(const std::vector<LevelMemo>& stack, const Blowup& b) {
    const RingPtr& R = b.child.ring;
    const std::string& cv = R->vars[b.chart_var];
    std::vector<LevelMemo> out;
    for (const auto& m : stack) {
        if (m.contact == cv) break;
        const RingPtr& L = m.lower.ring();
        auto c = L->index_of(cv);
        if (!c) break;
        std::vector<std::size_t> center;
        std::vector<Polynomial> images;
        for (std::size_t j = 0; j < L->nvars(); ++j) {
            Polynomial img = Polynomial::variable(L, j);
            bool in_center = std::any_of(b.center.begin(), b.center.end(),
                                         [&](std::size_t v) { return R->vars[v] == L->vars[j]; });
            if (in_center) center.push_back(j);
            if (in_center && j != *c) img *= Polynomial::variable(L, *c);
            images.push_back(std::move(img));
        }
        if (!center_in_sing(m.lower, center)) break;
        out.push_back({m.contact, m.adjoined, divide_by_divisor(m.lower.compose(images), *c, Weight(1))});
    }
    return out;
}

struct ChartOutcome {
    ResolutionState state;  // after coordinate changes
    MaxLocus max;
    std::vector<std::size_t> center;
    std::vector<ResolutionState> children;
};

inline ChartOutcome process_chart(ResolutionState s, unsigned max_steps) {
    MaxLocus m = max_locus_fc(s);
    for (const auto& c : m.changes) {
        s.algebra = apply_coordinate_change(s.algebra, s.chart.var_index(c.var), c.shift);
        s.chart.coordinate_changes.push_back(c);
    }
    ChartOutcome out{std::move(s), std::move(m), {}, {}};
    if (out.max.value.terminator == Terminator::NonSingular) return out;
    out.center = center_variables(out.max.locus);
    if (out.state.step >= max_steps) return out;
    for (auto c : out.center) {
        Blowup b = blowup_chart(out.state.chart, out.center, c, out.state.step + 1, 0);
        ResolutionState child{b.child, transform(out.state.algebra, b), out.state.step + 1, out.state.history,
                              transform_memo(out.max.stack, b)};
        child.history.push_back(out.max.value);
        out.children.push_back(std::move(child));
    }
    return out;
}

}  // namespace detail

/// Blows up the maximal stratum of the invariant in every chart until all
/// leaves are nonsingular or a path reaches `max_steps` blowups. Sibling
/// charts are processed concurrently; ids are assigned breadth first.
inline ResolveResult resolve(Chart root, QReesAlgebra algebra, unsigned max_steps) {
    if (!algebra.ring()->field.is_rationals())
        fail(ErrorCode::UnsupportedCharacteristic, "resolution requires characteristic zero");
    require(same_ring(root.ring, algebra.ring()), "algebra and chart rings differ");
    root.id = 0;
    root.parent.reset();
    ResolveResult result;
    std::vector<ResolutionState> layer{{std::move(root), std::move(algebra), 0, {}}};
    int next_id = 1;
    while (!layer.empty()) {
        std::vector<std::future<detail::ChartOutcome>> jobs;
        for (auto& s : layer)
            jobs.push_back(std::async(std::launch::async, detail::process_chart, std::move(s), max_steps));
        std::vector<detail::ChartOutcome> outcomes;
        for (auto& j : jobs) outcomes.push_back(j.get());

        std::vector<ResolutionState> next;
        for (auto& o : outcomes) {
            const Chart& ch = o.state.chart;
            TraceStep t;
            t.step = o.state.step;
            t.chart = ch.id;
            t.parent = ch.parent;
            if (ch.parent) {
                for (std::size_t j = 0; j < ch.substitution.size(); ++j)
                    t.substitution.emplace_back(ch.ring->vars[j], ch.substitution[j].str());
            }
            t.changes = ch.coordinate_changes;
            for (auto c : o.center) t.center.push_back(ch.ring->vars[c]);
            t.fc = o.max.value;
            for (const auto& d : ch.divisors)
                t.divisors.push_back({d.var, d.created, ell_value(o.state.algebra, ch.var_index(d.var))});
            if (o.max.value.terminator != Terminator::NonSingular && o.children.empty())
                result.status = ResolveStatus::NotTerminated;
            for (auto& c : o.children) {
                c.chart.id = next_id++;
                t.children.push_back(c.chart.id);
                next.push_back(std::move(c));
            }
            if (o.children.empty()) result.leaves.push_back(std::move(o.state));
            result.trace.push_back(std::move(t));
        }
        layer = std::move(next);
    }
    std::sort(result.leaves.begin(), result.leaves.end(),
              [](const ResolutionState& a, const ResolutionState& b) { return a.chart.id < b.chart.id; });
    return result;
}

}  // namespace qrees

#endif
