#ifndef QREES_IDEAL_HPP
#define QREES_IDEAL_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace qrees {

/// Monomial orders used by the Gröbner engine. `Elimination` compares the
/// exponents of the eliminated block first (grevlex on the block), then breaks
/// ties with grevlex on the remaining variables.
class MonomialOrder {
public:
    enum class Kind { Grevlex, Lex, Elimination };

    static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, {}); }
    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
    static MonomialOrder elimination(std::vector<bool> block) { return MonomialOrder(Kind::Elimination, std::move(block)); }

    Kind kind() const noexcept { return kind_; }

    int compare(const Exponents& a, const Exponents& b) const {
        switch (kind_) {
            case Kind::Grevlex: return grevlex_cmp(a, b);
            case Kind::Lex:
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
                return 0;
            case Kind::Elimination: {
                if (int c = block_cmp(a, b, true)) return c;
                return block_cmp(a, b, false);
            }
        }
        return 0;
    }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    MonomialOrder(Kind k, std::vector<bool> block) : kind_(k), block_(std::move(block)) {}

    int block_cmp(const Exponents& a, const Exponents& b, bool in_block) const {
        unsigned da = 0, db = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (block_[i] == in_block) {
                da += a[i];
                db += b[i];
            }
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (block_[i] == in_block && a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        return 0;
    }

    Kind kind_;
    std::vector<bool> block_;
};

namespace detail {

struct OrderDesc {
    const MonomialOrder* order;
    bool operator()(const Exponents& a, const Exponents& b) const { return order->compare(a, b) > 0; }
};

using OrderedTerms = std::map<Exponents, Scalar, OrderDesc>;

struct GPoly {
    OrderedTerms terms;
    unsigned sugar = 0;

    const Exponents& lm() const { return terms.begin()->first; }
    const Scalar& lc() const { return terms.begin()->second; }
    bool zero() const { return terms.empty(); }
};

inline bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponents lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

inline Exponents diff(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

/// p -= c · x^shift · g
inline void sub_multiple(OrderedTerms& p, const Field& k, const Scalar& c, const Exponents& shift, const OrderedTerms& g) {
    Exponents e(shift.size());
    for (const auto& [ge, gc] : g) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ge[i] + shift[i];
        Scalar v = k.mul(c, gc);
        auto [it, inserted] = p.try_emplace(e, k.neg(v));
        if (!inserted) {
            it->second = k.sub(it->second, v);
            if (it->second == 0) p.erase(it);
        }
    }
}

inline void make_monic(GPoly& p, const Field& k) {
    if (p.zero() || p.lc() == 1) return;
    Scalar inv = k.inv(p.lc());
    for (auto& [e, c] : p.terms) c = k.mul(c, inv);
}

/// Full reduction of p by the listed basis elements.
inline OrderedTerms normal_form(OrderedTerms p, const std::vector<const GPoly*>& basis, const Field& k,
                                const MonomialOrder& order) {
    OrderedTerms rem(OrderDesc{&order});
    while (!p.empty()) {
        auto it = p.begin();
        const GPoly* div = nullptr;
        for (const GPoly* g : basis)
            if (divides(g->lm(), it->first)) {
                div = g;
                break;
            }
        if (!div) {
            rem.insert(p.extract(it));
            continue;
        }
        Scalar c = k.mul(it->second, k.inv(div->lc()));
        Exponents shift = diff(it->first, div->lm());
        sub_multiple(p, k, c, shift, div->terms);
    }
    return rem;
}

inline OrderedTerms to_ordered(const Polynomial& f, const MonomialOrder& order) {
    OrderedTerms t(OrderDesc{&order});
    for (const auto& [e, c] : f.terms()) t.emplace(e, c);
    return t;
}

inline Polynomial from_ordered(const RingPtr& ring, const OrderedTerms& t) {
    Polynomial p(ring);
    for (const auto& [e, c] : t) p.add_term(e, c);
    return p;
}

struct CriticalPair {
    std::size_t i, j;
    Exponents lcm;
    unsigned sugar;
};

}  // namespace detail

/// Reduced Gröbner basis (monic, sorted by ascending leading monomial).
/// Buchberger's algorithm with sugar-degree pair selection and the
/// Gebauer–Möller criteria. Output is deterministic for fixed input and order.
inline std::vector<Polynomial> groebner(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                        const MonomialOrder& order) {
    using namespace detail;
    const Field& k = ring->field;
    std::vector<GPoly> polys;
    std::vector<bool> active;
    std::vector<CriticalPair> pairs;

    auto active_list = [&] {
        std::vector<const GPoly*> out;
        for (std::size_t i = 0; i < polys.size(); ++i)
            if (active[i]) out.push_back(&polys[i]);
        return out;
    };

    auto pair_sugar = [&](std::size_t i, std::size_t j, const Exponents& l) {
        unsigned si = polys[i].sugar + total_degree(l) - total_degree(polys[i].lm());
        unsigned sj = polys[j].sugar + total_degree(l) - total_degree(polys[j].lm());
        return std::max(si, sj);
    };

    // Gebauer–Möller update for a freshly inserted element h.
    auto update = [&](std::size_t h) {
        const Exponents& lh = polys[h].lm();
        std::vector<std::size_t> cands;
        for (std::size_t g = 0; g < h; ++g)
            if (active[g]) cands.push_back(g);

        std::vector<CriticalPair> C, D;
        for (std::size_t g : cands) C.push_back({g, h, lcm(polys[g].lm(), lh), 0});
        while (!C.empty()) {
            CriticalPair p = C.front();
            C.erase(C.begin());
            bool keep = coprime(polys[p.i].lm(), lh);
            if (!keep) {
                keep = true;
                for (const auto* set : {&C, &D})
                    for (const auto& q : *set)
                        if (divides(q.lcm, p.lcm)) keep = false;
            }
            if (keep) D.push_back(p);
        }
        std::vector<CriticalPair> E;
        for (auto& p : D)
            if (!coprime(polys[p.i].lm(), lh)) {
                p.sugar = pair_sugar(p.i, p.j, p.lcm);
                E.push_back(p);
            }
        std::vector<CriticalPair> kept;
        for (const auto& p : pairs) {
            bool drop = divides(lh, p.lcm) && lcm(polys[p.i].lm(), lh) != p.lcm && lcm(lh, polys[p.j].lm()) != p.lcm;
            if (!drop) kept.push_back(p);
        }
        for (auto& p : E) kept.push_back(std::move(p));
        pairs = std::move(kept);
        for (std::size_t g : cands)
            if (divides(lh, polys[g].lm())) active[g] = false;
        active[h] = true;
    };

    auto insert = [&](GPoly p) {
        make_monic(p, k);
        polys.push_back(std::move(p));
        active.push_back(false);
        update(polys.size() - 1);
    };

    // Seed with the input generators, each reduced by what is already present.
    for (const auto& f : gens) {
        require(same_ring(f.ring(), ring), "generator ring mismatch");
        if (f.is_zero()) continue;
        GPoly p{to_ordered(f, order), f.total_degree()};
        p.terms = normal_form(std::move(p.terms), active_list(), k, order);
        if (p.zero()) continue;
        insert(std::move(p));
    }

    while (!pairs.empty()) {
        auto best = std::min_element(pairs.begin(), pairs.end(), [&](const CriticalPair& a, const CriticalPair& b) {
            if (a.sugar != b.sugar) return a.sugar < b.sugar;
            if (int c = order.compare(a.lcm, b.lcm)) return c < 0;
            return std::pair(a.i, a.j) < std::pair(b.i, b.j);
        });
        CriticalPair cp = *best;
        pairs.erase(best);

        const GPoly& f = polys[cp.i];
        const GPoly& g = polys[cp.j];
        OrderedTerms s(OrderDesc{&order});
        sub_multiple(s, k, k.neg(k.inv(f.lc())), diff(cp.lcm, f.lm()), f.terms);
        sub_multiple(s, k, k.inv(g.lc()), diff(cp.lcm, g.lm()), g.terms);
        GPoly h{normal_form(std::move(s), active_list(), k, order), cp.sugar};
        if (h.zero()) continue;
        insert(std::move(h));
    }

    // Minimalize and inter-reduce.
    std::vector<const GPoly*> minimal;
    for (const GPoly* g : active_list()) {
        bool redundant = false;
        for (const GPoly* o : minimal)
            if (divides(o->lm(), g->lm())) redundant = true;
        if (redundant) continue;
        std::erase_if(minimal, [&](const GPoly* o) { return divides(g->lm(), o->lm()); });
        minimal.push_back(g);
    }
    std::vector<GPoly> reduced;
    for (const GPoly* g : minimal) {
        std::vector<const GPoly*> others;
        for (const GPoly* o : minimal)
            if (o != g) others.push_back(o);
        OrderedTerms tail(OrderDesc{&order});
        auto it = g->terms.begin();
        OrderedTerms rest(std::next(it), g->terms.end(), OrderDesc{&order});
        OrderedTerms red = normal_form(std::move(rest), others, k, order);
        red.emplace(it->first, it->second);
        GPoly r{std::move(red), g->sugar};
        make_monic(r, k);
        reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const GPoly& a, const GPoly& b) { return order.compare(a.lm(), b.lm()) < 0; });
    std::vector<Polynomial> out;
    for (const auto& g : reduced) out.push_back(from_ordered(ring, g.terms));
    return out;
}

/// Remainder of f on division by a Gröbner basis under `order`.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& order) {
    using namespace detail;
    std::vector<GPoly> gs;
    gs.reserve(basis.size());
    for (const auto& b : basis) gs.push_back(GPoly{to_ordered(b, order), 0});
    std::vector<const GPoly*> ptrs;
    for (const auto& g : gs) ptrs.push_back(&g);
    return from_ordered(f.ring(), normal_form(to_ordered(f, order), ptrs, f.field(), order));
}

/// Leading monomial of f under `order`.
inline Exponents leading_monomial(const Polynomial& f, const MonomialOrder& order) {
    require(!f.is_zero(), "leading monomial of zero");
    const Exponents* best = nullptr;
    for (const auto& [e, c] : f.terms())
        if (!best || order.compare(e, *best) > 0) best = &e;
    return *best;
}

/// A finitely generated ideal with a lazily computed, cached grevlex basis.
class Ideal {
public:
    explicit Ideal(RingPtr ring, std::vector<Polynomial> gens = {}) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
        for (auto& g : gens) {
            require(same_ring(g.ring(), ring_), "ideal generator ring mismatch");
            if (!g.is_zero()) gens_.push_back(std::move(g));
        }
    }
    static Ideal unit(const RingPtr& ring) { return Ideal(ring, {Polynomial::one(ring)}); }
    static Ideal zero(const RingPtr& ring) { return Ideal(ring); }
    static Ideal of_variables(const RingPtr& ring, const std::vector<std::size_t>& vars) {
        std::vector<Polynomial> g;
        for (auto v : vars) g.push_back(Polynomial::variable(ring, v));
        return Ideal(ring, std::move(g));
    }

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Polynomial>& generators() const noexcept { return gens_; }

    /// Reduced grevlex Gröbner basis, computed once.
    const std::vector<Polynomial>& basis() const {
        std::call_once(cache_->once, [&] { cache_->basis = qrees::groebner(ring_, gens_, MonomialOrder::grevlex()); });
        return cache_->basis;
    }
    std::vector<Polynomial> basis(const MonomialOrder& order) const {
        if (order == MonomialOrder::grevlex()) return basis();
        return qrees::groebner(ring_, gens_, order);
    }

    bool is_unit() const {
        const auto& b = basis();
        return b.size() == 1 && b.front().is_constant() && !b.front().is_zero();
    }
    bool is_zero() const { return gens_.empty(); }

    bool contains(const Polynomial& f) const {
        require(same_ring(f.ring(), ring_), "membership query ring mismatch");
        if (f.is_zero()) return true;
        return normal_form(f, basis(), MonomialOrder::grevlex()).is_zero();
    }

    Ideal operator+(const Ideal& o) const {
        require(same_ring(ring_, o.ring_), "ideal sum ring mismatch");
        auto g = gens_;
        g.insert(g.end(), o.gens_.begin(), o.gens_.end());
        return Ideal(ring_, std::move(g));
    }
    Ideal operator*(const Ideal& o) const {
        require(same_ring(ring_, o.ring_), "ideal product ring mismatch");
        std::vector<Polynomial> g;
        for (const auto& a : gens_)
            for (const auto& b : o.gens_) g.push_back(a * b);
        return Ideal(ring_, std::move(g));
    }

    /// I ⊆ J as ideals.
    bool subset_of(const Ideal& o) const {
        return std::all_of(gens_.begin(), gens_.end(), [&](const Polynomial& g) { return o.contains(g); });
    }

    Ideal change_ring(const RingPtr& target) const {
        std::vector<Polynomial> g;
        for (const auto& p : gens_) g.push_back(p.change_ring(target));
        return Ideal(target, std::move(g));
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].str();
        return s + ")";
    }

private:
    struct Cache {
        std::once_flag once;
        std::vector<Polynomial> basis;
    };
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_;
};

inline bool contains(const Ideal& I, const Polynomial& f) { return I.contains(f); }

/// f vanishes on V(I) over the algebraic closure: 1 ∈ I + (1 - t·f) in R[t].
inline bool radical_contains(const Ideal& I, const Polynomial& f) {
    require(same_ring(f.ring(), I.ring()), "radical membership ring mismatch");
    if (f.is_zero()) return true;
    auto vars = I.ring()->vars;
    std::string t = "_t";
    while (I.ring()->index_of(t)) t += "_";
    vars.push_back(t);
    RingPtr ext = make_ring(I.ring()->field, std::move(vars));
    std::vector<Polynomial> g;
    for (const auto& p : I.generators()) g.push_back(p.change_ring(ext));
    g.push_back(Polynomial::one(ext) - Polynomial::variable(ext, ext->nvars() - 1) * f.change_ring(ext));
    return Ideal(ext, std::move(g)).is_unit();
}

/// I ∩ k[variables not in `vars`], returned in the same ring.
inline Ideal eliminate(const Ideal& I, const std::vector<std::size_t>& vars) {
    std::vector<bool> block(I.ring()->nvars(), false);
    for (auto v : vars) {
        require(v < block.size(), "elimination variable out of range");
        block[v] = true;
    }
    std::vector<Polynomial> kept;
    for (auto& b : I.basis(MonomialOrder::elimination(block))) {
        bool free = std::none_of(vars.begin(), vars.end(), [&](std::size_t v) { return b.involves(v); });
        if (free) kept.push_back(std::move(b));
    }
    return Ideal(I.ring(), std::move(kept));
}

/// A finite union of zero sets V(I_1) ∪ … ∪ V(I_k) over the algebraic closure.
class ClosedSet {
public:
    explicit ClosedSet(std::vector<Ideal> comps) {
        require(!comps.empty(), "closed set needs at least one component");
        RingPtr r = comps.front().ring();
        for (auto& c : comps)
            if (!c.is_unit()) components_.push_back(std::move(c));
        if (components_.empty()) components_.push_back(Ideal::unit(r));
    }
    explicit ClosedSet(Ideal I) : ClosedSet(std::vector<Ideal>{std::move(I)}) {}
    static ClosedSet empty(const RingPtr& r) { return ClosedSet(Ideal::unit(r)); }
    static ClosedSet whole(const RingPtr& r) { return ClosedSet(Ideal::zero(r)); }

    const std::vector<Ideal>& components() const noexcept { return components_; }
    const RingPtr& ring() const { return components_.front().ring(); }

    bool is_empty() const {
        return std::all_of(components_.begin(), components_.end(), [](const Ideal& c) { return c.is_unit(); });
    }

    /// Ideal whose zero set is the whole union (product of the components).
    Ideal product_ideal() const {
        Ideal p = components_.front();
        for (std::size_t i = 1; i < components_.size(); ++i) p = p * components_[i];
        return p;
    }

    /// this ⊆ other as sets.
    bool subset_of(const ClosedSet& other) const {
        if (is_empty()) return true;
        Ideal big = other.product_ideal();
        for (const auto& c : components_) {
            if (c.is_unit()) continue;
            for (const auto& g : big.generators())
                if (!radical_contains(c, g)) return false;
        }
        return true;
    }
    bool same_as(const ClosedSet& other) const { return subset_of(other) && other.subset_of(*this); }

    ClosedSet intersect(const ClosedSet& o) const {
        std::vector<Ideal> out;
        for (const auto& a : components_)
            for (const auto& b : o.components_) out.push_back(a + b);
        return ClosedSet(std::move(out));
    }
    ClosedSet unite(const ClosedSet& o) const {
        if (is_empty()) return o;
        if (o.is_empty()) return *this;
        auto out = components_;
        out.insert(out.end(), o.components_.begin(), o.components_.end());
        return ClosedSet(std::move(out));
    }

    bool contains_point(std::span<const Scalar> point) const {
        for (const auto& c : components_) {
            if (c.is_unit()) continue;
            bool all = std::all_of(c.generators().begin(), c.generators().end(),
                                   [&](const Polynomial& g) { return g.evaluate(point) == 0; });
            if (all) return true;
        }
        return false;
    }

    std::string str() const {
        if (is_empty()) return "empty";
        std::string s;
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (i) s += " u ";
            s += "V" + Ideal(components_[i].ring(), components_[i].basis()).str();
        }
        return s;
    }

private:
    std::vector<Ideal> components_;
};

inline bool is_empty(const ClosedSet& S) { return S.is_empty(); }

}  // namespace qrees

#endif
