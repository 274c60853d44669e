#ifndef QREES_QREES_ALGEBRA_HPP
#define QREES_QREES_ALGEBRA_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ideal.hpp"
#include "polynomial.hpp"

namespace qrees {

/// One weighted generator f·T^a.
struct Generator {
    Polynomial poly;
    Weight weight;

    std::string str() const {
        std::string p = poly.str();
        if (poly.size() > 1) p = "(" + p + ")";
        return p + " : " + weight.str();
    }
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// A ℚ-Rees algebra presented by finitely many weighted generators. The
/// algebra denoted is the smallest graded family {J_a} with J_0 = R,
/// J_a·J_b ⊆ J_{a+b} and J_b ⊆ J_a for a ≤ b containing every f_i·T^{a_i}.
/// Duplicated generators are kept as given.
class QReesAlgebra {
public:
    explicit QReesAlgebra(RingPtr ring, std::vector<Generator> gens = {}) : ring_(std::move(ring)) {
        for (auto& g : gens) add(std::move(g.poly), g.weight);
    }

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Generator>& generators() const noexcept { return gens_; }
    bool is_zero() const noexcept { return gens_.empty(); }
    std::size_t size() const noexcept { return gens_.size(); }

    void add(Polynomial f, Weight a) {
        require(same_ring(f.ring(), ring_), "generator ring mismatch");
        require(!f.is_zero(), "generator polynomial must be nonzero");
        require(a > Weight(0), "generator weight must be positive");
        gens_.push_back({std::move(f), std::move(a)});
    }

    /// Least common multiple of the weight denominators (1 for the zero algebra).
    mpz_class denominator() const {
        mpz_class n = 1;
        for (const auto& g : gens_) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), g.weight.denominator().get_mpz_t());
        return n;
    }

    Weight min_weight() const {
        require(!gens_.empty(), "zero algebra has no weights");
        Weight m = gens_.front().weight;
        for (const auto& g : gens_) m = std::min(m, g.weight);
        return m;
    }

    /// Applies `fn` to every generator polynomial, dropping zero images.
    template <class Fn>
    QReesAlgebra map_polys(const RingPtr& target, Fn&& fn) const {
        QReesAlgebra out(target);
        for (const auto& g : gens_) {
            Polynomial p = fn(g.poly);
            if (!p.is_zero()) out.add(std::move(p), g.weight);
        }
        return out;
    }

    QReesAlgebra compose(std::span<const Polynomial> images) const {
        RingPtr target = images.empty() ? ring_ : images.front().ring();
        return map_polys(target, [&](const Polynomial& p) { return p.compose(images); });
    }

    std::string str() const {
        std::string s;
        for (const auto& g : gens_) s += "gen " + g.str() + "\n";
        return s;
    }

    friend bool operator==(const QReesAlgebra& a, const QReesAlgebra& b) {
        return same_ring(a.ring_, b.ring_) && a.gens_ == b.gens_;
    }

private:
    RingPtr ring_;
    std::vector<Generator> gens_;
};

/// J_a: generated by the products f_{i1}⋯f_{il} over minimal index multisets
/// whose weight sum reaches a (dropping any factor falls below a).
inline Ideal level_ideal(const QReesAlgebra& J, const Weight& a) {
    const RingPtr& ring = J.ring();
    if (a.is_zero()) return Ideal::unit(ring);
    if (J.is_zero()) return Ideal::zero(ring);

    const auto& gens = J.generators();
    std::vector<Polynomial> products;
    std::vector<std::size_t> stack;
    auto push_unique = [&](Polynomial p) {
        if (std::find(products.begin(), products.end(), p) == products.end()) products.push_back(std::move(p));
    };
    auto rec = [&](auto&& self, std::size_t from, const Weight& sum) -> void {
        for (std::size_t i = from; i < gens.size(); ++i) {
            Weight s = sum + gens[i].weight;
            stack.push_back(i);
            if (s >= a) {
                Weight lightest = gens[stack.front()].weight;
                for (auto k : stack) lightest = std::min(lightest, gens[k].weight);
                if (s - lightest < a) {
                    Polynomial prod = Polynomial::one(ring);
                    for (auto k : stack) prod *= gens[k].poly;
                    push_unique(std::move(prod));
                }
            } else {
                self(self, i, s);
            }
            stack.pop_back();
        }
    };
    rec(rec, 0, Weight(0));
    return Ideal(ring, std::move(products));
}

/// J1 ⊙ J2: generated by the union of both generator lists.
inline QReesAlgebra odot(const QReesAlgebra& J1, const QReesAlgebra& J2) {
    require(same_ring(J1.ring(), J2.ring()), "odot of algebras over different rings");
    QReesAlgebra out = J1;
    for (const auto& g : J2.generators()) out.add(g.poly, g.weight);
    return out;
}

/// J^b: every weight a_i becomes a_i / b.
inline QReesAlgebra scale(const QReesAlgebra& J, const Weight& b) {
    require(b > Weight(0), "scaling factor must be positive");
    QReesAlgebra out(J.ring());
    for (const auto& g : J.generators()) out.add(g.poly, g.weight / b);
    return out;
}

/// min_i ord_ξ(f_i) / a_i; infinity for the zero algebra.
inline Extended<Weight> ord_at_point(const QReesAlgebra& J, std::span<const Scalar> point) {
    std::optional<Weight> best;
    for (const auto& g : J.generators()) {
        auto o = g.poly.order_at_point(point);
        if (o.is_infinite()) continue;
        Weight w = Weight(static_cast<long>(o.value())) / g.weight;
        if (!best || w < *best) best = w;
    }
    if (!best) return Extended<Weight>::infinity();
    return *best;
}

/// Generators of {ξ : ord_ξ(f) ≥ m}: all Hasse derivatives of order < m.
inline std::vector<Polynomial> derivatives_below(const Polynomial& f, unsigned m) {
    std::vector<Polynomial> out;
    for (unsigned d = 0; d < m; ++d)
        for (const auto& alpha : multi_indices_of_degree(f.nvars(), d)) {
            Polynomial h = f.hasse_derivative(alpha);
            if (!h.is_zero()) out.push_back(std::move(h));
        }
    return out;
}

/// Ideal of the closed set {ξ : ord(J)(ξ) ≥ ω}. Point orders are integers, so
/// ord(f_i)/a_i ≥ ω iff ord(f_i) ≥ ⌈a_i·ω⌉.
inline Ideal order_locus(const QReesAlgebra& J, const Weight& omega) {
    std::vector<Polynomial> gens;
    for (const auto& g : J.generators()) {
        auto m = (g.weight * omega).ceil_ul();
        auto d = derivatives_below(g.poly, static_cast<unsigned>(m));
        gens.insert(gens.end(), std::make_move_iterator(d.begin()), std::make_move_iterator(d.end()));
    }
    return Ideal(J.ring(), std::move(gens));
}

/// Sing(J) = {ξ : ord(J)(ξ) ≥ 1}.
inline ClosedSet sing_locus(const QReesAlgebra& J) { return ClosedSet(order_locus(J, Weight(1))); }

struct OrderStratum {
    Weight omega;
    ClosedSet stratum;
};

/// Largest value of ord(J) attained on `within` (the whole chart when absent)
/// and the closed set where it is attained.
inline OrderStratum max_order_stratum(const QReesAlgebra& J, const std::optional<ClosedSet>& within = std::nullopt) {
    require(!J.is_zero(), "max order stratum of the zero algebra");
    std::vector<Weight> candidates;
    for (const auto& g : J.generators()) {
        unsigned deg = g.poly.total_degree();
        for (unsigned m = 0; m <= deg; ++m) candidates.push_back(Weight(static_cast<long>(m)) / g.weight);
    }
    std::sort(candidates.begin(), candidates.end(), std::greater<>());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& w : candidates) {
        ClosedSet s(order_locus(J, w));
        if (within) s = s.intersect(*within);
        if (!s.is_empty()) return {w, std::move(s)};
    }
    // ω = 0 is always a candidate and its locus is the whole chart.
    fail(ErrorCode::Precondition, "max order stratum: restricting set is empty");
}

struct IntegerGrading {
    QReesAlgebra algebra;
    mpz_class denominator;
};

/// Re-reads J inside R[T^{1/N}]: weights a_i·N with N the denominator lcm.
inline IntegerGrading to_integer_grading(const QReesAlgebra& J, std::optional<mpz_class> common = std::nullopt) {
    mpz_class n = common.value_or(J.denominator());
    QReesAlgebra out(J.ring());
    for (const auto& g : J.generators()) {
        Weight w = g.weight * Weight(mpq_class(n));
        require(w.is_integral(), "common denominator does not clear every weight");
        out.add(g.poly, w);
    }
    return {std::move(out), n};
}

/// Adds f_i·T^m for 1 ≤ m < n_i; input weights must be integral.
inline QReesAlgebra monotone_closure(const QReesAlgebra& J) {
    QReesAlgebra out(J.ring());
    for (const auto& g : J.generators()) {
        require(g.weight.is_integral(), "monotone closure needs integral weights");
        unsigned long n = g.weight.numerator().get_ui();
        for (unsigned long m = n; m >= 1; --m) out.add(g.poly, Weight(static_cast<long>(m)));
    }
    return out;
}

}  // namespace qrees

#endif
