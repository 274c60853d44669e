#ifndef QREES_SATURATION_HPP
#define QREES_SATURATION_HPP

#include <string>
#include <vector>

#include "qrees_algebra.hpp"

namespace qrees {

/// Diff(J): each f_i·T^{a_i} contributes D^(α)(f_i)·T^{a_i - |α|} for every
/// multi-index with a_i - |α| > 0. Zero derivatives are dropped.
inline QReesAlgebra diff_saturate(const QReesAlgebra& J) {
    QReesAlgebra out(J.ring());
    for (const auto& g : J.generators()) {
        for (unsigned d = 0; Weight(static_cast<long>(d)) < g.weight; ++d) {
            Weight w = g.weight - Weight(static_cast<long>(d));
            for (const auto& alpha : multi_indices_of_degree(g.poly.nvars(), d)) {
                Polynomial h = g.poly.hasse_derivative(alpha);
                if (!h.is_zero()) out.add(std::move(h), w);
            }
        }
    }
    return out;
}

/// ν_J(f) = sup{a : f·T^a ∈ J}, searched on the 1/N grid up to a cap.
struct NuValue {
    enum class Kind { Finite, CapReached, Infinite };
    Kind kind;
    Weight value;  // the grid value found (the cap itself for CapReached)

    std::string str() const {
        switch (kind) {
            case Kind::Infinite: return "inf";
            case Kind::CapReached: return ">=" + value.str();
            case Kind::Finite: return value.str();
        }
        return "";
    }
};

inline NuValue nu(const QReesAlgebra& J, const Polynomial& f, const Weight& cap) {
    require(cap > Weight(0), "nu cap must be positive");
    if (f.is_zero()) return {NuValue::Kind::Infinite, Weight(0)};
    mpz_class N = J.denominator();
    mpz_class top_z;
    mpz_class capn = mpz_class(cap.value().get_num() * N);
    mpz_fdiv_q(top_z.get_mpz_t(), capn.get_mpz_t(), cap.value().get_den_mpz_t());
    unsigned long top = top_z.get_ui();
    auto at = [&](unsigned long m) { return Weight(mpq_class(mpz_class(m), N)); };
    auto member = [&](unsigned long m) { return level_ideal(J, at(m)).contains(f); };

    if (member(top)) return {NuValue::Kind::CapReached, at(top)};
    unsigned long lo = 0, hi = top;  // member(lo) holds, member(hi) fails
    while (hi - lo > 1) {
        unsigned long mid = lo + (hi - lo) / 2;
        (member(mid) ? lo : hi) = mid;
    }
    return {NuValue::Kind::Finite, at(lo)};
}

/// Lower bound for ν̄(f) = lim ν(f^n)/n: max over n ≤ n_max of ν(f^n)/n.
inline Extended<Weight> nu_bar_estimate(const QReesAlgebra& J, const Polynomial& f, unsigned n_max, const Weight& cap) {
    require(n_max >= 1, "n_max must be at least 1");
    if (f.is_zero()) return Extended<Weight>::infinity();
    Weight best(0);
    Polynomial power = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) power *= f;
        Weight nw(static_cast<long>(n));
        NuValue v = nu(J, power, cap * nw);
        best = std::max(best, v.value / nw);
    }
    return best;
}

struct MembershipVerdict {
    enum class Status { Member, NonMemberAtCap, MemberWitness };
    Status status;
    unsigned n = 0;   // witness exponent: f^n ∈ J_{a·n}
    Weight a;         // queried weight

    std::string str() const {
        switch (status) {
            case Status::Member: return "member";
            case Status::NonMemberAtCap: return "not found (n <= n_max)";
            case Status::MemberWitness: return "member (witness n=" + std::to_string(n) + ", a=" + a.str() + ")";
        }
        return "";
    }
};

/// Semi-decision for f·T^a ∈ closure(J): looks for f^n ∈ J_{a·n} with n ≤ n_max.
/// Direct membership (n = 1) is reported as Member. A negative answer only
/// means no witness was found.
inline MembershipVerdict is_integral_member(const QReesAlgebra& J, const Polynomial& f, const Weight& a, unsigned n_max,
                                            const Weight& cap) {
    require(a > Weight(0), "membership weight must be positive");
    if (f.is_zero()) return {MembershipVerdict::Status::Member, 1, a};
    if (a > cap) return {MembershipVerdict::Status::NonMemberAtCap, 0, a};
    Polynomial power = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) power *= f;
        if (level_ideal(J, a * Weight(static_cast<long>(n))).contains(power))
            return {n == 1 ? MembershipVerdict::Status::Member : MembershipVerdict::Status::MemberWitness, n, a};
    }
    return {MembershipVerdict::Status::NonMemberAtCap, 0, a};
}

inline bool is_member(const MembershipVerdict& v) { return v.status != MembershipVerdict::Status::NonMemberAtCap; }

enum class Equivalence { Equivalent, Inequivalent, Unknown };

inline const char* equivalence_name(Equivalence e) {
    switch (e) {
        case Equivalence::Equivalent: return "equivalent";
        case Equivalence::Inequivalent: return "inequivalent";
        case Equivalence::Unknown: return "unknown";
    }
    return "";
}

/// Rational points with coordinates in {0, 1, -1} (in F_p: {0, 1, p-1}).
inline std::vector<std::vector<Scalar>> sample_points(const Ring& ring) {
    std::vector<Scalar> values{ring.field.from_int(0), ring.field.from_int(1), ring.field.from_int(-1)};
    if (ring.field.characteristic() == 2) values.pop_back();
    std::vector<std::vector<Scalar>> out{{}};
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        std::vector<std::vector<Scalar>> next;
        for (const auto& p : out)
            for (const auto& v : values) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

/// Both directions of generator membership on a common 1/N grid; falls back
/// to comparing orders at sampled rational points.
inline Equivalence equivalence_check(const QReesAlgebra& J1, const QReesAlgebra& J2, unsigned n_max, const Weight& cap) {
    require(same_ring(J1.ring(), J2.ring()), "equivalence check over different rings");
    mpz_class N;
    mpz_class n1 = J1.denominator(), n2 = J2.denominator();
    mpz_lcm(N.get_mpz_t(), n1.get_mpz_t(), n2.get_mpz_t());
    auto G1 = to_integer_grading(J1, N).algebra;
    auto G2 = to_integer_grading(J2, N).algebra;
    Weight capN = cap * Weight(mpq_class(N));

    auto all_members = [&](const QReesAlgebra& A, const QReesAlgebra& B) {
        for (const auto& g : A.generators())
            if (!is_member(is_integral_member(B, g.poly, g.weight, n_max, capN))) return false;
        return true;
    };
    if (all_members(G1, G2) && all_members(G2, G1)) return Equivalence::Equivalent;

    for (const auto& pt : sample_points(*J1.ring()))
        if (ord_at_point(J1, pt) != ord_at_point(J2, pt)) return Equivalence::Inequivalent;
    return Equivalence::Unknown;
}

}  // namespace qrees

#endif
