#ifndef QREES_INVARIANT_HPP
#define QREES_INVARIANT_HPP

#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "field.hpp"

namespace qrees {

/// Combinatorial datum of the monomial case: p divisors are needed for the
/// exponents to reach 1, s is their exponent sum, `indices` their creation
/// indices (ascending).
struct Gamma {
    unsigned p = 0;
    Weight s;
    std::vector<unsigned> indices;

    friend bool operator==(const Gamma&, const Gamma&) = default;
    /// Larger is worse: fewer divisors, then a larger sum, then older indices.
    friend std::strong_ordering operator<=>(const Gamma& a, const Gamma& b) {
        if (a.p != b.p) return b.p <=> a.p;
        if (a.s != b.s) return a.s <=> b.s;
        if (a.indices != b.indices) return a.indices < b.indices ? std::strong_ordering::greater : std::strong_ordering::less;
        return std::strong_ordering::equal;
    }
    std::string str() const {
        std::string s_idx;
        for (auto i : indices) s_idx += (s_idx.empty() ? "" : ",") + std::to_string(i);
        return "(" + std::to_string(p) + ", " + s.str() + ", (" + s_idx + "))";
    }
};

struct Level {
    Weight omega;
    unsigned n = 0;
    friend bool operator==(const Level&, const Level&) = default;
    friend std::strong_ordering operator<=>(const Level& a, const Level& b) {
        if (auto c = a.omega <=> b.omega; c != 0) return c;
        return a.n <=> b.n;
    }
};

enum class Terminator { NonSingular, Monomial, Point, ZeroCoeff };

inline const char* terminator_name(Terminator t) {
    switch (t) {
        case Terminator::NonSingular: return "NonSingular";
        case Terminator::Monomial: return "Monomial";
        case Terminator::Point: return "Point";
        case Terminator::ZeroCoeff: return "ZeroCoeff";
    }
    return "";
}

/// Value of the resolution invariant: a list of (ω, n) levels, one per
/// dimension visited, closed by a terminator.
struct InvariantValue {
    std::vector<Level> levels;
    Terminator terminator = Terminator::NonSingular;
    Gamma gamma;  // meaningful for Monomial only

    static InvariantValue nonsingular() { return {}; }

    friend bool operator==(const InvariantValue& a, const InvariantValue& b) {
        return a.levels == b.levels && a.terminator == b.terminator &&
               (a.terminator != Terminator::Monomial || a.gamma == b.gamma);
    }

    friend std::strong_ordering operator<=>(const InvariantValue& a, const InvariantValue& b) {
        if (a.terminator == Terminator::NonSingular || b.terminator == Terminator::NonSingular) {
            bool an = a.terminator == Terminator::NonSingular, bn = b.terminator == Terminator::NonSingular;
            if (an && bn) return std::strong_ordering::equal;
            return an ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        std::size_t common = std::min(a.levels.size(), b.levels.size());
        for (std::size_t i = 0; i < common; ++i)
            if (auto c = a.levels[i] <=> b.levels[i]; c != 0) return c;
        if (a.levels.size() != b.levels.size()) {
            // A terminator meets a further level: only ZeroCoeff sits above it.
            bool a_short = a.levels.size() < b.levels.size();
            Terminator t = a_short ? a.terminator : b.terminator;
            bool short_wins = t == Terminator::ZeroCoeff;
            return (a_short == short_wins) ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (a.terminator != b.terminator) return a.terminator <=> b.terminator;
        if (a.terminator == Terminator::Monomial) return a.gamma <=> b.gamma;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        if (terminator == Terminator::NonSingular) return "NonSingular";
        std::string s = "[";
        for (std::size_t i = 0; i < levels.size(); ++i)
            s += (i ? ", (" : "(") + levels[i].omega.str() + ", " + std::to_string(levels[i].n) + ")";
        s += "] ";
        s += terminator_name(terminator);
        if (terminator == Terminator::Monomial) s += gamma.str();
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const InvariantValue& v) { return os << v.str(); }
};

}  // namespace qrees

#endif
