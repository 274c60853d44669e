#ifndef QREES_POLYNOMIAL_HPP
#define QREES_POLYNOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace qrees {

using Exponents = std::vector<unsigned>;

/// Coefficient field plus an ordered list of variable names.
struct Ring {
    Field field;
    std::vector<std::string> vars;

    std::size_t nvars() const noexcept { return vars.size(); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        return std::nullopt;
    }
    std::size_t require_index(std::string_view name) const {
        auto i = index_of(name);
        if (!i) fail(ErrorCode::Precondition, "unknown variable '" + std::string(name) + "'");
        return *i;
    }

    friend bool operator==(const Ring&, const Ring&) = default;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(Field field, std::vector<std::string> vars) {
    return std::make_shared<const Ring>(Ring{field, std::move(vars)});
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

/// Ring with one variable removed.
inline RingPtr drop_variable(const RingPtr& r, std::size_t var) {
    auto vars = r->vars;
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(var));
    return make_ring(r->field, std::move(vars));
}

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

/// Graded reverse lexicographic comparison: -1, 0, +1.
inline int grevlex_cmp(const Exponents& a, const Exponents& b) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
}

struct GrevlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const { return grevlex_cmp(a, b) > 0; }
};

/// Exact sparse multivariate polynomial. Terms are kept in descending grevlex
/// order and never store a zero coefficient.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Scalar, GrevlexGreater>;

    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial constant(const RingPtr& ring, const Scalar& c) {
        Polynomial p(ring);
        p.add_term(Exponents(ring->nvars(), 0), c);
        return p;
    }
    static Polynomial one(const RingPtr& ring) { return constant(ring, Scalar(1)); }
    static Polynomial variable(const RingPtr& ring, std::size_t idx) {
        require(idx < ring->nvars(), "variable index out of range");
        Exponents e(ring->nvars(), 0);
        e[idx] = 1;
        return monomial(ring, std::move(e), Scalar(1));
    }
    static Polynomial variable(const RingPtr& ring, std::string_view name) {
        return variable(ring, ring->require_index(name));
    }
    static Polynomial monomial(const RingPtr& ring, Exponents e, const Scalar& c) {
        require(e.size() == ring->nvars(), "exponent arity mismatch");
        Polynomial p(ring);
        p.add_term(std::move(e), c);
        return p;
    }

    const RingPtr& ring() const noexcept { return ring_; }
    const Field& field() const noexcept { return ring_->field; }
    std::size_t nvars() const noexcept { return ring_->nvars(); }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && qrees::total_degree(terms_.begin()->first) == 0);
    }
    Scalar constant_term() const {
        auto it = terms_.find(Exponents(nvars(), 0));
        return it == terms_.end() ? Scalar(0) : it->second;
    }
    Scalar coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, qrees::total_degree(e));
        return d;
    }
    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }
    bool involves(std::size_t var) const { return degree_in(var) > 0; }

    /// Adds c·x^e in place.
    void add_term(Exponents e, const Scalar& c) {
        require(e.size() == nvars(), "exponent arity mismatch");
        Scalar v = field().normalize(c);
        if (v == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), v);
        if (!inserted) {
            it->second = field().add(it->second, v);
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(ring_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, field().neg(c));
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        check_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, field().neg(c));
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        Polynomial r(a.ring_);
        Exponents e(a.nvars());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, a.field().mul(ca, cb));
            }
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial scaled(const Scalar& s) const {
        Polynomial r(ring_);
        for (const auto& [e, c] : terms_) r.add_term(e, field().mul(c, s));
        return r;
    }

    Polynomial pow(unsigned n) const {
        Polynomial result = one(ring_);
        Polynomial base = *this;
        while (n) {
            if (n & 1u) result *= base;
            n >>= 1u;
            if (n) base *= base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

    /// Divided-power derivative D^(alpha): x^beta ↦ binom(beta, alpha) x^(beta - alpha).
    Polynomial hasse_derivative(std::span<const unsigned> alpha) const {
        require(alpha.size() == nvars(), "derivative multi-index arity mismatch");
        Polynomial r(ring_);
        Exponents e(nvars());
        for (const auto& [beta, c] : terms_) {
            bool ok = true;
            mpz_class mult = 1;
            for (std::size_t i = 0; i < e.size() && ok; ++i) {
                if (beta[i] < alpha[i]) ok = false;
                else {
                    e[i] = beta[i] - alpha[i];
                    mult *= binomial(beta[i], alpha[i]);
                }
            }
            if (ok) r.add_term(e, field().mul(c, Scalar(mult)));
        }
        return r;
    }

    Scalar evaluate(std::span<const Scalar> point) const {
        require(point.size() == nvars(), "point arity mismatch");
        Scalar acc = 0;
        for (const auto& [e, c] : terms_) {
            Scalar t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k) t = field().mul(t, point[i]);
            acc = field().add(acc, t);
        }
        return acc;
    }

    /// Ring homomorphism: variable i of this ring ↦ images[i], which all live in one target ring.
    Polynomial compose(std::span<const Polynomial> images) const {
        require(images.size() == nvars(), "substitution arity mismatch");
        require(!images.empty() || is_constant(), "empty substitution");
        RingPtr target = images.empty() ? ring_ : images.front().ring();
        std::vector<std::vector<Polynomial>> powers(nvars());
        auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
            auto& v = powers[i];
            if (v.empty()) v.push_back(one(target));
            while (v.size() <= k) v.push_back(v.back() * images[i]);
            return v[k];
        };
        Polynomial r(target);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(target, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) t *= power(i, e[i]);
            r += t;
        }
        return r;
    }

    /// f(x + c): recenters the polynomial at the given point.
    Polynomial taylor_shift(std::span<const Scalar> point) const {
        require(point.size() == nvars(), "point arity mismatch");
        std::vector<Polynomial> images;
        images.reserve(nvars());
        for (std::size_t i = 0; i < nvars(); ++i) images.push_back(variable(ring_, i) + constant(ring_, point[i]));
        return compose(images);
    }

    /// Smallest total degree of a term; infinity for the zero polynomial.
    Extended<unsigned> lowest_degree() const {
        if (is_zero()) return Extended<unsigned>::infinity();
        unsigned d = ~0u;
        for (const auto& [e, c] : terms_) d = std::min(d, qrees::total_degree(e));
        return d;
    }

    Extended<unsigned> order_at_point(std::span<const Scalar> point) const {
        require(point.size() == nvars(), "point arity mismatch");
        bool origin = std::all_of(point.begin(), point.end(), [](const Scalar& s) { return s == 0; });
        return origin ? lowest_degree() : taylor_shift(point).lowest_degree();
    }

    /// Largest e with x_var^e dividing this polynomial.
    Extended<unsigned> divisor_valuation(std::size_t var) const {
        require(var < nvars(), "variable index out of range");
        if (is_zero()) return Extended<unsigned>::infinity();
        unsigned v = ~0u;
        for (const auto& [e, c] : terms_) v = std::min(v, e[var]);
        return v;
    }

    Polynomial divide_by_variable_power(std::size_t var, unsigned power) const {
        Polynomial r(ring_);
        for (const auto& [e, c] : terms_) {
            require(e[var] >= power, "polynomial is not divisible by " + ring_->vars[var] + "^" + std::to_string(power));
            Exponents f = e;
            f[var] -= power;
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// Sets x_var = 0 and re-expresses the result in the ring without that variable.
    Polynomial restrict_to_hyperplane(std::size_t var, const RingPtr& subring) const {
        require(subring->nvars() + 1 == nvars(), "subring arity mismatch");
        Polynomial r(subring);
        for (const auto& [e, c] : terms_) {
            if (e[var] != 0) continue;
            Exponents f;
            f.reserve(subring->nvars());
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != var) f.push_back(e[i]);
            r.add_term(std::move(f), c);
        }
        return r;
    }

    /// Re-expresses the polynomial in a ring whose variables include all used ones (matched by name).
    Polynomial change_ring(const RingPtr& target) const {
        require(target->field == field(), "field mismatch");
        std::vector<std::optional<std::size_t>> map(nvars());
        for (std::size_t i = 0; i < nvars(); ++i) map[i] = target->index_of(ring_->vars[i]);
        Polynomial r(target);
        for (const auto& [e, c] : terms_) {
            Exponents f(target->nvars(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                require(map[i].has_value(), "variable '" + ring_->vars[i] + "' missing in target ring");
                f[*map[i]] = e[i];
            }
            r.add_term(std::move(f), c);
        }
        return r;
    }

    /// Monic rescaling (leading coefficient in the stored order becomes 1).
    Polynomial monic() const {
        if (is_zero()) return *this;
        return scaled(field().inv(terms_.begin()->second));
    }

    /// Text form in the polynomial grammar. Terms are printed in lexicographic
    /// order of the declared variables, highest first.
    std::string str() const;

private:
    void check_ring(const Polynomial& o) const {
        if (!same_ring(ring_, o.ring_)) fail(ErrorCode::Precondition, "polynomials live in different rings");
    }

    RingPtr ring_;
    TermMap terms_;
};

inline std::string monomial_str(const Ring& ring, const Exponents& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += '*';
        s += ring.vars[i];
        if (e[i] > 1) s += '^' + std::to_string(e[i]);
    }
    return s;
}

inline std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponents, Scalar>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::string out;
    for (const auto& [e, c] : sorted) {
        std::string mono = monomial_str(*ring_, e);
        bool neg = c < 0;
        Scalar mag = neg ? Scalar(-c) : c;
        std::string term;
        if (mono.empty()) term = scalar_to_string(mag);
        else if (mag == 1) term = mono;
        else term = scalar_to_string(mag) + "*" + mono;
        if (out.empty()) out = neg ? "-" + term : term;
        else out += (neg ? "-" : "+") + term;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

inline Extended<unsigned> order_at_point(const Polynomial& f, std::span<const Scalar> point) {
    return f.order_at_point(point);
}

inline Polynomial hasse_derivative(const Polynomial& f, std::span<const unsigned> alpha) {
    return f.hasse_derivative(alpha);
}

inline Extended<unsigned> divisor_valuation(const Polynomial& f, std::size_t var) { return f.divisor_valuation(var); }

/// All multi-indices of the given arity with total degree exactly `deg`,
/// listed in descending lexicographic order (first variable varies slowest).
inline std::vector<Exponents> multi_indices_of_degree(std::size_t arity, unsigned deg) {
    std::vector<Exponents> out;
    Exponents cur(arity, 0);
    auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
        if (arity == 0) {
            if (left == 0) out.push_back(cur);
            return;
        }
        if (pos + 1 == arity) {
            cur[pos] = left;
            out.push_back(cur);
            cur[pos] = 0;
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            cur[pos] = k;
            self(self, pos + 1, left - k);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, deg);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class PolyParser {
public:
    PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorCode::Parse, msg + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(s_) + "'");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    mpz_class integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }
    Polynomial term() {
        Polynomial acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }
    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    Polynomial power() {
        Polynomial base = atom();
        if (accept('^')) {
            mpz_class e = integer();
            if (!e.fits_uint_p()) error("exponent too large");
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }
    Polynomial atom() {
        skip_ws();
        if (pos_ >= s_.size()) error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) error("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = integer();
            mpz_class den = 1;
            if (accept('/')) {
                den = integer();
                if (den == 0) error("zero denominator");
            }
            return Polynomial::constant(ring_, ring_->field.normalize(Scalar(num, den)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto idx = ring_->index_of(name);
            if (!idx) {
                pos_ = start;
                error("unknown variable '" + name + "'");
            }
            return Polynomial::variable(ring_, *idx);
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    RingPtr ring_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
    return detail::PolyParser(ring, text).parse();
}

}  // namespace qrees

#endif
