#ifndef QREES_FIELD_HPP
#define QREES_FIELD_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "error.hpp"

namespace qrees {

/// Field elements are always held as GMP rationals; in a prime field they are
/// kept reduced to an integer in [0, p).
using Scalar = mpq_class;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// The coefficient field: the rationals (characteristic 0) or F_p.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint64_t p) {
        if (!is_prime(p)) fail(ErrorCode::Parse, "field characteristic " + std::to_string(p) + " is not prime");
        return Field(p);
    }

    std::uint64_t characteristic() const noexcept { return p_; }
    bool is_rationals() const noexcept { return p_ == 0; }

    Scalar normalize(Scalar v) const {
        v.canonicalize();
        if (p_ == 0) return v;
        mpz_class mod(static_cast<unsigned long>(p_));
        mpz_class num = v.get_num() % mod;
        mpz_class den = v.get_den() % mod;
        if (den == 0) fail(ErrorCode::Precondition, "denominator vanishes modulo " + std::to_string(p_));
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
        mpz_class r = (num * inv) % mod;
        if (r < 0) r += mod;
        return Scalar(r);
    }

    Scalar from_int(long v) const { return normalize(Scalar(v)); }
    Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
    Scalar neg(const Scalar& a) const { return normalize(-a); }
    Scalar inv(const Scalar& a) const {
        require(a != 0, "inverse of zero");
        if (p_ == 0) return Scalar(1) / a;
        return normalize(Scalar(1) / a);
    }

    std::string name() const { return p_ == 0 ? "Q" : "F " + std::to_string(p_); }

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

/// Binomial coefficient as an exact integer.
inline mpz_class binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::string scalar_to_string(const Scalar& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

/// Nonnegative rational grading degree, always in lowest terms.
class Weight {
public:
    Weight() = default;
    Weight(long n) : v_(n) { check(); }
    Weight(long n, long d) : v_(n, d) {
        require(d != 0, "weight denominator is zero");
        v_.canonicalize();
        check();
    }
    explicit Weight(const mpq_class& v) : v_(v) {
        v_.canonicalize();
        check();
    }

    const mpq_class& value() const noexcept { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    bool is_zero() const { return v_ == 0; }
    bool is_integral() const { return v_.get_den() == 1; }

    /// Smallest integer >= this weight.
    mpz_class ceil() const {
        mpz_class r;
        mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return r;
    }
    unsigned long ceil_ul() const { return ceil().get_ui(); }

    std::string str() const {
        std::ostringstream os;
        os << v_;
        return os.str();
    }

    friend Weight operator+(const Weight& a, const Weight& b) { return Weight(mpq_class(a.v_ + b.v_)); }
    friend Weight operator-(const Weight& a, const Weight& b) { return Weight(mpq_class(a.v_ - b.v_)); }
    friend Weight operator*(const Weight& a, const Weight& b) { return Weight(mpq_class(a.v_ * b.v_)); }
    friend Weight operator/(const Weight& a, const Weight& b) {
        require(b.v_ != 0, "division by zero weight");
        return Weight(mpq_class(a.v_ / b.v_));
    }
    friend bool operator==(const Weight& a, const Weight& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.v_; }

private:
    void check() const { require(v_ >= 0, "weights must be nonnegative"); }
    mpq_class v_{0};
};

/// A value in T ∪ {∞}; infinity compares above every finite value.
template <class T>
class Extended {
public:
    Extended(T v) : v_(std::move(v)) {}
    static Extended infinity() { return Extended(); }

    bool is_infinite() const noexcept { return !v_.has_value(); }
    const T& value() const {
        require(v_.has_value(), "value is infinite");
        return *v_;
    }

    friend bool operator==(const Extended& a, const Extended& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        if (a.is_infinite()) return std::strong_ordering::greater;
        if (b.is_infinite()) return std::strong_ordering::less;
        return *a.v_ <=> *b.v_;
    }

    std::string str() const {
        if (is_infinite()) return "inf";
        std::ostringstream os;
        os << *v_;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.str(); }

private:
    Extended() = default;
    std::optional<T> v_;
};

}  // namespace qrees

#endif
