#pragma once

// Exact scalar arithmetic: the rationals and prime fields GF(p).
//
// Every scalar is stored in canonical form (reduced fraction with positive
// denominator, least non-negative residue), so operator== is a decision
// procedure for equality and text encodings are unique.

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace cayley {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

/// Deterministic Miller-Rabin, valid for every 64-bit integer.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

enum class FieldKind { rational, prime };

/// Runtime description of a coefficient field: the rationals, or GF(p).
class FieldSpec {
public:
    static FieldSpec rationals() { return FieldSpec(FieldKind::rational, 0); }

    static FieldSpec prime(std::uint64_t p) {
        if (!detail::is_prime_u64(p))
            throw not_prime("FieldSpec::prime: " + std::to_string(p) + " is not prime");
        return FieldSpec(FieldKind::prime, p);
    }

    FieldKind kind() const { return kind_; }

    /// Prime modulus; only meaningful for prime fields.
    std::uint64_t modulus() const {
        if (kind_ != FieldKind::prime) throw error("FieldSpec::modulus: field has no modulus");
        return p_;
    }

    /// 0 for the rationals, p for GF(p).
    std::uint64_t characteristic() const { return kind_ == FieldKind::prime ? p_ : 0; }

    bool operator==(const FieldSpec&) const = default;

    /// Text form used on the command line: "q" or "gf:<p>".
    std::string str() const {
        return kind_ == FieldKind::rational ? std::string("q") : "gf:" + std::to_string(p_);
    }

    static FieldSpec parse(std::string_view text) {
        if (text == "q" || text == "Q") return rationals();
        constexpr std::string_view prefix = "gf:";
        if (text.substr(0, prefix.size()) == prefix) {
            std::string digits(text.substr(prefix.size()));
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("FieldSpec::parse: bad modulus in '" + std::string(text) + "'");
            return prime(std::stoull(digits));
        }
        throw parse_error("FieldSpec::parse: expected 'q' or 'gf:<p>', got '" + std::string(text) + "'");
    }

private:
    FieldSpec(FieldKind kind, std::uint64_t p) : kind_(kind), p_(p) {}

    FieldKind kind_;
    std::uint64_t p_;
};

/// Arbitrary-precision rational number in lowest terms.
class Rational {
public:
    using rep = boost::multiprecision::cpp_rational;

    Rational() : v_(0) {}
    explicit Rational(rep v) : v_(std::move(v)) {}
    explicit Rational(long long n) : v_(n) {}
    Rational(long long num, long long den) {
        if (den == 0) throw division_by_zero("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        v_ = rep(num, den);
    }

    static Rational zero(const FieldSpec& s) { return from_int(s, 0); }
    static Rational one(const FieldSpec& s) { return from_int(s, 1); }

    static Rational from_int(const FieldSpec& s, long long n) {
        require_rational(s);
        return Rational(n);
    }

    /// Accepts "n" or "n/d" with optional leading '-'.
    static Rational parse(const FieldSpec& s, std::string_view text) {
        require_rational(s);
        auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) {
                check_integer_text(text);
                return Rational(rep(boost::multiprecision::cpp_int(std::string(text))));
            }
            std::string_view num = text.substr(0, slash);
            std::string_view den = text.substr(slash + 1);
            check_integer_text(num);
            check_integer_text(den);
            boost::multiprecision::cpp_int n{std::string(num)};
            boost::multiprecision::cpp_int d{std::string(den)};
            if (d == 0) throw division_by_zero("Rational::parse: zero denominator");
            if (d < 0) {
                n = -n;
                d = -d;
            }
            return Rational(rep(n, d));
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const error*>(&e) != nullptr) throw;
            throw parse_error("Rational::parse: '" + std::string(text) + "'");
        }
    }

    Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
    Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
    Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw division_by_zero("Rational: division by zero");
        return Rational(v_ / o.v_);
    }
    Rational operator-() const { return Rational(-v_); }

    Rational& operator+=(const Rational& o) {
        v_ += o.v_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        v_ -= o.v_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        v_ *= o.v_;
        return *this;
    }

    Rational inverse() const {
        if (is_zero()) throw division_by_zero("Rational: inverse of zero");
        return Rational(1 / v_);
    }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    FieldSpec spec() const { return FieldSpec::rationals(); }

    /// Canonical text: "n" when the denominator is 1, else "n/d" with d > 0.
    std::string str() const {
        std::string out = numerator(v_).str();
        if (denominator(v_) != 1) out += "/" + denominator(v_).str();
        return out;
    }

    const rep& value() const { return v_; }

    /// Sign of the rational: -1, 0, or +1 (used by positivity certificates).
    int sign() const { return v_.sign(); }

private:
    static void require_rational(const FieldSpec& s) {
        if (s.kind() != FieldKind::rational)
            throw field_mismatch("Rational: spec does not describe the rationals");
    }

    static void check_integer_text(std::string_view t) {
        if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("bad integer literal");
    }

    rep v_;
};

/// Element of a prime field GF(p), stored as the least non-negative residue.
class GFp {
public:
    GFp(const FieldSpec& s, long long n) : p_(s.modulus()) {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        v_ = static_cast<std::uint64_t>(r);
    }

    static GFp zero(const FieldSpec& s) { return GFp(s, 0); }
    static GFp one(const FieldSpec& s) { return GFp(s, 1); }
    static GFp from_int(const FieldSpec& s, long long n) { return GFp(s, n); }

    /// Accepts a decimal integer (optionally negative); reduced mod p.
    static GFp parse(const FieldSpec& s, std::string_view text) {
        std::string_view t = text;
        bool neg = false;
        if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
            neg = t[0] == '-';
            t.remove_prefix(1);
        }
        if (t.empty() || t.find_first_not_of("0123456789") != std::string_view::npos)
            throw parse_error("GFp::parse: '" + std::string(text) + "'");
        std::uint64_t p = s.modulus();
        std::uint64_t acc = 0;
        for (char c : t) acc = (detail::mulmod_u64(acc, 10, p) + static_cast<std::uint64_t>(c - '0')) % p;
        if (neg && acc != 0) acc = p - acc;
        GFp out = zero(s);
        out.v_ = acc;
        return out;
    }

    GFp operator+(const GFp& o) const {
        check(o);
        std::uint64_t s = v_ + o.v_;
        return with_value(s >= p_ ? s - p_ : s);
    }
    GFp operator-(const GFp& o) const {
        check(o);
        return with_value(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_);
    }
    GFp operator*(const GFp& o) const {
        check(o);
        return with_value(detail::mulmod_u64(v_, o.v_, p_));
    }
    GFp operator/(const GFp& o) const { return *this * o.inverse(); }
    GFp operator-() const { return with_value(v_ == 0 ? 0 : p_ - v_); }

    GFp& operator+=(const GFp& o) { return *this = *this + o; }
    GFp& operator-=(const GFp& o) { return *this = *this - o; }
    GFp& operator*=(const GFp& o) { return *this = *this * o; }

    GFp inverse() const {
        if (v_ == 0) throw division_by_zero("GFp: inverse of zero");
        // Extended Euclid on (p, v), tracking the coefficient of v.
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(v_);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            t -= q * new_t;
            std::swap(t, new_t);
            r -= q * new_r;
            std::swap(r, new_r);
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return with_value(static_cast<std::uint64_t>(t));
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    bool operator==(const GFp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator<(const GFp& o) const { return v_ < o.v_; }

    FieldSpec spec() const { return FieldSpec::prime(p_); }

    std::string str() const { return std::to_string(v_); }

    std::uint64_t residue() const { return v_; }

private:
    GFp with_value(std::uint64_t v) const {
        GFp out = *this;
        out.v_ = v;
        return out;
    }

    void check(const GFp& o) const {
        if (p_ != o.p_)
            throw field_mismatch("GFp: mixed moduli " + std::to_string(p_) + " and " + std::to_string(o.p_));
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

/// Exact field scalars: canonical representation, total arithmetic
/// (division by zero throws), runtime field descriptor, unique text form.
template <typename F>
concept ScalarField = std::copyable<F> && requires(const F a, const F b, const FieldSpec& s, long long n,
                                                   std::string_view text) {
    { F::zero(s) } -> std::same_as<F>;
    { F::one(s) } -> std::same_as<F>;
    { F::from_int(s, n) } -> std::same_as<F>;
    { F::parse(s, text) } -> std::same_as<F>;
    { a + b } -> std::same_as<F>;
    { a - b } -> std::same_as<F>;
    { a* b } -> std::same_as<F>;
    { a / b } -> std::same_as<F>;
    { -a } -> std::same_as<F>;
    { a.inverse() } -> std::same_as<F>;
    { a.is_zero() } -> std::same_as<bool>;
    { a.is_one() } -> std::same_as<bool>;
    { a == b } -> std::same_as<bool>;
    { a < b } -> std::same_as<bool>;
    { a.spec() } -> std::same_as<FieldSpec>;
    { a.str() } -> std::same_as<std::string>;
};

static_assert(ScalarField<Rational>);
static_assert(ScalarField<GFp>);

/// All elements of a finite field, in residue order.  Throws for the rationals.
template <ScalarField F>
std::vector<F> enumerate_field(const FieldSpec& s) {
    if (s.kind() != FieldKind::prime)
        throw infinite_field("enumerate_field: field is infinite");
    std::vector<F> out;
    out.reserve(static_cast<std::size_t>(s.modulus()));
    for (std::uint64_t i = 0; i < s.modulus(); ++i)
        out.push_back(F::from_int(s, static_cast<long long>(i)));
    return out;
}

} // namespace cayley
