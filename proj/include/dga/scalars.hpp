#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dga {

/// The exact scalar field of a computation: the rationals, or F_p for a
/// prime p < 2^31. Every object carries its FieldSpec; mixing fields is an
/// error caught at construction time.
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };
    Kind kind = Kind::Rationals;
    std::int64_t characteristic = 0;  // 0 for the rationals, p otherwise

    static FieldSpec rationals() { return {Kind::Rationals, 0}; }
    static FieldSpec prime(std::int64_t p)
    {
        if (p < 2 || p >= (std::int64_t(1) << 31) || !is_prime(p))
            throw std::invalid_argument("FieldSpec: characteristic must be a prime < 2^31");
        return {Kind::PrimeField, p};
    }

    bool operator==(const FieldSpec&) const = default;

    static bool is_prime(std::int64_t n)
    {
        if (n < 2) return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
};

/// Exact rational scalar. Thin value wrapper around mpq_class so that all
/// operators return plain values (no GMP expression templates leaking into
/// Eigen kernels). Always kept in lowest terms.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<long>(n)) {}
    Rational(long long n) : v_(mpz_class(std::to_string(n))) {}
    Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    Rational(const mpz_class& num, const mpz_class& den) : v_(num, den)
    {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    /// Parses "a" or "a/b" in decimal.
    explicit Rational(const std::string& s) : v_(parse(s)) {}

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    std::string str() const { return v_.get_str(); }
    bool is_zero() const { return v_ == 0; }

    Rational operator-() const { return Rational(mpq_class(-v_), tag{}); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_), tag{}); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_), tag{}); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_), tag{}); }
    Rational operator/(const Rational& o) const
    {
        if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(v_ / o.v_), tag{});
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

private:
    struct tag {};
    Rational(mpq_class q, tag) : v_(std::move(q)) {}  // already canonical
    static mpq_class parse(const std::string& s)
    {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        q.canonicalize();
        return q;
    }
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

/// Element of F_p with the modulus carried alongside the value. Values are
/// stored reduced to [0, p). A modulus of 0 marks a bare integer literal
/// (Scalar(0)/Scalar(1) materialized by generic Eigen kernels); it adopts
/// the partner's modulus on first combination.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(int n) : v_(n), p_(0) {}
    Fp(long long n) : v_(narrow(n)), p_(0) {}
    Fp(std::int64_t v, std::int64_t p) : v_(0), p_(static_cast<std::int32_t>(p))
    {
        if (p != 0) {
            v %= p;
            if (v < 0) v += p;
        }
        v_ = narrow(v);
    }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    std::string str() const { return std::to_string(v_); }

    Fp operator-() const { return p_ == 0 ? Fp(std::int64_t(-v_), 0) : Fp(std::int64_t(p_ - v_), std::int64_t(p_)); }
    Fp operator+(const Fp& o) const { auto p = join(o); return Fp(std::int64_t(v_) + o.v_, p); }
    Fp operator-(const Fp& o) const { auto p = join(o); return Fp(std::int64_t(v_) - o.v_, p); }
    Fp operator*(const Fp& o) const { auto p = join(o); return Fp(std::int64_t(v_) * o.v_, p); }
    Fp operator/(const Fp& o) const
    {
        auto p = join(o);
        if (p == 0) {
            // bare literals (Eigen-materialized constants); exact division only
            if (o.v_ == 0 || v_ % o.v_ != 0)
                throw std::domain_error("Fp: division without a modulus");
            return Fp(std::int64_t(v_ / o.v_), 0);
        }
        return *this * Fp(o.inverse_mod(p), p);
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    bool operator==(const Fp& o) const
    {
        auto p = join(o);
        if (p == 0) return v_ == o.v_;
        return Fp(v_, p).v_ == Fp(o.v_, p).v_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }
    bool operator<(const Fp& o) const { return v_ < o.v_; }  // canonical-representative order

private:
    static std::int32_t narrow(std::int64_t v)
    {
        if (v < std::numeric_limits<std::int32_t>::min() ||
            v > std::numeric_limits<std::int32_t>::max())
            throw std::domain_error("Fp: literal out of range");
        return static_cast<std::int32_t>(v);
    }
    std::int64_t join(const Fp& o) const
    {
        if (p_ != 0 && o.p_ != 0 && p_ != o.p_)
            throw std::domain_error("Fp: mixed moduli");
        return p_ != 0 ? p_ : o.p_;
    }
    std::int64_t inverse_mod(std::int64_t p) const
    {
        std::int64_t a = v_ % p, b = p, x0 = 1, x1 = 0;
        if (a < 0) a += p;
        if (a == 0) throw std::domain_error("Fp: division by zero");
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return ((x0 % p) + p) % p;
    }
    std::int32_t v_;   // reduced to [0, p) when p_ != 0
    std::int32_t p_;   // 0 marks a bare literal
};

inline std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value(); }

/// Field-generic construction and parsing helpers.
template <class S>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static constexpr FieldSpec::Kind kind = FieldSpec::Kind::Rationals;
    static Rational zero(const FieldSpec&) { return Rational(0); }
    static Rational one(const FieldSpec&) { return Rational(1); }
    static Rational from_int(std::int64_t n, const FieldSpec&) { return Rational(static_cast<long long>(n)); }
    static Rational parse(const std::string& s, const FieldSpec&) { return Rational(s); }
    static bool matches(const FieldSpec& f) { return f.kind == FieldSpec::Kind::Rationals; }
};

template <>
struct FieldOps<Fp> {
    static constexpr FieldSpec::Kind kind = FieldSpec::Kind::PrimeField;
    static Fp zero(const FieldSpec& f) { return Fp(0, f.characteristic); }
    static Fp one(const FieldSpec& f) { return Fp(1, f.characteristic); }
    static Fp from_int(std::int64_t n, const FieldSpec& f) { return Fp(n, f.characteristic); }
    static Fp parse(const std::string& s, const FieldSpec& f)
    {
        // accepts "a" or "a/b" so one file syntax serves both fields
        auto slash = s.find('/');
        if (slash == std::string::npos) return Fp(std::stoll(s), f.characteristic);
        Fp n(std::stoll(s.substr(0, slash)), f.characteristic);
        Fp d(std::stoll(s.substr(slash + 1)), f.characteristic);
        return n / d;
    }
    static bool matches(const FieldSpec& f) { return f.kind == FieldSpec::Kind::PrimeField; }
};

/// Attaches the field's modulus to every entry of a matrix (no-op over the
/// rationals). Called at construction boundaries so literal-built entries
/// participate in modular arithmetic.
template <class S>
void imprint(Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& m, const FieldSpec& f)
{
    if constexpr (std::is_same_v<S, Fp>) {
        if (f.kind == FieldSpec::Kind::PrimeField)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                for (Eigen::Index i = 0; i < m.rows(); ++i)
                    m(i, j) = Fp(m(i, j).value(), f.characteristic);
    }
}

template <class S>
void imprint(Eigen::Matrix<S, Eigen::Dynamic, 1>& v, const FieldSpec& f)
{
    if constexpr (std::is_same_v<S, Fp>) {
        if (f.kind == FieldSpec::Kind::PrimeField)
            for (Eigen::Index i = 0; i < v.size(); ++i)
                v(i) = Fp(v(i).value(), f.characteristic);
    }
}

template <class S>
std::int64_t sign_pow(int e)  // (-1)^e as an int
{
    return (e % 2 == 0) ? 1 : -1;
}

/// Dense dynamic matrix/vector over an exact scalar.
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

}  // namespace dga

namespace Eigen {

template <>
struct NumTraits<dga::Rational> {
    using Real = dga::Rational;
    using NonInteger = dga::Rational;
    using Nested = dga::Rational;
    using Literal = int;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 16
    };
    static inline Real epsilon() { return dga::Rational(0); }
    static inline Real dummy_precision() { return dga::Rational(0); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<dga::Fp> {
    using Real = dga::Fp;
    using NonInteger = dga::Fp;
    using Nested = dga::Fp;
    using Literal = int;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 2
    };
    static inline Real epsilon() { return dga::Fp(); }
    static inline Real dummy_precision() { return dga::Fp(); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
