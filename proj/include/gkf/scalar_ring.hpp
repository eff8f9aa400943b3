#pragma once

// Exact arithmetic over finite Q-linear combinations of pi^{m/2} * sqrt(s)
// (m an integer, s a squarefree positive integer), plus the unit-ball and
// unit-sphere constants that every other module is expressed in.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace gkf {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1)
{
    if (den == 0) {
        throw std::domain_error("rat: zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// An integer or half-integer, stored as twice its value.
struct HalfInteger {
    long twice = 0;

    static constexpr HalfInteger whole(long v) { return {2 * v}; }
    static constexpr HalfInteger half(long twice_value) { return {twice_value}; }

    Rational value() const { return rat(twice, 2); }
    bool is_integer() const { return twice % 2 == 0; }
    friend bool operator==(HalfInteger, HalfInteger) = default;
};

namespace detail {

// n = a^2 * s with s squarefree. Trial division; inputs here are small
// (products of dimensions and powers of two).
inline std::pair<std::uint64_t, std::uint64_t> square_split(std::uint64_t n)
{
    if (n == 0) {
        return {0, 1};
    }
    std::uint64_t a = 1;
    std::uint64_t s = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) {
            a *= p;
        }
        if (e % 2 == 1) {
            s *= p;
        }
    }
    s *= n;
    return {a, s};
}

inline std::uint64_t to_u64(const Integer& z)
{
    if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 62) {
        throw std::overflow_error("radicand out of supported range");
    }
    return static_cast<std::uint64_t>(mpz_get_ui(z.get_mpz_t()));
}

} // namespace detail

/// Exact element of Q[pi^{1/2}, sqrt(2), sqrt(3), ...].
///
/// Each term is coeff * pi^{pi_half/2} * sqrt(radical). Terms are kept sorted
/// by (pi_half, radical) with no zero coefficients, so equality is structural.
/// The radical factor carries the sqrt(N) and sqrt(2) that appear in the
/// normalizations (4N)^{i/2} and (pi/2)^{k/2}; the monomials are linearly
/// independent over Q because pi is transcendental.
class PiScalar
{
public:
    struct Term {
        int pi_half = 0;
        std::uint64_t radical = 1;
        Rational coeff;

        bool same_key(const Term& o) const { return pi_half == o.pi_half && radical == o.radical; }
        bool key_less(const Term& o) const
        {
            return pi_half != o.pi_half ? pi_half < o.pi_half : radical < o.radical;
        }
    };

    PiScalar() = default;
    PiScalar(long v) : PiScalar(Rational(v)) {}
    PiScalar(const Rational& q)
    {
        if (sgn(q) != 0) {
            terms_.push_back(Term{0, 1, q});
        }
    }

    /// pi^{half_exponent/2}
    static PiScalar pi_power(int half_exponent)
    {
        PiScalar r;
        r.terms_.push_back(Term{half_exponent, 1, Rational(1)});
        return r;
    }

    /// Exact sqrt(q) for rational q >= 0.
    static PiScalar sqrt_of(const Rational& q)
    {
        if (sgn(q) < 0) {
            throw std::domain_error("PiScalar::sqrt_of: negative argument");
        }
        if (sgn(q) == 0) {
            return {};
        }
        // sqrt(p/d) = sqrt(p*d)/d
        const Integer pd = q.get_num() * q.get_den();
        const auto [a, s] = detail::square_split(detail::to_u64(pd));
        Rational c(Integer(static_cast<unsigned long>(a)), q.get_den());
        c.canonicalize();
        PiScalar r;
        r.terms_.push_back(Term{0, s, c});
        return r;
    }

    /// base^{twice_exponent/2} for rational base > 0.
    static PiScalar half_power(const Rational& base, long twice_exponent)
    {
        if (sgn(base) <= 0) {
            throw std::domain_error("PiScalar::half_power: base must be positive");
        }
        Rational b = base;
        long e = twice_exponent;
        if (e < 0) {
            b = 1 / b;
            e = -e;
        }
        Rational whole(1);
        for (long i = 0; i < e / 2; ++i) {
            whole *= b;
        }
        if (e % 2 == 0) {
            return PiScalar(whole);
        }
        return sqrt_of(b) * whole;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_rational() const { return terms_.empty() || (is_monomial() && terms_[0].pi_half == 0 && terms_[0].radical == 1); }

    Rational rational_value() const
    {
        if (!is_rational()) {
            throw std::domain_error("PiScalar is not rational");
        }
        return terms_.empty() ? Rational(0) : terms_[0].coeff;
    }

    /// Inverse of a single-term value.
    PiScalar inverse() const
    {
        if (!is_monomial()) {
            throw std::domain_error("PiScalar::inverse: only single-term values are invertible");
        }
        const Term& t = terms_[0];
        // 1/(c pi^{m/2} sqrt(s)) = sqrt(s)/(c s) pi^{-m/2}
        Rational c = 1 / (t.coeff * Rational(Integer(static_cast<unsigned long>(t.radical))));
        PiScalar r;
        r.terms_.push_back(Term{-t.pi_half, t.radical, c});
        return r;
    }

    PiScalar operator-() const
    {
        PiScalar r = *this;
        for (auto& t : r.terms_) {
            t.coeff = -t.coeff;
        }
        return r;
    }

    PiScalar& operator+=(const PiScalar& o)
    {
        if (o.terms_.empty()) {
            return *this;
        }
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() || (a != terms_.end() && a->key_less(*b))) {
                out.push_back(std::move(*a++));
            } else if (a == terms_.end() || b->key_less(*a)) {
                out.push_back(*b++);
            } else {
                Term t = std::move(*a++);
                t.coeff += b->coeff;
                ++b;
                if (sgn(t.coeff) != 0) {
                    out.push_back(std::move(t));
                }
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    PiScalar& operator-=(const PiScalar& o) { return *this += -o; }

    PiScalar& operator*=(const Rational& q)
    {
        if (sgn(q) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) {
            t.coeff *= q;
        }
        return *this;
    }

    PiScalar& operator*=(const PiScalar& o)
    {
        *this = *this * o;
        return *this;
    }

    friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
    friend PiScalar operator*(PiScalar a, const Rational& q) { return a *= q; }
    friend PiScalar operator*(const Rational& q, PiScalar a) { return a *= q; }

    friend PiScalar operator*(const PiScalar& a, const PiScalar& b)
    {
        PiScalar r;
        if (a.terms_.empty() || b.terms_.empty()) {
            return r;
        }
        r.terms_.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_) {
            for (const auto& y : b.terms_) {
                const std::uint64_t g = std::gcd(x.radical, y.radical);
                const std::uint64_t s1 = x.radical / g;
                const std::uint64_t s2 = y.radical / g;
                if (s2 != 0 && s1 > std::numeric_limits<std::uint64_t>::max() / s2) {
                    throw std::overflow_error("PiScalar: radical overflow");
                }
                Term t{x.pi_half + y.pi_half, s1 * s2, x.coeff * y.coeff};
                if (g != 1) {
                    t.coeff *= Rational(Integer(static_cast<unsigned long>(g)));
                }
                r.terms_.push_back(std::move(t));
            }
        }
        r.normalize();
        return r;
    }

    friend bool operator==(const PiScalar& a, const PiScalar& b)
    {
        if (a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (!a.terms_[i].same_key(b.terms_[i]) || a.terms_[i].coeff != b.terms_[i].coeff) {
                return false;
            }
        }
        return true;
    }

    /// Symbolic form: terms "a/b·π^e" joined by " + ", with "·√s" appended
    /// when a radical is present. The exponent is written as "π", "π^2" or
    /// "π^{m/2}" for odd m; a unit denominator and π^0 are omitted.
    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.coeff;
            if (!first) {
                os << (sgn(c) < 0 ? " - " : " + ");
                c = abs(c);
            }
            first = false;
            os << c.get_num().get_str();
            if (c.get_den() != 1) {
                os << '/' << c.get_den().get_str();
            }
            if (t.pi_half == 2) {
                os << "·π";
            } else if (t.pi_half % 2 == 0 && t.pi_half != 0) {
                os << "·π^" << t.pi_half / 2;
            } else if (t.pi_half != 0) {
                os << "·π^{" << t.pi_half << "/2}";
            }
            if (t.radical != 1) {
                os << "·√" << t.radical;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const PiScalar& x) { return os << x.to_string(); }

private:
    void normalize()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.key_less(b); });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().same_key(t)) {
                out.back().coeff += t.coeff;
            } else {
                out.push_back(std::move(t));
            }
        }
        std::erase_if(out, [](const Term& t) { return sgn(t.coeff) == 0; });
        terms_ = std::move(out);
    }

    std::vector<Term> terms_;
};

inline PiScalar pow(const PiScalar& x, unsigned e)
{
    PiScalar r(1);
    PiScalar b = x;
    while (e != 0) {
        if (e & 1U) {
            r *= b;
        }
        e >>= 1U;
        if (e != 0) {
            b *= b;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Conversion to floating point.

namespace detail {

class BigFloat
{
public:
    explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    ~BigFloat() { mpfr_clear(v_); }
    BigFloat(const BigFloat&) = delete;
    BigFloat& operator=(const BigFloat&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

inline mpfr_prec_t bits_for_digits(int digits)
{
    return std::max<mpfr_prec_t>(256, static_cast<mpfr_prec_t>(digits * 3.33) + 64);
}

inline void accumulate(BigFloat& acc, const PiScalar& x, mpfr_prec_t bits)
{
    BigFloat pi(bits);
    BigFloat term(bits);
    BigFloat factor(bits);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    for (const auto& t : x.terms()) {
        mpfr_set_q(term.get(), t.coeff.get_mpq_t(), MPFR_RNDN);
        if (t.pi_half != 0) {
            mpfr_sqrt(factor.get(), pi.get(), MPFR_RNDN);
            mpfr_pow_si(factor.get(), factor.get(), t.pi_half, MPFR_RNDN);
            mpfr_mul(term.get(), term.get(), factor.get(), MPFR_RNDN);
        }
        if (t.radical != 1) {
            mpfr_sqrt_ui(factor.get(), static_cast<unsigned long>(t.radical), MPFR_RNDN);
            mpfr_mul(term.get(), term.get(), factor.get(), MPFR_RNDN);
        }
        mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    }
}

} // namespace detail

/// Value of x as a double. The sum is formed at `digits`-decimal working
/// precision (never below 256 bits) and rounded to nearest once at the end.
inline double float_of(const PiScalar& x, int digits = 17)
{
    const mpfr_prec_t bits = detail::bits_for_digits(digits);
    detail::BigFloat acc(bits);
    detail::accumulate(acc, x, bits);
    return mpfr_get_d(acc.get(), MPFR_RNDN);
}

inline double float_of(const Rational& q) { return q.get_d(); }

/// Decimal expansion with `digits` significant digits.
inline std::string decimal_string(const PiScalar& x, int digits)
{
    const mpfr_prec_t bits = detail::bits_for_digits(digits);
    detail::BigFloat acc(bits);
    detail::accumulate(acc, x, bits);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, acc.get());
    return std::string(buf.data());
}

// ---------------------------------------------------------------------------
// Named constants.

/// Gamma(n/2) exactly: a rational for even n, rational * sqrt(pi) for odd n.
inline PiScalar gamma_half(int n)
{
    if (n <= 0) {
        throw std::domain_error("gamma_half: argument must be positive");
    }
    if (n % 2 == 0) {
        Integer f(1);
        for (int i = 2; i < n / 2; ++i) {
            f *= i;
        }
        return PiScalar(Rational(f));
    }
    // Gamma(n/2) = (n/2 - 1)(n/2 - 2)...(1/2) sqrt(pi)
    Rational c(1);
    for (int twice = n - 2; twice >= 1; twice -= 2) {
        c *= rat(twice, 2);
    }
    return PiScalar::pi_power(1) * c;
}

/// Volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1).
inline PiScalar omega(int n)
{
    if (n < 0) {
        throw std::domain_error("omega: n must be nonnegative");
    }
    return PiScalar::pi_power(n) * gamma_half(n + 2).inverse();
}

/// Volume of the unit n-sphere: (n + 1) * omega(n + 1).
inline PiScalar alpha(int n)
{
    if (n < 0) {
        throw std::domain_error("alpha: n must be nonnegative");
    }
    return omega(n + 1) * Rational(n + 1);
}

/// top * (top - 1) * ... * (top - j + 1) / j!
inline Rational generalized_binomial(HalfInteger top, int j)
{
    if (j < 0) {
        return Rational(0);
    }
    Rational num(1);
    Rational t = top.value();
    for (int i = 0; i < j; ++i) {
        num *= t - i;
    }
    Integer f(1);
    for (int i = 2; i <= j; ++i) {
        f *= i;
    }
    Rational r = num / Rational(f);
    r.canonicalize();
    return r;
}

inline Rational factorial(int n)
{
    Integer f(1);
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return Rational(f);
}

struct ConstantTable {
    int max_index = 0;
    std::vector<PiScalar> omega;
    std::vector<PiScalar> alpha;
};

inline ConstantTable make_constant_table(int max_index)
{
    if (max_index < 0) {
        throw std::domain_error("make_constant_table: max_index must be nonnegative");
    }
    ConstantTable t;
    t.max_index = max_index;
    t.omega.reserve(static_cast<std::size_t>(max_index) + 2);
    for (int n = 0; n <= max_index + 1; ++n) {
        t.omega.push_back(gkf::omega(n));
    }
    for (int n = 0; n <= max_index; ++n) {
        t.alpha.push_back(t.omega[static_cast<std::size_t>(n) + 1] * Rational(n + 1));
    }
    t.omega.pop_back();
    return t;
}

} // namespace gkf
