#ifndef NSTRATA_RATIONAL_HPP
#define NSTRATA_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nstrata
{

__extension__ using wide_int = __int128;

// Exact rational number with 64-bit numerator and denominator.
//
// Intermediate products are formed in 128 bits; any result that does not fit
// back into 64 bits raises std::overflow_error rather than wrapping. Values are
// always stored reduced with a positive denominator.
class Rational
{
public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t n) noexcept : num_(n) {}
    Rational(std::int64_t n, std::int64_t d);

    // Accepts "p", "p/q" and surrounding whitespace.
    static Rational parse(std::string_view text);

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }

    constexpr bool is_integer() const noexcept { return den_ == 1; }
    constexpr bool is_zero() const noexcept { return num_ == 0; }
    constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    // Greatest integer <= *this.
    std::int64_t floor() const noexcept;
    // Smallest integer >= *this.
    std::int64_t ceil() const noexcept;
    // *this - floor(*this), always in [0, 1).
    Rational frac() const;
    Rational abs() const;

    std::string str() const;

    Rational operator-() const;
    Rational &operator+=(const Rational &o);
    Rational &operator-=(const Rational &o);
    Rational &operator*=(const Rational &o);
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend constexpr bool operator==(const Rational &, const Rational &) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) noexcept
    {
        if (a.den_ == b.den_) {
            return a.num_ <=> b.num_;
        }
        const wide_int l = static_cast<wide_int>(a.num_) * b.den_;
        const wide_int r = static_cast<wide_int>(b.num_) * a.den_;
        return l <=> r;
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

// An element of Q u {-inf}. The absorbing element behaves as the valuation of
// zero: -inf + x = -inf and -inf < x for every finite x.
class ExtendedRational
{
public:
    constexpr ExtendedRational() noexcept = default;
    constexpr ExtendedRational(Rational v) noexcept : value_(v) {}
    constexpr ExtendedRational(std::int64_t v) noexcept : value_(v) {}

    static constexpr ExtendedRational neg_inf() noexcept
    {
        ExtendedRational r;
        r.neg_inf_ = true;
        return r;
    }

    // Accepts everything Rational::parse does plus "-inf".
    static ExtendedRational parse(std::string_view text);

    constexpr bool is_neg_inf() const noexcept { return neg_inf_; }
    constexpr bool is_finite() const noexcept { return !neg_inf_; }

    // Throws std::domain_error on -inf.
    const Rational &value() const;

    std::string str() const;

    friend ExtendedRational operator+(const ExtendedRational &a, const ExtendedRational &b);

    friend bool operator==(const ExtendedRational &a, const ExtendedRational &b) noexcept
    {
        if (a.neg_inf_ || b.neg_inf_) {
            return a.neg_inf_ == b.neg_inf_;
        }
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const ExtendedRational &a, const ExtendedRational &b) noexcept
    {
        if (a.neg_inf_ || b.neg_inf_) {
            return static_cast<int>(!a.neg_inf_) <=> static_cast<int>(!b.neg_inf_);
        }
        return a.value_ <=> b.value_;
    }

private:
    Rational value_{};
    bool neg_inf_ = false;
};

std::ostream &operator<<(std::ostream &os, const ExtendedRational &r);

std::int64_t gcd64(std::int64_t a, std::int64_t b) noexcept;
// Throws std::overflow_error when the lcm does not fit.
std::int64_t lcm64(std::int64_t a, std::int64_t b);

} // namespace nstrata

#endif
