#include <nstrata/rational.hpp>

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <nstrata/errors.hpp>

namespace nstrata
{

namespace
{

std::int64_t narrow(wide_int v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < -static_cast<wide_int>(std::numeric_limits<std::int64_t>::max())) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    std::int64_t v = 0;
    const auto *first = s.data();
    const auto *last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError("invalid rational '" + std::string(whole) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) noexcept
{
    return std::gcd(a, b);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    const auto g = std::gcd(a, b);
    const wide_int v = static_cast<wide_int>(a / g) * b;
    return narrow(v < 0 ? -v : v);
}

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (d < 0) {
        if (n == std::numeric_limits<std::int64_t>::min() || d == std::numeric_limits<std::int64_t>::min()) {
            throw std::overflow_error("rational arithmetic overflow");
        }
        n = -n;
        d = -d;
    }
    const auto g = std::gcd(n, d);
    num_ = n / g;
    den_ = d / g;
}

Rational Rational::parse(std::string_view text)
{
    const auto s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(s, text));
    }
    const auto d = parse_int(trim(s.substr(slash + 1)), text);
    if (d == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parse_int(trim(s.substr(0, slash)), text), d);
}

std::int64_t Rational::floor() const noexcept
{
    auto q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) {
        --q;
    }
    return q;
}

std::int64_t Rational::ceil() const noexcept
{
    auto q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) {
        ++q;
    }
    return q;
}

Rational Rational::frac() const
{
    return *this - Rational(floor());
}

Rational Rational::abs() const
{
    return num_ < 0 ? -*this : *this;
}

std::string Rational::str() const
{
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const
{
    Rational r;
    r.num_ = narrow(-static_cast<wide_int>(num_));
    r.den_ = den_;
    return r;
}

Rational &Rational::operator+=(const Rational &o)
{
    if (den_ == 1 && o.den_ == 1) {
        num_ = narrow(static_cast<wide_int>(num_) + o.num_);
        return *this;
    }
    // Knuth's scheme keeps every gcd in 64 bits.
    const auto g1 = std::gcd(den_, o.den_);
    const wide_int t = static_cast<wide_int>(num_) * (o.den_ / g1) + static_cast<wide_int>(o.num_) * (den_ / g1);
    if (t == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
    }
    if (g1 == 1) {
        num_ = narrow(t);
        den_ = narrow(static_cast<wide_int>(den_) * o.den_);
        return *this;
    }
    const auto rem = static_cast<std::int64_t>(t % g1);
    const auto g2 = std::gcd(rem, g1);
    num_ = narrow(t / g2);
    den_ = narrow(static_cast<wide_int>(den_ / g1) * (o.den_ / g2));
    return *this;
}

Rational &Rational::operator-=(const Rational &o)
{
    return *this += -o;
}

Rational &Rational::operator*=(const Rational &o)
{
    if (den_ == 1 && o.den_ == 1) {
        num_ = narrow(static_cast<wide_int>(num_) * o.num_);
        return *this;
    }
    const auto g1 = std::gcd(num_, o.den_);
    const auto g2 = std::gcd(o.num_, den_);
    const auto a = num_ / g1;
    const auto d = o.den_ / g1;
    const auto c = o.num_ / g2;
    const auto b = den_ / g2;
    num_ = narrow(static_cast<wide_int>(a) * c);
    den_ = num_ == 0 ? 1 : narrow(static_cast<wide_int>(b) * d);
    return *this;
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.num_ == 0) {
        throw std::domain_error("rational division by zero");
    }
    Rational inv;
    inv.num_ = o.num_ < 0 ? narrow(-static_cast<wide_int>(o.den_)) : o.den_;
    inv.den_ = o.num_ < 0 ? narrow(-static_cast<wide_int>(o.num_)) : o.num_;
    return *this *= inv;
}

std::ostream &operator<<(std::ostream &os, const Rational &r)
{
    return os << r.str();
}

ExtendedRational ExtendedRational::parse(std::string_view text)
{
    if (trim(text) == "-inf") {
        return neg_inf();
    }
    return ExtendedRational(Rational::parse(text));
}

const Rational &ExtendedRational::value() const
{
    if (neg_inf_) {
        throw std::domain_error("value() of -inf");
    }
    return value_;
}

std::string ExtendedRational::str() const
{
    return neg_inf_ ? std::string("-inf") : value_.str();
}

ExtendedRational operator+(const ExtendedRational &a, const ExtendedRational &b)
{
    if (a.neg_inf_ || b.neg_inf_) {
        return ExtendedRational::neg_inf();
    }
    return ExtendedRational(a.value_ + b.value_);
}

std::ostream &operator<<(std::ostream &os, const ExtendedRational &r)
{
    return os << r.str();
}

} // namespace nstrata
