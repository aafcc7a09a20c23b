#include "jetvar/rational.hpp"

#include <climits>
#include <stdexcept>

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(i128 v) { return v > LLONG_MIN && v <= LLONG_MAX; }

mpq_class to_mpq_i128(i128 n) {
    bool neg = n < 0;
    u128 u = neg ? u128(-n) : u128(n);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    mpz_class z = (hi << 64) + lo;
    if (neg) z = -z;
    return mpq_class(z);
}

}  // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    *this = from_i128(n, d);
}

Rational::Rational(const mpq_class& q) { *this = from_mpq(q); }

Rational Rational::from_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(n < 0 ? u128(-n) : u128(n), u128(d));
    if (g > 1) {
        n /= i128(g);
        d /= i128(g);
    }
    if (fits(n) && fits(d)) {
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }
    mpq_class q(to_mpq_i128(n).get_num(), to_mpq_i128(d).get_num());
    q.canonicalize();
    return from_mpq(q);
}

Rational Rational::from_mpq(mpq_class q) {
    q.canonicalize();
    Rational r;
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != LONG_MIN) {
        r.num_ = n.get_si();
        r.den_ = d.get_si();
        return r;
    }
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    auto dot = s.find('.');
    try {
        if (slash != std::string::npos) {
            mpq_class q(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
            if (q.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
            return from_mpq(q);
        }
        if (dot != std::string::npos) {
            std::string whole = s.substr(0, dot);
            std::string frac = s.substr(dot + 1);
            if (whole.empty() || whole == "-" || whole == "+") whole += "0";
            mpz_class den(1);
            for (size_t i = 0; i < frac.size(); ++i) den *= 10;
            mpz_class num(whole + frac, 10);
            return from_mpq(mpq_class(num, den));
        }
        return from_mpq(mpq_class(mpz_class(s, 10)));
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ParseError, "malformed number '" + s + "'");
    }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

bool Rational::to_int(long long& out) const {
    if (big_ || den_ != 1) return false;
    out = num_;
    return true;
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(static_cast<long>(num_), static_cast<unsigned long>(den_));
    q.canonicalize();
    return q;
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    if (big_) return from_mpq(-*big_);
    Rational r = *this;
    r.num_ = -num_;
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    if (big_) return from_mpq(1 / *big_);
    return from_i128(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational::from_mpq(a.to_mpq() + b.to_mpq());
    if (a.den_ == 1 && b.den_ == 1) {
        i128 s = i128(a.num_) + b.num_;
        if (fits(s)) {
            Rational r;
            r.num_ = static_cast<long long>(s);
            return r;
        }
    }
    return Rational::from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational::from_mpq(a.to_mpq() * b.to_mpq());
    if (a.den_ == 1 && b.den_ == 1) {
        i128 p = i128(a.num_) * b.num_;
        if (fits(p)) {
            Rational r;
            r.num_ = static_cast<long long>(p);
            return r;
        }
    }
    return Rational::from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
        if (!a.big_ || !b.big_) return false;  // canonical: small values are never big
        return *a.big_ == *b.big_;
    }
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
        int c = cmp(a.to_mpq(), b.to_mpq());
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    i128 l = i128(a.num_) * b.den_;
    i128 r = i128(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace jetvar
