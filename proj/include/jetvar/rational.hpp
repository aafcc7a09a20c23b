#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jetvar {

// Exact rational number. Values that fit in 64-bit numerator/denominator are
// kept inline; anything larger lives in a shared immutable mpq_class. The
// representation is canonical, so equality is structural.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q);

    // Accepts "12", "-3/4", "0.125".
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;
    // Integer value if the number is an integer fitting in long long.
    bool to_int(long long& out) const;
    double to_double() const;
    mpq_class to_mpq() const;
    std::string str() const;

    Rational operator-() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational inverse() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational from_i128(__int128 n, __int128 d);
    static Rational from_mpq(mpq_class q);

    long long num_ = 0;
    long long den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

}  // namespace jetvar
