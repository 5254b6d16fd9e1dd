#include "clusterforge/rational.hpp"

#include <limits>
#include <stdexcept>

namespace clusterforge {

namespace {

long long checked_cast(__int128 v, const char* what) {
    if (v > static_cast<__int128>(std::numeric_limits<long long>::max()) ||
        v < static_cast<__int128>(std::numeric_limits<long long>::min()))
        throw std::overflow_error(std::string("rational ") + what + " overflows 64 bits");
    return static_cast<long long>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational normalized(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Rational r;
    r.num = checked_cast(num, "numerator");
    r.den = checked_cast(den, "denominator");
    return r;
}

}  // namespace

Rational Rational::of(long long num, long long den) {
    return normalized(num, den);
}

Rational operator+(Rational a, Rational b) {
    return normalized(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                      static_cast<__int128>(a.den) * b.den);
}

Rational operator-(Rational a, Rational b) {
    return normalized(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                      static_cast<__int128>(a.den) * b.den);
}

Rational operator*(Rational a, Rational b) {
    return normalized(static_cast<__int128>(a.num) * b.num,
                      static_cast<__int128>(a.den) * b.den);
}

Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::domain_error("rational division by zero");
    return normalized(static_cast<__int128>(a.num) * b.den,
                      static_cast<__int128>(a.den) * b.num);
}

bool operator<(Rational a, Rational b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace clusterforge
