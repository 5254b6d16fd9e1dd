#pragma once

#include <string>

namespace clusterforge {

/// Exact rational on 64-bit numerator/denominator, always normalized
/// (den > 0, gcd 1). All bound arithmetic in the library goes through
/// this type; there is no floating point in any verdict.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long num, long long den = 1);

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend Rational operator/(Rational a, Rational b);

    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Rational a, Rational b);
    friend bool operator<=(Rational a, Rational b) { return a == b || a < b; }
    friend bool operator>(Rational a, Rational b) { return b < a; }
    friend bool operator>=(Rational a, Rational b) { return b <= a; }

    bool is_integer() const { return den == 1; }

    /// "p/q", or just "p" for integers.
    std::string str() const;
};

}  // namespace clusterforge
