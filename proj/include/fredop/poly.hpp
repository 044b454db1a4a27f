#pragma once

#include "fredop/ratlin.hpp"

namespace fredop {

// Polynomial over Q, coefficients stored constant-term first, no trailing zeros.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);
    static Poly constant(const Rat& c);
    static Poly x(); // the monomial x

    // "c0,c1,...,cn" with rational entries; at least one coefficient.
    static Poly parse(const std::string& s);
    std::string str() const; // human form, e.g. "x^2 - 1/2 x + 3"

    int degree() const { return int(c_.size()) - 1; } // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    const Rat& coeff(int i) const;
    const std::vector<Rat>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rat& k) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Rat eval(const Rat& v) const;
    Mat eval(const Mat& m) const; // m square

  private:
    std::vector<Rat> c_;
    void trim();
};

// Quotient and remainder with deg(rem) < deg(divisor); divisor nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den);

// Monic greatest common divisor.
Poly poly_gcd(Poly a, Poly b);

// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
struct PolyXgcd {
    Poly g, u, v;
};
PolyXgcd poly_xgcd(const Poly& a, const Poly& b);

// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence.
Poly charpoly(const Mat& a);

} // namespace fredop
