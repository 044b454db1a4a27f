#include "fredop/poly.hpp"

#include <sstream>

namespace fredop {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rat& c) { return Poly({c}); }

Poly Poly::x() { return Poly({Rat(0), Rat(1)}); }

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::parse(const std::string& s) {
    std::vector<Rat> cs;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw InputError("empty polynomial coefficient");
        cs.push_back(Rat::parse(item.substr(b, e - b + 1)));
    }
    if (cs.empty()) throw InputError("empty polynomial");
    return Poly(std::move(cs));
}

const Rat& Poly::coeff(int i) const {
    static const Rat zero;
    return (i >= 0 && i < int(c_.size())) ? c_[i] : zero;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& c = c_[i];
        if (c.is_zero()) continue;
        Rat a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool unit = (a == Rat(1)) && i > 0;
        if (!unit) os << a.str();
        if (i > 0) {
            if (!unit) os << " ";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) + o.coeff(int(i));
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) - o.coeff(int(i));
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::scaled(const Rat& k) const {
    std::vector<Rat> r(c_);
    for (Rat& v : r) v *= k;
    return Poly(std::move(r));
}

Rat Poly::eval(const Rat& v) const {
    Rat acc;
    for (int i = degree(); i >= 0; --i) acc = acc * v + c_[i];
    return acc;
}

Mat Poly::eval(const Mat& m) const {
    if (m.rows() != m.cols()) throw PreconditionError("Poly::eval: matrix not square");
    Mat acc(m.rows(), m.cols());
    for (int i = degree(); i >= 0; --i) {
        acc = acc * m;
        if (!c_[i].is_zero()) {
            for (int d = 0; d < m.rows(); ++d) acc.at(d, d) += c_[i];
        }
    }
    return acc;
}

std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw PreconditionError("poly_divmod: division by zero polynomial");
    std::vector<Rat> rem(num.coeffs());
    int dn = int(rem.size()) - 1, dd = den.degree();
    if (dn < dd) return {Poly(), num};
    std::vector<Rat> quo(dn - dd + 1);
    Rat lead_inv = den.coeff(dd).inv();
    for (int i = dn; i >= dd; --i) {
        Rat f = rem[i] * lead_inv;
        quo[i - dd] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * den.coeff(j);
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(a.coeff(a.degree()).inv());
}

PolyXgcd poly_xgcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::constant(Rat(1)), u1;
    Poly v0, v1 = Poly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly u2 = u0 - q * u1;
        Poly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    Rat k = r0.coeff(r0.degree()).inv();
    return {r0.scaled(k), u0.scaled(k), v0.scaled(k)};
}

Poly charpoly(const Mat& a) {
    if (a.rows() != a.cols()) throw PreconditionError("charpoly: matrix not square");
    const int n = a.rows();
    // Faddeev-LeVerrier: M_1 = I, c_{n-1} = -tr(A M_1),
    // M_{k+1} = A M_k + c_{n-k} I, c_{n-k-1} = -tr(A M_{k+1}) / (k+1).
    std::vector<Rat> c(n + 1);
    c[n] = Rat(1);
    Mat mk = Mat::identity(n);
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            mk = a * mk;
            for (int d = 0; d < n; ++d) mk.at(d, d) += c[n - k + 1];
        }
        Mat am = a * mk;
        Rat tr;
        for (int d = 0; d < n; ++d) tr += am.at(d, d);
        c[n - k] = -tr / Rat(k);
    }
    return Poly(std::move(c));
}

} // namespace fredop
