#pragma once

#include <initializer_list>

#include "selmer2/interval.hpp"

namespace selmer2 {

// Dense integer polynomial, c[i] = coefficient of x^i. Zero polynomial has
// empty coefficient vector. The public API of the artifact only needs degree
// <= 3 but the operations are generic.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    IntPoly(std::initializer_list<long> coeffs_low_to_high) {
        for (long v : coeffs_low_to_high) c.emplace_back(v);
        normalize();
    }
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }  // -1 for zero poly
    const Int& lead() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    Int coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : Int(0); }

    bool operator==(const IntPoly& o) const { return c == o.c; }
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const Int& s, const IntPoly& a);
IntPoly derivative(const IntPoly& a);

Int eval(const IntPoly& f, const Int& x);
Rat eval(const IntPoly& f, const Rat& x);
RatInterval eval(const IntPoly& f, const RatInterval& x);

// f(x + a)
IntPoly translate(const IntPoly& f, const Int& a);
// x^deg f * f(1/x)
IntPoly reverse(const IntPoly& f);
// f(s x)  with rational s = n/d, scaled by d^deg to stay integral
IntPoly compose_scale(const IntPoly& f, const Int& n, const Int& d);
// exact division by a monic polynomial; throws if not exact
IntPoly divide_exact(const IntPoly& f, const IntPoly& g);
// content / primitive part
Int content(const IntPoly& f);
IntPoly primitive_part(const IntPoly& f);
// resultant of two polynomials (subresultant PRS)
Int resultant(const IntPoly& f, const IntPoly& g);
// discriminant of arbitrary-degree f (via resultant with f')
Int poly_disc_general(const IntPoly& f);

// Discriminant of a monic cubic; rejects other inputs.
Int poly_disc(const IntPoly& f);

// string form like "x^3 - 7*x + 3"
std::string to_string(const IntPoly& f, const std::string& var = "x");
// parses "x^3 - 7*x + 3" style strings or comma/space separated coefficient
// triples "[a2,a1,a0]" (high to low, monic cubic implied)
IntPoly parse_cubic(const std::string& text);

// Rational roots of f (exact; uses the rational-root theorem).
std::vector<Rat> rational_roots(const IntPoly& f);

// Isolating interval for one real root: the root is the unique one of the
// target polynomial in [lo, hi]; lo == hi for exact rational roots.
struct RootInterval {
    Rat lo, hi;
    bool exact() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    RatInterval as_interval() const { return RatInterval(lo, hi); }
};

// All real roots of a squarefree polynomial, sorted ascending, pairwise
// disjoint intervals each of width <= width (exact roots are [r, r]).
std::vector<RootInterval> isolate_real_roots(const IntPoly& f, const Rat& width);

// Shrink an isolating interval until its width is <= width. Requires the
// interval to come from isolate_real_roots on the same polynomial.
void refine_root(const IntPoly& f, RootInterval& iv, const Rat& width);

}  // namespace selmer2
