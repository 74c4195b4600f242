#pragma once

#include "selmer2/ints.hpp"

namespace selmer2 {

// Closed interval [lo, hi] with exact rational endpoints.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    explicit RatInterval(const Rat& v) : lo(v), hi(v) {}
    RatInterval(const Rat& l, const Rat& h) : lo(l), hi(h) {
        if (lo > hi) throw internal_inconsistency("interval endpoints out of order");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    // sign when the interval is separated from zero; throws otherwise
    int strict_sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        throw precision_error("interval sign undetermined");
    }
    Rat abs_upper() const {
        Rat a = selmer2::abs(num(lo)) / Rat(den(lo));
        Rat b = selmer2::abs(num(hi)) / Rat(den(hi));
        return a > b ? a : b;
    }

    RatInterval operator-() const { return RatInterval(-hi, -lo); }
    RatInterval operator+(const RatInterval& o) const {
        return RatInterval(lo + o.lo, hi + o.hi);
    }
    RatInterval operator-(const RatInterval& o) const {
        return RatInterval(lo - o.hi, hi - o.lo);
    }
    RatInterval operator*(const RatInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return RatInterval(mn, mx);
    }
    RatInterval operator*(const Rat& s) const {
        return s >= 0 ? RatInterval(lo * s, hi * s) : RatInterval(hi * s, lo * s);
    }
    RatInterval operator+(const Rat& s) const { return RatInterval(lo + s, hi + s); }
};

// Outward-rounded reciprocal; interval must not contain zero.
RatInterval interval_inv(const RatInterval& x);

// Enclosure of sqrt on a nonnegative interval; endpoints carry ~prec_bits of
// precision.
RatInterval interval_sqrt(const RatInterval& x, long prec_bits);

// Enclosure of the real k-th root (k odd allows negative input).
RatInterval interval_kth_root(const RatInterval& x, unsigned k, long prec_bits);

// Round endpoints outward to denominators 2^prec_bits (keeps sizes bounded).
RatInterval round_dyadic(const RatInterval& x, long prec_bits);
Rat dyadic_floor(const Rat& q, long prec_bits);
Rat dyadic_ceil(const Rat& q, long prec_bits);

}  // namespace selmer2
