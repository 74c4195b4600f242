#include "selmer2/interval.hpp"

namespace selmer2 {

RatInterval interval_inv(const RatInterval& x) {
    if (x.contains_zero()) throw precision_error("interval_inv across zero");
    return RatInterval(1 / x.hi, 1 / x.lo);
}

namespace {

// lower rational bound on sqrt(q), q >= 0
Rat sqrt_lower(const Rat& q, long prec_bits) {
    if (q == 0) return Rat(0);
    // sqrt(n/d) = sqrt(n d)/d ; scale by 2^prec
    Int s = Int(1) << prec_bits;
    Int nd = num(q) * den(q);
    Int r = isqrt_floor(nd * s * s);
    return Rat(r) / Rat(den(q) * s);
}

Rat sqrt_upper(const Rat& q, long prec_bits) {
    if (q == 0) return Rat(0);
    Int s = Int(1) << prec_bits;
    Int nd = num(q) * den(q);
    Int r = isqrt_ceil(nd * s * s);
    return Rat(r) / Rat(den(q) * s);
}

// floor(|x|^(1/k)) bounds scaled: lower rational bound on x^(1/k) for x >= 0
Rat kroot_lower(const Rat& q, unsigned k, long prec_bits) {
    if (q == 0) return Rat(0);
    Int s = Int(1) << prec_bits;
    Int sk = 1;
    for (unsigned i = 0; i < k; ++i) sk *= s;
    // x = n/d: x^(1/k) = (n d^{k-1})^(1/k) / d
    Int m = num(q);
    for (unsigned i = 0; i + 1 < k; ++i) m *= den(q);
    Int r = iroot_floor(m * sk, k);
    return Rat(r) / Rat(den(q) * s);
}

Rat kroot_upper(const Rat& q, unsigned k, long prec_bits) {
    if (q == 0) return Rat(0);
    Int s = Int(1) << prec_bits;
    Int sk = 1;
    for (unsigned i = 0; i < k; ++i) sk *= s;
    Int m = num(q);
    for (unsigned i = 0; i + 1 < k; ++i) m *= den(q);
    Int r = iroot_floor(m * sk, k) + 1;
    return Rat(r) / Rat(den(q) * s);
}

}  // namespace

RatInterval interval_sqrt(const RatInterval& x, long prec_bits) {
    if (x.lo < 0) throw precision_error("interval_sqrt of possibly-negative interval");
    return RatInterval(sqrt_lower(x.lo, prec_bits), sqrt_upper(x.hi, prec_bits));
}

RatInterval interval_kth_root(const RatInterval& x, unsigned k, long prec_bits) {
    if (k == 0) throw input_error("interval_kth_root: k = 0");
    if (k % 2 == 1) {
        auto root1 = [&](const Rat& v, bool up) -> Rat {
            if (v >= 0) return up ? kroot_upper(v, k, prec_bits) : kroot_lower(v, k, prec_bits);
            return up ? -kroot_lower(-v, k, prec_bits) : -kroot_upper(-v, k, prec_bits);
        };
        return RatInterval(root1(x.lo, false), root1(x.hi, true));
    }
    if (x.lo < 0) throw precision_error("even root of possibly-negative interval");
    return RatInterval(kroot_lower(x.lo, k, prec_bits), kroot_upper(x.hi, k, prec_bits));
}

Rat dyadic_floor(const Rat& q, long prec_bits) {
    Int s = Int(1) << prec_bits;
    Rat scaled = q * Rat(s);
    return Rat(rat_floor(scaled)) / Rat(s);
}

Rat dyadic_ceil(const Rat& q, long prec_bits) {
    Int s = Int(1) << prec_bits;
    Rat scaled = q * Rat(s);
    return Rat(rat_ceil(scaled)) / Rat(s);
}

RatInterval round_dyadic(const RatInterval& x, long prec_bits) {
    return RatInterval(dyadic_floor(x.lo, prec_bits), dyadic_ceil(x.hi, prec_bits));
}

}  // namespace selmer2
