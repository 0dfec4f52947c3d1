#pragma once

#include <string>

#include "fsc/bigint.hpp"
#include "fsc/rat.hpp"

namespace fsc {

inline constexpr int kDefaultPrecision = 64;

/// Fraction bits used internally for a requested precision.
inline int working_scale(int precision) { return precision + 16; }

/// Enclosure [lo, hi] of a real quantity. Endpoints are dyadic rationals
/// mant * 2^-scale, rounded outward at every step, so the mathematically
/// exact value always lies inside. `precision` is the requested working
/// precision in bits; `scale` the internal fraction-bit count.
struct RealInterval {
    BigInt lo;  // mantissa of the lower endpoint
    BigInt hi;  // mantissa of the upper endpoint
    int scale = 0;
    int precision = 0;

    static RealInterval point_from_int(long long v, int precision);
    static RealInterval from_rat(const Rat& x, int precision);  // outward rounding

    Rat lo_rat() const;
    Rat hi_rat() const;
    Rat width() const;  // hi - lo, exact
    double lo_double() const;
    double hi_double() const;
    double mid_double() const;

    bool contains(const Rat& x) const;
    /// True if *this is contained in `outer` (set inclusion, exact).
    bool inside(const RealInterval& outer) const;

    /// Decimal rendering of an endpoint with directed rounding; deterministic.
    std::string lo_decimal(int digits) const;
    std::string hi_decimal(int digits) const;
};

// Interval operations. Binary ops require both operands on the same grid
// (same scale); bound computations within a run use one precision throughout.
RealInterval iv_add(const RealInterval& a, const RealInterval& b);
RealInterval iv_sub(const RealInterval& a, const RealInterval& b);
RealInterval iv_neg(const RealInterval& a);
RealInterval iv_min(const RealInterval& a, const RealInterval& b);
RealInterval iv_max(const RealInterval& a, const RealInterval& b);
/// Multiply by an exact rational (either sign), outward.
RealInterval iv_mul_rat(const RealInterval& a, const Rat& r);
/// Divide by a positive integer, outward.
RealInterval iv_div_int(const RealInterval& a, long long n);
/// Clamp below at an exact rational: [max(lo,c), max(hi,c)].
RealInterval iv_clamp_below(const RealInterval& a, const Rat& c);

/// Compare a.lo with b.lo / a.hi with b.hi on a common grid.
int cmp_lo(const RealInterval& a, const RealInterval& b);
int cmp_hi(const RealInterval& a, const RealInterval& b);

/// Sound enclosure of log2(x) for exact rational x > 0. Exact (width 0)
/// when x is a power of two. Results are cached per (precision, x).
RealInterval log2_rat(const Rat& x, int precision);

/// Enclosure of -x*log2(x); 0*log2(0) = 0 exactly.
RealInterval neg_xlog2x(const Rat& x, int precision);

/// Enclosure of w*log2(w/q) for w >= 0, q > 0 when w > 0.
RealInterval xlog2_ratio(const Rat& w, const Rat& q, int precision);

}  // namespace fsc
